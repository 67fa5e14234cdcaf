#include "germflow/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "germflow/errors.hpp"

namespace germflow {

namespace {

// Kronrod abscissae, Kronrod weights and the embedded 7-point Gauss weights.
constexpr std::array<double, 8> kXgk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxDepth = 60;

struct Rule {
  double value;
  double error;
};

class Adaptive {
 public:
  Adaptive(const std::function<double(double)>& g, const QuadOptions& opts) : g_(g), opts_(opts) {}

  QuadResult run(double a, double b) {
    QuadResult out;
    if (!(a < b)) return out;
    const auto panels =
        static_cast<std::size_t>(std::max(1.0, std::ceil((b - a) / opts_.max_panel)));
    const double h = (b - a) / static_cast<double>(panels);
    for (std::size_t i = 0; i < panels; ++i) {
      const double lo = a + h * static_cast<double>(i);
      const double hi = i + 1 == panels ? b : a + h * static_cast<double>(i + 1);
      const Rule r = refine(lo, hi, qk15(lo, hi), 0);
      out.value += r.value;
      out.abs_error_estimate += r.error;
    }
    out.evaluations = evals_;
    return out;
  }

 private:
  double call(double t) {
    if (++evals_ > opts_.max_evals) {
      throw BudgetExceeded("quadrature exceeded " + std::to_string(opts_.max_evals) +
                           " evaluations");
    }
    const double v = g_(t);
    if (!std::isfinite(v)) throw NonFinite("integrand is not finite at t = " + std::to_string(t));
    return v;
  }

  Rule qk15(double a, double b) {
    const double centr = 0.5 * (a + b);
    const double hlgth = 0.5 * (b - a);
    const double dhlgth = std::abs(hlgth);
    std::array<double, 7> fv1{}, fv2{};

    const double fc = call(centr);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(resk);
    for (int j = 0; j < 3; ++j) {
      const int jtw = 2 * j + 1;
      const double absc = hlgth * kXgk[jtw];
      const double f1 = call(centr - absc);
      const double f2 = call(centr + absc);
      fv1[jtw] = f1;
      fv2[jtw] = f2;
      resg += kWg[j] * (f1 + f2);
      resk += kWgk[jtw] * (f1 + f2);
      resabs += kWgk[jtw] * (std::abs(f1) + std::abs(f2));
    }
    for (int j = 0; j < 4; ++j) {
      const int jtwm1 = 2 * j;
      const double absc = hlgth * kXgk[jtwm1];
      const double f1 = call(centr - absc);
      const double f2 = call(centr + absc);
      fv1[jtwm1] = f1;
      fv2[jtwm1] = f2;
      resk += kWgk[jtwm1] * (f1 + f2);
      resabs += kWgk[jtwm1] * (std::abs(f1) + std::abs(f2));
    }
    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j) {
      resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
    }
    const double result = resk * hlgth;
    resabs *= dhlgth;
    resasc *= dhlgth;
    double abserr = std::abs((resk - resg) * hlgth);
    if (resasc != 0.0 && abserr != 0.0) {
      abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
    }
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
      abserr = std::max(kEps * 50.0 * resabs, abserr);
    }
    return Rule{result, abserr};
  }

  Rule refine(double a, double b, Rule whole, int depth) {
    const double width = b - a;
    // The roundoff floor already sits inside qk15's estimate; accept anything
    // that meets it once the panel is too narrow to split usefully.
    if (whole.error <= opts_.tol * width || depth >= kMaxDepth ||
        width <= 64.0 * kEps * std::max(std::abs(a), std::abs(b))) {
      return whole;
    }
    const double mid = 0.5 * (a + b);
    const Rule left = refine(a, mid, qk15(a, mid), depth + 1);
    const Rule right = refine(mid, b, qk15(mid, b), depth + 1);
    return Rule{left.value + right.value, left.error + right.error};
  }

  const std::function<double(double)>& g_;
  const QuadOptions& opts_;
  std::size_t evals_ = 0;
};

// z-density of f at p.
double z_density(const Integrand& f, LogCoord p) {
  const double v = f.eval(p);
  return f.density == Density::Z ? v : v * p.x();
}

}  // namespace

QuadResult integrate_1d(const std::function<double(double)>& g, double a, double b,
                        const QuadOptions& opts) {
  if (!(opts.tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
  if (!(a <= b)) throw DomainError("integrate_1d needs a <= b");
  Adaptive ad(g, opts);
  return ad.run(a, b);
}

QuadResult integrate(const Integrand& f, LogCoord a, LogCoord b, const QuadOptions& opts) {
  if (!(opts.tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
  if (a.z() > b.z()) throw DomainError("integrate needs a <= b");
  QuadResult out;
  constexpr double kSplitZ = -1.0;

  // Piece below x = 1/e, in w. z runs from a.z up to min(b.z, -1); with
  // dz = -L dw the integral becomes the integral of f L dw over [w_hi, w_lo].
  if (a.z() < kSplitZ) {
    const double z_hi = std::min(b.z(), kSplitZ);
    const double w_lo = a.w();
    const double w_hi = std::log(-z_hi);
    const LogCoord top = LogCoord::from_z(z_hi);
    auto g = [&](double w) {
      // Endpoints map back exactly so delta-capped domains are respected.
      LogCoord p = w >= w_lo ? a : (w <= w_hi ? top : LogCoord::from_w(w));
      return z_density(f, p) * p.L();
    };
    const QuadResult r = integrate_1d(g, w_hi, w_lo, opts);
    out.value += r.value;
    out.abs_error_estimate += r.abs_error_estimate;
    out.evaluations += r.evaluations;
  }
  // Piece above x = 1/e, in z.
  if (b.z() > kSplitZ) {
    const double z_lo = std::max(a.z(), kSplitZ);
    auto g = [&](double z) {
      LogCoord p = z >= b.z() ? b : LogCoord::from_z(z);
      return z_density(f, p);
    };
    const QuadResult r = integrate_1d(g, z_lo, b.z(), opts);
    out.value += r.value;
    out.abs_error_estimate += r.abs_error_estimate;
    out.evaluations += r.evaluations;
  }
  return out;
}

std::vector<QuadResult> integrate_panels(const Integrand& f,
                                         std::span<const std::pair<LogCoord, LogCoord>> panels,
                                         const QuadOptions& opts, ExecPolicy policy) {
  std::vector<QuadResult> out(panels.size());
  for_each_index(policy, panels.size(), [&](std::size_t i) {
    out[i] = integrate(f, panels[i].first, panels[i].second, opts);
  });
  return out;
}

TailSamples tail_sequence(const Integrand& f, LogCoord delta, std::span<const double> w_grid,
                          const QuadOptions& opts, ExecPolicy policy) {
  const double w_delta = delta.w();
  if (w_grid.empty()) return {};
  if (w_grid.front() < w_delta) throw DomainError("tail grid starts above delta");
  for (std::size_t i = 1; i < w_grid.size(); ++i) {
    if (!(w_grid[i] > w_grid[i - 1])) throw DomainError("tail grid must be strictly increasing");
  }
  std::vector<std::pair<LogCoord, LogCoord>> panels;
  panels.reserve(w_grid.size());
  LogCoord upper = delta;
  for (double w : w_grid) {
    const LogCoord lower = w == w_delta ? delta : LogCoord::from_w(w);
    panels.emplace_back(lower, upper);
    upper = lower;
  }
  const auto parts = integrate_panels(f, panels, opts, policy);

  TailSamples out;
  out.w_grid.assign(w_grid.begin(), w_grid.end());
  out.values.resize(w_grid.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    acc += parts[i].value;
    out.values[i] = acc;
    out.evaluations += parts[i].evaluations;
  }
  return out;
}

TailSamples tail_sequence(const Integrand& f, LogCoord delta, double w_max, std::size_t n,
                          const QuadOptions& opts, ExecPolicy policy) {
  const double w0 = delta.w();
  if (n < 8) throw InsufficientSamples("tail_sequence needs n >= 8");
  if (!(w_max > w0)) throw DomainError("tail_sequence needs w_max > w(delta)");
  std::vector<double> grid(n);
  for (std::size_t j = 0; j < n; ++j) {
    grid[j] = j + 1 == n ? w_max
                         : w0 + (w_max - w0) * static_cast<double>(j) / static_cast<double>(n - 1);
  }
  return tail_sequence(f, delta, grid, opts, policy);
}

}  // namespace germflow
