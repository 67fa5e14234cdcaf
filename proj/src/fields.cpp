#include "germflow/fields.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

#include "germflow/errors.hpp"

namespace germflow {

namespace {

constexpr double kSingleLogL = 3.0;
constexpr double kDoubleLogL = 4.0;
constexpr double kTripleLogL = 1.1 * std::numbers::e;
// Default domains are shrunk until every audited denominator is at least this.
constexpr double kDefaultDenominatorFloor = 1.0 / 3.0;

constexpr std::array<std::pair<Family, std::string_view>, 9> kNames{{
    {Family::Linear, "linear"},
    {Family::Xalpha, "xalpha"},
    {Family::Yalpha, "yalpha"},
    {Family::XbarAlpha, "xbaralpha"},
    {Family::XbarbarAlpha, "xbarbaralpha"},
    {Family::XtildeAlpha, "xtildealpha"},
    {Family::SGenerated, "sgen"},
    {Family::PerturbA, "perturba"},
    {Family::PerturbB, "perturbb"},
}};

double default_L(Family f) {
  switch (f) {
    case Family::Linear:
    case Family::Xalpha:
    case Family::Yalpha:
    case Family::PerturbA:
      return kSingleLogL;
    case Family::XbarAlpha:
    case Family::XtildeAlpha:
    case Family::SGenerated:
    case Family::PerturbB:
      return kDoubleLogL;
    case Family::XbarbarAlpha:
      return kTripleLogL;
  }
  return kSingleLogL;
}

// Shortest text that parses back to v.
std::string fmt_shortest(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

// X = lambda x / (1 + g(L)) with g_L = dg/dL gives X/x = lambda/(1+g),
// x/X - 1/lambda = g/lambda and DX = lambda (1/(1+g) + g_L/(1+g)^2).
FieldJet from_g(double lambda, double g, double g_L) {
  const double d = 1.0 + g;
  if (!(d > 0.0)) throw DegeneracyError("field denominator 1 + g(x) is not positive");
  return FieldJet{lambda / d, g / lambda, lambda * (1.0 / d + g_L / (d * d)), d};
}

double positive_w(LogCoord p, const char* family) {
  const double w = p.w();
  if (!(w > 0.0)) {
    throw DomainError(std::string(family) + " needs ln|ln x| > 0 (x < 1/e)");
  }
  return w;
}

}  // namespace

std::string_view family_name(Family f) noexcept {
  for (const auto& [fam, name] : kNames) {
    if (fam == f) return name;
  }
  return "?";
}

std::optional<Family> family_from_name(std::string_view name) noexcept {
  for (const auto& [fam, n] : kNames) {
    if (n == name) return fam;
  }
  if (name == "sgenerated") return Family::SGenerated;
  return std::nullopt;
}

const std::vector<Family>& all_families() noexcept {
  static const std::vector<Family> families = [] {
    std::vector<Family> out;
    for (const auto& [fam, name] : kNames) out.push_back(fam);
    return out;
  }();
  return families;
}

SProfile s_profile(double w) noexcept {
  const double sn = std::sin(w);
  const double cs = std::cos(w);
  const double iw = 1.0 / w;
  const double iw2 = iw * iw;
  const double iw3 = iw2 * iw;
  const double iw4 = iw2 * iw2;
  return SProfile{
      -sn * iw,
      -cs * iw + sn * iw2,
      sn * iw + 2.0 * cs * iw2 - 2.0 * sn * iw3,
      cs * iw - 3.0 * sn * iw2 - 6.0 * cs * iw3 + 6.0 * sn * iw4,
  };
}

// ---------------------------------------------------------------------------
// SGenSpec

SGenSpec::SGenSpec(double alpha, std::optional<double> delta) : alpha_(alpha) {
  require_finite(alpha, "alpha");
  // |s_w| <= 1/w + 1/w^2, and (1/w + 1/w^2)/L decreases in L, so the bound at
  // delta holds on all of (0, delta].
  auto bound_at = [&](double L) {
    const double w = std::log(L);
    return 1.0 - std::abs(alpha) * (1.0 / w + 1.0 / (w * w)) / L;
  };
  if (delta) {
    if (!(*delta > 0.0) || !(*delta < std::exp(-1.0))) {
      throw DomainError("s-generated delta must lie in (0, 1/e)");
    }
    delta_z_ = std::log(*delta);
    min_one_plus_u_ = bound_at(-delta_z_);
    if (!(min_one_plus_u_ > 0.0)) {
      throw DegeneracyError("1 + u is not bounded away from 0 on (0, delta]; shrink delta");
    }
  } else {
    double L = kDoubleLogL;
    while (bound_at(L) < kDefaultDenominatorFloor) L *= 1.25;
    delta_z_ = -L;
    min_one_plus_u_ = bound_at(L);
  }
}

double SGenSpec::s_at(double w) const noexcept { return alpha_ * s_profile(w).s; }

double SGenSpec::u_at(double w, double inv_L) const noexcept {
  return alpha_ * s_profile(w).s_w * inv_L;
}

double SGenSpec::x_du_at(double w, double inv_L) const noexcept {
  const SProfile sp = s_profile(w);
  return alpha_ * (sp.s_w - sp.s_ww) * inv_L * inv_L;
}

double SGenSpec::x_d_xdu_at(double w, double inv_L) const noexcept {
  const SProfile sp = s_profile(w);
  return -alpha_ * (3.0 * sp.s_ww - sp.s_www - 2.0 * sp.s_w) * inv_L * inv_L * inv_L;
}

double SGenSpec::du_dL_at(double w, double inv_L) const noexcept {
  const SProfile sp = s_profile(w);
  return alpha_ * (sp.s_ww - sp.s_w) * inv_L * inv_L;
}

void SGenSpec::check_point(LogCoord p) const {
  if (p.z() > delta_z_ + 1e-14 * std::abs(delta_z_)) {
    throw DomainError("point lies above the s-generated domain cap");
  }
  positive_w(p, "sgen");
}

double eval_s(const SGenSpec& sg, LogCoord p) {
  sg.check_point(p);
  return sg.s_at(p.w());
}

double eval_u(const SGenSpec& sg, LogCoord p) {
  sg.check_point(p);
  return sg.u_at(p.w(), p.inv_L());
}

double eval_Ds(const SGenSpec& sg, LogCoord p) {
  // Ds = -u/x.
  return -eval_u(sg, p) * std::exp(-p.z());
}

double eval_Du(const SGenSpec& sg, LogCoord p) {
  sg.check_point(p);
  return sg.x_du_at(p.w(), p.inv_L()) * std::exp(-p.z());
}

// ---------------------------------------------------------------------------
// FieldSpec

FieldSpec FieldSpec::linear(double lambda, std::optional<double> delta) {
  return make(Family::Linear, 0.0, lambda, delta);
}

FieldSpec FieldSpec::make(Family family, double alpha, double lambda, std::optional<double> delta) {
  if (family == Family::PerturbA || family == Family::PerturbB) {
    throw DomainError("perturbation families need a base field");
  }
  if (family == Family::SGenerated) {
    return field_from_s(SGenSpec(alpha, delta));
  }
  require_finite(alpha, "alpha");
  require_finite(lambda, "lambda");
  if (!(lambda < 0.0)) throw DomainError("multiplier lambda must be negative");
  FieldSpec spec;
  spec.family_ = family;
  spec.alpha_ = family == Family::Linear ? 0.0 : alpha;
  spec.lambda_ = lambda;
  spec.settle_domain(delta, default_L(family));
  return spec;
}

FieldSpec FieldSpec::perturb_a(const FieldSpec& base, double alpha, std::optional<double> delta) {
  require_finite(alpha, "alpha");
  FieldSpec spec;
  spec.family_ = Family::PerturbA;
  spec.alpha_ = alpha;
  spec.lambda_ = base.lambda();
  spec.base_ = std::make_shared<const FieldSpec>(base);
  if (delta && *delta > base.delta()) {
    throw DomainError("perturbation delta exceeds the base field's domain");
  }
  spec.settle_domain(delta, std::max(default_L(Family::PerturbA), base.delta_coord().L()));
  return spec;
}

FieldSpec FieldSpec::perturb_b(const FieldSpec& base, double alpha, std::optional<double> delta) {
  require_finite(alpha, "alpha");
  FieldSpec spec;
  spec.family_ = Family::PerturbB;
  spec.alpha_ = alpha;
  spec.lambda_ = base.lambda();
  spec.base_ = std::make_shared<const FieldSpec>(base);
  if (delta && *delta > base.delta()) {
    throw DomainError("perturbation delta exceeds the base field's domain");
  }
  spec.settle_domain(delta, std::max(default_L(Family::PerturbB), base.delta_coord().L()));
  return spec;
}

FieldSpec field_from_s(const SGenSpec& sgen) {
  FieldSpec spec;
  spec.family_ = Family::SGenerated;
  spec.alpha_ = sgen.alpha();
  spec.lambda_ = -1.0;
  spec.sgen_ = sgen;
  spec.delta_z_ = sgen.delta_coord().z();
  double lowest = 1.0;
  for (LogCoord p : audit_grid(spec)) {
    lowest = std::min(lowest, 1.0 + sgen.u_at(p.w(), p.inv_L()));
  }
  if (!(lowest > 0.0)) throw DegeneracyError("sampled min(1 + u) is not positive");
  return spec;
}

void FieldSpec::settle_domain(std::optional<double> delta, double L0) {
  auto min_denominator = [this] {
    double lowest = std::numeric_limits<double>::infinity();
    for (LogCoord p : audit_grid(*this)) lowest = std::min(lowest, evaluate(*this, p).denominator);
    return lowest;
  };
  auto logs_defined = [this] {
    const LogCoord d = delta_coord();
    switch (family_) {
      case Family::XbarAlpha:
        return d.w() > 0.0;
      case Family::XbarbarAlpha:
        return d.w() > 1.0;
      default:
        return true;
    }
  };

  if (delta) {
    if (!(*delta > 0.0) || !(*delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
    delta_z_ = std::log(*delta);
    if (!logs_defined()) {
      throw DomainError(std::string(family_name(family_)) +
                        ": iterated logarithms are not positive at delta");
    }
    // evaluate() raises DegeneracyError on the first bad audit point.
    (void)min_denominator();
    return;
  }

  double L = L0;
  for (int iter = 0; iter < 400; ++iter, L *= 1.25) {
    delta_z_ = -L;
    if (!logs_defined()) continue;
    try {
      if (min_denominator() >= kDefaultDenominatorFloor) return;
    } catch (const DegeneracyError&) {
    }
  }
  throw DegeneracyError("no default domain keeps the field denominators positive");
}

bool FieldSpec::contains(LogCoord p) const noexcept {
  return p.z() <= delta_z_ + 1e-14 * std::abs(delta_z_);
}

std::string FieldSpec::to_string() const {
  std::string out = "family:";
  out += family_name(family_);
  if (family_ != Family::Linear) out += ",alpha=" + fmt_shortest(alpha_);
  if (family_ != Family::SGenerated && !base_) out += ",lambda=" + fmt_shortest(lambda_);
  out += ",delta=" + fmt_shortest(delta());
  if (base_) out += ",base=(" + base_->to_string() + ")";
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

FieldJet evaluate(const FieldSpec& spec, LogCoord p) {
  if (!spec.contains(p)) throw DomainError("point lies above the field's domain cap delta");
  const double lambda = spec.lambda();
  const double a = spec.alpha();
  const double L = p.L();
  const double iL = p.inv_L();

  switch (spec.family()) {
    case Family::Linear:
      return FieldJet{lambda, 0.0, lambda, 1.0};

    case Family::Xalpha:
      return from_g(lambda, -a * iL, a * iL * iL);

    case Family::Yalpha: {
      // 1/(1+g) = 1 + alpha/L.
      const double m = L + a;
      if (!(m > 0.0)) throw DegeneracyError("yalpha: 1 + alpha/ln|x| is not positive");
      return from_g(lambda, -a / m, a / (m * m));
    }

    case Family::XbarAlpha: {
      const double w = positive_w(p, "xbaralpha");
      return from_g(lambda, -a * iL / w, a * (w + 1.0) * iL * iL / (w * w));
    }

    case Family::XbarbarAlpha: {
      const double w = positive_w(p, "xbarbaralpha");
      const double v = std::log(w);
      if (!(v > 0.0)) throw DomainError("xbarbaralpha needs ln ln|ln x| > 0");
      const double wv = w * v;
      return from_g(lambda, -a * iL / wv, a * (wv + v + 1.0) * iL * iL / (wv * wv));
    }

    case Family::XtildeAlpha: {
      const double w = p.w();
      const double c = std::cos(w);
      const double s = std::sin(w);
      return from_g(lambda, -a * c * iL, a * (s + c) * iL * iL);
    }

    case Family::SGenerated: {
      const SGenSpec& sg = *spec.sgen();
      const double w = positive_w(p, "sgen");
      return from_g(-1.0, sg.u_at(w, iL), sg.du_dL_at(w, iL));
    }

    case Family::PerturbA: {
      const FieldJet b = evaluate(*spec.base(), p);
      const double r = b.ratio;
      const double d = 1.0 - a * r * iL;
      if (!(d > 0.0)) throw DegeneracyError("perturba: 1 + alpha X/(x ln x) is not positive");
      const double num = b.dx * d + a * r * b.dx * iL + a * r * r * (iL * iL - iL);
      return FieldJet{r / d, b.deviation - a * iL, num / (d * d), d};
    }

    case Family::PerturbB: {
      const FieldJet b = evaluate(*spec.base(), p);
      const double w = p.w();
      const double c = std::cos(w);
      const double s = std::sin(w);
      const double r = b.ratio;
      const double d = 1.0 - a * r * c * iL;
      if (!(d > 0.0)) {
        throw DegeneracyError("perturbb: 1 + alpha X cos(w)/(x ln x) is not positive");
      }
      const double num =
          b.dx * d + a * r * b.dx * c * iL + a * r * r * (s * iL * iL + c * (iL * iL - iL));
      return FieldJet{r / d, b.deviation - a * c * iL, num / (d * d), d};
    }
  }
  throw DomainError("unknown family");
}

double eval_X(const FieldSpec& spec, LogCoord p) { return p.x() * evaluate(spec, p).ratio; }
double eval_ratio(const FieldSpec& spec, LogCoord p) { return evaluate(spec, p).ratio; }
double eval_DX(const FieldSpec& spec, LogCoord p) { return evaluate(spec, p).dx; }
double eval_deviation(const FieldSpec& spec, LogCoord p) { return evaluate(spec, p).deviation; }

MultiplierEstimate multiplier_estimate(const FieldSpec& spec, double cauchy_tol) {
  constexpr int kSamples = 30;
  constexpr int kTail = 5;
  const double w0 = std::max(spec.delta_coord().w(), 2.0);
  std::array<double, kSamples> r{};
  for (int k = 0; k < kSamples; ++k) {
    r[k] = eval_ratio(spec, LogCoord::from_w(w0 + k));
  }
  const double value = r[kSamples - 1];
  double err = 0.0;
  for (int k = kSamples - kTail; k < kSamples - 1; ++k) err = std::max(err, std::abs(r[k] - value));
  if (!(err <= cauchy_tol)) {
    throw NonConvergence("multiplier estimate: X(x)/x is not Cauchy on the w-grid");
  }
  return MultiplierEstimate{value, err};
}

std::vector<LogCoord> audit_grid(const FieldSpec& spec, std::size_t n, double span) {
  std::vector<LogCoord> out;
  out.reserve(n);
  const LogCoord d = spec.delta_coord();
  const double w0 = d.w();
  out.push_back(d);
  for (std::size_t i = 1; i < n; ++i) {
    out.push_back(LogCoord::from_w(w0 + span * static_cast<double>(i) / static_cast<double>(n - 1)));
  }
  return out;
}

}  // namespace germflow
