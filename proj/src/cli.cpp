#include "germflow/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "germflow/acceptance.hpp"
#include "germflow/conjugacy.hpp"
#include "germflow/errors.hpp"
#include "germflow/field_parser.hpp"
#include "germflow/regularity.hpp"
#include "germflow/report.hpp"
#include "germflow/timemap.hpp"
#include "germflow/variation.hpp"

namespace germflow::cli {

namespace {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::string render(const std::string& format) const {
    if (format == "json") {
      Json arr = Json::array();
      for (const auto& row : rows) {
        Json obj;
        for (std::size_t i = 0; i < header.size(); ++i) obj[header[i]] = row[i];
        arr.push_back(obj);
      }
      return dump(arr);
    }
    std::string out = csv_line(header);
    for (const auto& row : rows) {
      std::vector<std::string> cells;
      for (double v : row) cells.push_back(fmt17(v));
      out += csv_line(cells);
    }
    return out;
  }
};

struct Result {
  std::string text;
  int code = kOk;
};

LogCoord point_from(const std::optional<std::string>& x, const std::optional<std::string>& z,
                    const std::optional<std::string>& w) {
  const int given = (x ? 1 : 0) + (z ? 1 : 0) + (w ? 1 : 0);
  if (given != 1) throw ParseError("give exactly one of --x, --z, --w");
  if (x) return parse_point(*x);
  if (z) return LogCoord::from_z(parse_number(*z));
  return LogCoord::from_w(parse_number(*w));
}

std::vector<double> parse_grid(const std::string& text) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string::npos) throw ParseError("grid must look like a_min:a_max:n");
  const double lo = parse_number(text.substr(0, c1));
  const double hi = parse_number(text.substr(c1 + 1, c2 - c1 - 1));
  const double n = parse_number(text.substr(c2 + 1));
  if (n != std::floor(n) || n < 2 || n > 1e6) throw ParseError("grid count must be an integer >= 2");
  return geometric_grid(lo, hi, static_cast<std::size_t>(n));
}

int code_for(const std::exception_ptr& ep, std::ostream& err) {
  try {
    std::rethrow_exception(ep);
  } catch (const NonConvergence& e) {
    err << "germflow: numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const BudgetExceeded& e) {
    err << "germflow: numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const NonFinite& e) {
    err << "germflow: numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const NotHyperbolic& e) {
    err << "germflow: numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const Error& e) {
    err << "germflow: " << e.what() << "\n";
    return kInput;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Flows, conjugacies and regularity classes of contracting vector fields"};
  app.require_subcommand(1);

  std::string out_path;
  std::string format = "csv";
  double tol = QuadOptions{}.tol;
  std::size_t max_evals = QuadOptions{}.max_evals;
  bool strict = false;
  app.add_option("--out", out_path, "write the report to this file");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--tol", tol, "quadrature tolerance per unit of the integration variable")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-evals", max_evals, "integrand evaluations allowed per integral")
      ->check(CLI::PositiveNumber);
  app.add_flag("--strict", strict, "exit 4 when a classification is inconclusive");

  std::function<Result()> action;
  auto quad = [&] {
    QuadOptions q;
    q.tol = tol;
    q.max_evals = max_evals;
    return q;
  };

  // families list
  auto* families = app.add_subcommand("families", "field families");
  families->require_subcommand(1);
  families->add_subcommand("list", "list the families with their default specs")->callback([&] {
    action = [&] {
      std::string text = csv_line(std::vector<std::string>{"family", "default_spec"});
      for (Family f : all_families()) {
        const FieldSpec spec = f == Family::PerturbA   ? FieldSpec::perturb_a(FieldSpec::linear(), 1.0)
                               : f == Family::PerturbB ? FieldSpec::perturb_b(FieldSpec::linear(), 1.0)
                                                       : FieldSpec::make(f, 1.0);
        text += std::string(family_name(f)) + "," + '"' + spec.to_string() + '"' + "\n";
      }
      return Result{text};
    };
  });

  // flow eval
  std::string field;
  double t = 0.0;
  std::optional<std::string> px, pz, pw;
  auto* flow_cmd = app.add_subcommand("flow", "flows of a field");
  flow_cmd->require_subcommand(1);
  auto* flow_eval = flow_cmd->add_subcommand("eval", "f^t(x) and Df^t(x)");
  flow_eval->add_option("--field", field, "field spec")->required();
  flow_eval->add_option("--t", t, "time")->required();
  flow_eval->add_option("--x", px, "point x (or x=, z=, w=)");
  flow_eval->add_option("--z", pz, "point as z = ln x");
  flow_eval->add_option("--w", pw, "point as w = ln|ln x|");
  flow_eval->callback([&] {
    action = [&] {
      const FieldSpec spec = parse_field_spec(field);
      const LogCoord p = point_from(px, pz, pw);
      const TimeMapCache cache(spec);
      const LogCoord q = flow(cache, t, p);
      const double d = flow_derivative(cache, t, p);
      Table tab{{"x", "z", "ft", "ft_z", "dft"}, {{p.x(), p.z(), q.x(), q.z(), d}}};
      return Result{tab.render(format)};
    };
  });

  // conj build
  std::string from, to;
  std::optional<std::string> anchor;
  std::optional<double> shift;
  std::vector<std::string> at;
  auto* conj = app.add_subcommand("conj", "conjugacies between flows");
  conj->require_subcommand(1);
  auto* conj_build = conj->add_subcommand("build", "evaluate h, Dh and s at points");
  conj_build->add_option("--from", from, "source field spec")->required();
  conj_build->add_option("--to", to, "target field spec")->required();
  auto* anchor_opt = conj_build->add_option("--anchor", anchor, "fixed point a of h");
  conj_build->add_option("--shift", shift, "use h = tau_Y^-1(tau_X + t) instead")->excludes(anchor_opt);
  conj_build->add_option("--at", at, "points, comma separated")->required()->delimiter(',');
  conj_build->callback([&] {
    action = [&] {
      const FieldSpec X = parse_field_spec(from);
      const FieldSpec Y = parse_field_spec(to);
      std::vector<LogCoord> pts;
      for (const auto& s : at) pts.push_back(parse_point(s));
      std::optional<LogCoord> a;
      if (anchor) a = parse_point(*anchor);
      ConjugacyMap map = shift ? ConjugacyMap::shifted(X, Y, *shift) : ConjugacyMap::anchored(X, Y, a);
      map.quad.tol = std::min(map.quad.tol, tol);
      map.quad.max_evals = max_evals;
      Table tab{{"x", "z", "h", "h_z", "dh", "s"}, {}};
      for (LogCoord p : pts) {
        const LogCoord h = map.apply(p);
        tab.rows.push_back({p.x(), p.z(), h.x(), h.z(), map.derivative(p), map.time_shift(p)});
      }
      return Result{tab.render(format)};
    };
  });

  // classify
  std::string cx, cy;
  std::optional<double> wmax;
  std::size_t samples = 64;
  double conv_tol = TailParams{}.conv_tol;
  auto* classify = app.add_subcommand("classify", "bi-Lipschitz / C1 verdict for a pair");
  classify->add_option("--x", cx, "first field spec")->required();
  classify->add_option("--y", cy, "second field spec")->required();
  classify->add_option("--wmax", wmax, "upper end of the w-grid");
  classify->add_option("--samples", samples, "grid size")->check(CLI::Range(16, 100000));
  classify->add_option("--conv-tol", conv_tol, "tail convergence tolerance")->check(CLI::PositiveNumber);
  classify->callback([&] {
    action = [&] {
      ClassifyParams params;
      params.w_max = wmax;
      params.samples = samples;
      params.tail.conv_tol = conv_tol;
      params.quad = quad();
      const FieldSpec X = parse_field_spec(cx);
      const FieldSpec Y = parse_field_spec(cy);
      const RegularityVerdict v = classify_pair(X, Y, params);
      Json j;
      j["x"] = X.to_string();
      j["y"] = Y.to_string();
      const Json body = to_json(v);
      for (const auto& [k, val] : body.items()) j[k] = val;
      const bool unsure = v.bilipschitz == Tri::Inconclusive || v.c1 == Tri::Inconclusive;
      return Result{dump(j), strict && unsure ? kInconclusive : kOk};
    };
  });

  // check-ac
  double ac_alpha = 1.0;
  std::optional<double> ac_delta;
  auto* check_ac = app.add_subcommand("check-ac", "seven conditions for an s-generated field");
  check_ac->add_option("--alpha", ac_alpha, "scale of s")->required();
  check_ac->add_option("--delta", ac_delta, "domain cap in x");
  check_ac->callback([&] {
    action = [&] {
      AcParams params;
      params.quad = quad();
      return Result{dump(to_json(check_ac_conditions(SGenSpec(ac_alpha, ac_delta), params)))};
    };
  });

  // flowvar
  std::string fv_field;
  double fv_t = 1.0;
  std::optional<std::string> fv_a;
  std::optional<double> fv_wmax;
  std::size_t fv_samples = 8;
  auto* flowvar = app.add_subcommand("flowvar", "variation of log Df^t against 2|t| var(DX)");
  flowvar->add_option("--field", fv_field, "field spec")->required();
  flowvar->add_option("--t", fv_t, "time")->required();
  flowvar->add_option("--a", fv_a, "upper end a (default delta)");
  flowvar->add_option("--wmax", fv_wmax, "w of the smallest eps (default w(a) + 3)");
  flowvar->add_option("--samples", fv_samples, "number of eps values")->check(CLI::Range(1, 10000));
  flowvar->callback([&] {
    action = [&] {
      const FieldSpec spec = parse_field_spec(fv_field);
      const LogCoord a = fv_a ? parse_point(*fv_a) : spec.delta_coord();
      const double w_hi = fv_wmax.value_or(a.w() + 3.0);
      if (!(w_hi > a.w())) throw DomainError("flowvar: --wmax must exceed w(a)");
      if (std::exp(w_hi) > 700.0) throw DomainError("flowvar: eps would underflow; lower --wmax");
      const TimeMapCache cache(spec);
      Table tab{{"eps", "lhs", "rhs"}, {}};
      for (std::size_t j = 1; j <= fv_samples; ++j) {
        const double w = a.w() + (w_hi - a.w()) * static_cast<double>(j) / static_cast<double>(fv_samples);
        const LogCoord eps = LogCoord::from_w(w);
        const FlowAcBound b = flow_ac_bound_check(cache, fv_t, a, eps, quad());
        tab.rows.push_back({eps.x(), b.lhs, b.rhs});
      }
      return Result{tab.render(format)};
    };
  });

  // asymptote
  double as_alpha = 1.0, as_beta = 0.0, tail_fraction = 0.5;
  std::string grid_text = "100:10000:24";
  bool shat_only = false;
  auto* asym = app.add_subcommand("asymptote", "variation curve of the conjugacy H and its slope in ln A");
  asym->add_option("--alpha", as_alpha, "alpha");
  asym->add_option("--beta", as_beta, "beta");
  asym->add_option("--grid", grid_text, "geometric A grid a_min:a_max:n");
  asym->add_option("--tail-fraction", tail_fraction, "fraction of points used in the fit")
      ->check(CLI::Range(0.0, 1.0));
  asym->add_flag("--shat", shat_only, "variation of s(w) = -sin(w)/w instead of the conjugacy");
  asym->callback([&] {
    action = [&] {
      const std::vector<double> grid = parse_grid(grid_text);
      const VariationCurve curve = shat_only ? shat_variation_curve(grid)
                                             : conjugacy_variation_curve(as_alpha, as_beta, grid);
      const LinearFit fit =
          asymptote_fit(curve, [](double A) { return std::log(A); }, tail_fraction);
      Json fj = to_json(fit);
      fj["gauge"] = "ln A";
      if (format == "json") {
        Json j;
        j["curve"] = Json::array();
        for (std::size_t i = 0; i < curve.values.size(); ++i) {
          j["curve"].push_back(Json{{"A", curve.thresholds[i]}, {"V", curve.values[i]}});
        }
        j["fit"] = fj;
        return Result{dump(j)};
      }
      Table tab{{"A", "V"}, {}};
      for (std::size_t i = 0; i < curve.values.size(); ++i) {
        tab.rows.push_back({curve.thresholds[i], curve.values[i]});
      }
      return Result{tab.render("csv") + dump(fj)};
    };
  });

  // selftest
  app.add_subcommand("selftest", "run acceptance criteria 1-9")->callback([&] {
    action = [&] {
      const auto results = run_acceptance();
      bool all = true;
      for (const auto& r : results) all = all && r.pass;
      return Result{format_report(results), all ? kOk : kFailed};
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "germflow: " << e.what() << "\n";
    return kInput;
  }
  if (!action) {
    err << "germflow: nothing to do\n";
    return kInput;
  }

  Result res;
  try {
    res = action();
  } catch (const Error&) {
    return code_for(std::current_exception(), err);
  }
  if (out_path.empty()) {
    out << res.text;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      err << "germflow: cannot open " << out_path << "\n";
      return kInput;
    }
    f << res.text;
  }
  return res.code;
}

}  // namespace germflow::cli
