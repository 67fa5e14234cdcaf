#include "germflow/report.hpp"

#include <cstdio>

namespace germflow {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  out += '\n';
  return out;
}

std::string csv_line(std::initializer_list<double> values) {
  std::vector<std::string> cells;
  for (double v : values) cells.push_back(fmt17(v));
  return csv_line(cells);
}

Json to_json(const GrowthFit& fit) {
  Json j;
  j["gauge"] = gauge_name(fit.gauge);
  j["slope"] = fit.slope;
  j["intercept"] = fit.intercept;
  j["r2"] = fit.r2;
  return j;
}

Json to_json(const TailBehavior& tail) {
  Json j;
  j["label"] = label_name(tail.label);
  j["limit"] = tail.limit;
  j["min"] = tail.min;
  j["max"] = tail.max;
  j["fit"] = to_json(tail.fit);
  return j;
}

Json to_json(const RegularityVerdict& v) {
  Json j;
  j["log_ratio"] = to_json(v.log_ratio);
  j["time_integral"] = to_json(v.time_integral);
  j["bilipschitz"] = tri_name(v.bilipschitz);
  j["c1"] = tri_name(v.c1);
  j["multiplier_x"] = v.multiplier_x;
  j["multiplier_y"] = v.multiplier_y;
  j["delta_z"] = v.delta.z();
  j["fits"] = Json{{"log_ratio", to_json(v.log_ratio.fit)},
                   {"time_integral", to_json(v.time_integral.fit)}};
  return j;
}

Json to_json(const AcConditionsReport& r) {
  static const char* const keys[] = {"i", "ii", "iii", "iv", "v", "vi", "vii"};
  Json j;
  j["alpha"] = r.alpha;
  j["delta_z"] = r.delta.z();
  j["min_one_plus_u"] = r.min_one_plus_u;
  j["degenerate"] = r.degenerate;
  Json conds;
  for (int i = 0; i < 7; ++i) {
    conds[keys[i]] = Json{{"holds", r.cond[i].holds}, {"tail", to_json(r.cond[i].tail)}};
  }
  j["conditions"] = conds;
  j["all_hold"] = r.all_hold();
  return j;
}

Json to_json(const LinearFit& fit) {
  return Json{{"slope", fit.slope}, {"intercept", fit.intercept}, {"r2", fit.r2}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace germflow
