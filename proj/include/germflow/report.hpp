#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "json.hpp"

#include "germflow/regularity.hpp"
#include "germflow/stats.hpp"

namespace germflow {

using Json = nlohmann::ordered_json;

/// %.17g; the CSV number format.
[[nodiscard]] std::string fmt17(double v);
[[nodiscard]] std::string csv_line(const std::vector<std::string>& cells);
[[nodiscard]] std::string csv_line(std::initializer_list<double> values);

[[nodiscard]] Json to_json(const GrowthFit& fit);
[[nodiscard]] Json to_json(const TailBehavior& tail);
[[nodiscard]] Json to_json(const RegularityVerdict& v);
[[nodiscard]] Json to_json(const AcConditionsReport& r);
[[nodiscard]] Json to_json(const LinearFit& fit);

/// Two-space indented dump with a trailing newline.
[[nodiscard]] std::string dump(const Json& j);

}  // namespace germflow
