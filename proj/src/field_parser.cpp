#include "germflow/field_parser.hpp"

#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "germflow/errors.hpp"

namespace germflow {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

// Splits on commas that are not inside parentheses.
std::vector<std::string_view> split_top_level(std::string_view s) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') {
      ++depth;
    } else if (s[i] == ')') {
      if (--depth < 0) throw ParseError("unbalanced ')' in field spec");
    } else if (s[i] == ',' && depth == 0) {
      parts.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  if (depth != 0) throw ParseError("unbalanced '(' in field spec");
  parts.push_back(trim(s.substr(start)));
  return parts;
}

}  // namespace

double parse_number(std::string_view text) {
  const std::string buf(trim(text));
  if (buf.empty()) throw ParseError("expected a number");
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size() || !std::isfinite(v)) {
    throw ParseError("not a finite number: '" + buf + "'");
  }
  return v;
}

LogCoord parse_point(std::string_view text) {
  text = trim(text);
  if (text.starts_with("z=")) return LogCoord::from_z(parse_number(text.substr(2)));
  if (text.starts_with("w=")) return LogCoord::from_w(parse_number(text.substr(2)));
  if (text.starts_with("x=")) text.remove_prefix(2);
  return LogCoord::from_x(parse_number(text));
}

FieldSpec parse_field_spec(std::string_view text) {
  text = trim(text);
  const auto parts = split_top_level(text);
  if (parts.empty() || !parts.front().starts_with("family:")) {
    throw ParseError("field spec must start with 'family:<name>'");
  }
  const std::string_view name = trim(parts.front().substr(7));
  const auto family = family_from_name(name);
  if (!family) throw ParseError("unknown family '" + std::string(name) + "'");

  std::optional<double> alpha, lambda, delta;
  std::optional<std::string_view> base_text;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const std::string_view kv = parts[i];
    const auto eq = kv.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key=value, got '" + std::string(kv) + "'");
    const std::string_view key = trim(kv.substr(0, eq));
    const std::string_view value = trim(kv.substr(eq + 1));
    auto set_once = [&](std::optional<double>& slot) {
      if (slot) throw ParseError("duplicate key '" + std::string(key) + "'");
      slot = parse_number(value);
    };
    if (key == "alpha") {
      set_once(alpha);
    } else if (key == "lambda") {
      set_once(lambda);
    } else if (key == "delta") {
      set_once(delta);
    } else if (key == "base") {
      if (base_text) throw ParseError("duplicate key 'base'");
      if (value.size() < 2 || value.front() != '(' || value.back() != ')') {
        throw ParseError("base must be parenthesised: base=(family:...)");
      }
      base_text = value.substr(1, value.size() - 2);
    } else {
      throw ParseError("unknown key '" + std::string(key) + "'");
    }
  }

  const bool perturbation = *family == Family::PerturbA || *family == Family::PerturbB;
  if (base_text && !perturbation) throw ParseError("'base' only applies to perturba/perturbb");
  if (*family == Family::Linear && alpha) throw ParseError("linear family takes no alpha");

  if (perturbation) {
    if (lambda) throw ParseError("perturbations inherit lambda from their base");
    const FieldSpec base = base_text ? parse_field_spec(*base_text) : FieldSpec::linear();
    return *family == Family::PerturbA ? FieldSpec::perturb_a(base, alpha.value_or(0.0), delta)
                                       : FieldSpec::perturb_b(base, alpha.value_or(0.0), delta);
  }
  if (*family == Family::SGenerated && lambda && *lambda != -1.0) {
    throw ParseError("sgen fields have lambda = -1");
  }
  return FieldSpec::make(*family, alpha.value_or(0.0), lambda.value_or(-1.0), delta);
}

}  // namespace germflow
