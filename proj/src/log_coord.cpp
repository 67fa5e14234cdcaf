#include "germflow/log_coord.hpp"

#include <string>

#include "germflow/errors.hpp"

namespace germflow {

LogCoord LogCoord::from_z(double z) {
  if (!std::isfinite(z) || !(z < 0.0)) {
    throw DomainError("log coordinate requires finite z < 0, got " + std::to_string(z));
  }
  return LogCoord(z);
}

LogCoord LogCoord::from_x(double x) {
  if (!(x > 0.0) || !(x < 1.0)) {
    throw DomainError("point must satisfy 0 < x < 1, got " + std::to_string(x));
  }
  return LogCoord(std::log(x));
}

LogCoord LogCoord::from_w(double w) {
  if (!std::isfinite(w)) {
    throw DomainError("w = ln|ln x| must be finite");
  }
  const double z = -std::exp(w);
  if (!std::isfinite(z) || !(z < 0.0)) {
    throw DomainError("w = " + std::to_string(w) + " is not representable as z = -e^w");
  }
  return LogCoord(z);
}

}  // namespace germflow
