#pragma once

#include <stdexcept>
#include <string>

namespace sedsim {

// Configuration invariant violation; the message names the offending key.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when the force evaluation is asked for a point inside the
// singularity floor around the nucleus.
class SingularityError : public std::runtime_error {
 public:
  SingularityError(const std::string& msg, double r) : std::runtime_error(msg), radius(r) {}
  double radius;
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace sedsim
