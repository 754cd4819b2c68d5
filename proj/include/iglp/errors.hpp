#pragma once

#include <stdexcept>
#include <string>

namespace iglp {

// Request exceeds what the implementation supports (degree caps, order caps,
// grid sizes). Distinct from argument errors so callers can map it to a
// dedicated exit code.
class capability_error : public std::runtime_error {
 public:
  explicit capability_error(const std::string& what) : std::runtime_error(what) {}
};

// A function produced a non-finite value during quadrature or sampling; the
// message carries the offending point.
class evaluation_error : public std::runtime_error {
 public:
  explicit evaluation_error(const std::string& what) : std::runtime_error(what) {}
};

// Integrand fails the decay checks required by the target measure.
class integrability_error : public std::runtime_error {
 public:
  explicit integrability_error(const std::string& what) : std::runtime_error(what) {}
};

class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace iglp
