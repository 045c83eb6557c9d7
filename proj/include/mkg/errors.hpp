#pragma once
#include <stdexcept>
#include <string>

namespace mkg {

// Error taxonomy shared by all modules.  Each maps onto the failure modes
// named in the operation contracts (axis refusal, bad configs, fits that
// cannot be trusted, ...).  All derive from std::runtime_error so callers
// can catch coarsely.
struct AxisError : std::runtime_error {
  explicit AxisError(const std::string& m) : std::runtime_error("axis: " + m) {}
};
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& m) : std::runtime_error("config: " + m) {}
};
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& m) : std::runtime_error("domain: " + m) {}
};
struct OutOfDomain : std::runtime_error {
  explicit OutOfDomain(const std::string& m) : std::runtime_error("out of domain: " + m) {}
};
struct UnsupportedMultiplier : std::runtime_error {
  explicit UnsupportedMultiplier(const std::string& m)
      : std::runtime_error("unsupported multiplier: " + m) {}
};
struct StepUnderflow : std::runtime_error {
  explicit StepUnderflow(const std::string& m) : std::runtime_error("step underflow: " + m) {}
};
struct BlowupError : std::runtime_error {
  explicit BlowupError(const std::string& m) : std::runtime_error("blowup: " + m) {}
};
struct InsufficientData : std::runtime_error {
  explicit InsufficientData(const std::string& m)
      : std::runtime_error("insufficient data: " + m) {}
};
struct FloorDominated : std::runtime_error {
  explicit FloorDominated(const std::string& m) : std::runtime_error("floor dominated: " + m) {}
};

}  // namespace mkg
