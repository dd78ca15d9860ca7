#pragma once

#include <stdexcept>
#include <string>

namespace lmo {

enum class ErrorKind {
  kUnknownLabel,
  kDuplicateLabel,
  kInvalidArgument,
  kDimensionMismatch,
  kSingularCovariance,
  kCapacityExceeded,
  kParse,
  kNumerical,
};

const char* to_string(ErrorKind kind);

/// Exception carrying a machine-checkable kind next to the human message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lmo
