#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vlab {

enum class ErrorKind {
  RadixTooSmall,
  CapacityExceeded,
  IndexOutOfRange,
  DigitOutOfRange,
  RankOutOfRange,
  CoordinateOutOfRange,
  InvalidExponent,
  ResolutionMismatch,
  EmptyMartingale,
  NotAdapted,
  ZeroTotalWeight,
  InvalidWeight,
  DegenerateInput,
  DepthTooSmall,
  NonFiniteValue,
  ParseError,
  ConfigError,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace vlab
