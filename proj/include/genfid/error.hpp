#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace genfid {

enum class ErrorKind {
  InvalidArgument,
  NonHermitian,
  NotPD,
  NotUnitary,
  Singular,
  DimensionMismatch,
  NonPositiveZ,
  ZBelowHalf,
  UnsortedGrid,
  TargetOutOfInterval,
  NoEpsilonFound,
  BadWeights,
  NotCommuting,
  WrongContext,
  SearchExhausted,
  OutputNotPD,
  HypothesesNotMet,
  ResidualCheck,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace genfid
