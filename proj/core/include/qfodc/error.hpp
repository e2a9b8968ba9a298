#pragma once

#include <stdexcept>
#include <string>

namespace qfodc {

enum class ErrorKind {
  DivisionByZero,
  InvalidBase,
  InvalidArgument,
  Parse,
  UnsupportedConfig,
  SpectralFailure,
  InvalidDegree,
  NotInvariant,
  AntipodeFailure,
  InvalidCharacter,
  UnsupportedFunctional,
  RankUnstable,
  NotCentral,
  NotDirect,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qfodc
