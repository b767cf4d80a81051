#pragma once

#include <stdexcept>
#include <string>

namespace bratteli {

enum class ErrorKind {
  coordinate_dimension,
  precondition,
  unsupported_spectrum,
  unsupported_field,
  unsupported,
  enumeration_too_large,
  density_violation,
  certificate_failure,
  not_applicable,
  input,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Three-valued answer used by the decision procedures.
enum class Tri { no, yes, undetermined };

inline const char* to_string(Tri t) {
  switch (t) {
    case Tri::yes: return "yes";
    case Tri::no: return "no";
    default: return "undetermined";
  }
}

}  // namespace bratteli
