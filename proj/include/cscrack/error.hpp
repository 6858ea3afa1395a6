#pragma once

#include <stdexcept>
#include <string>

namespace cscrack {

enum class ErrorKind {
  invalid_parameter,
  inadmissible,
  domain,
  quadrature_failure,
  degenerate_denominator,
  no_sign_change,
  no_interior_max,
  not_bracketed,
  insufficient_points,
  unknown_figure,
};

const char* to_string(ErrorKind kind) noexcept;

// Single exception type for the library; `kind()` carries the category so
// callers (and the C API) can map failures without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cscrack
