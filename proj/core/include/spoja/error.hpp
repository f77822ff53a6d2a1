#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spoja {

enum class ErrorKind {
  invalid_dims,
  invalid_spike,
  not_orthonormal,
  not_descending,
  stream_exhausted,
  nonfinite_input,
  invalid_gap,
  invalid_k,
  invalid_s,
  invalid_schedule,
  invalid_min_entry,
  zero_after_truncation,
  not_unit,
  insufficient_data,
  no_convergence,
  near_degenerate_eigenvalues,
  no_valid_theta,
  empty_input,
  dim_too_large,
  bound_violated,
  config_error,
};

// Kebab-case name of an error kind, e.g. "invalid-dims".
std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& detail);

}  // namespace spoja
