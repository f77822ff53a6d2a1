#include "spoja/error.hpp"

namespace spoja {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_dims: return "invalid-dims";
    case ErrorKind::invalid_spike: return "invalid-spike";
    case ErrorKind::not_orthonormal: return "not-orthonormal";
    case ErrorKind::not_descending: return "not-descending";
    case ErrorKind::stream_exhausted: return "stream-exhausted";
    case ErrorKind::nonfinite_input: return "nonfinite-input";
    case ErrorKind::invalid_gap: return "invalid-gap";
    case ErrorKind::invalid_k: return "invalid-k";
    case ErrorKind::invalid_s: return "invalid-s";
    case ErrorKind::invalid_schedule: return "invalid-schedule";
    case ErrorKind::invalid_min_entry: return "invalid-min-entry";
    case ErrorKind::zero_after_truncation: return "zero-after-truncation";
    case ErrorKind::not_unit: return "not-unit";
    case ErrorKind::insufficient_data: return "insufficient-data";
    case ErrorKind::no_convergence: return "no-convergence";
    case ErrorKind::near_degenerate_eigenvalues: return "near-degenerate-eigenvalues";
    case ErrorKind::no_valid_theta: return "no-valid-theta";
    case ErrorKind::empty_input: return "empty-input";
    case ErrorKind::dim_too_large: return "dim-too-large";
    case ErrorKind::bound_violated: return "bound-violated";
    case ErrorKind::config_error: return "config-error";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

void fail(ErrorKind kind, const std::string& detail) { throw Error(kind, detail); }

}  // namespace spoja
