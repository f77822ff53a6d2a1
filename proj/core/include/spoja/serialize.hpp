#pragma once

#include <string>
#include <string_view>

#include "spoja/cov_models.hpp"
#include "spoja/sparse_pca.hpp"
#include "spoja/support.hpp"

namespace spoja {

// {"method", "indices", "index_base": 0, "params": {"k"} | {"log_gamma"}}
std::string support_to_json(const SupportEstimate& est);

// {"pipeline", "sin2", "support", "n", "seed", "eta", "wall_time_ms"}
std::string result_to_json(const SparsePcaResult& res);

// Model descriptor {"kind", "d", "s", "params"}:
//   single_spike   params {"nu", "support_values"?}
//   counterexample params {} (s must be a multiple of 3)
//   multi_spike    params {"iso"?, "spikes": [{"weight", "indices", "values"}]}
//   general        params {"eigvals", "eigvecs": [[column 0], [column 1], ...]}
// Indices in descriptors are 0-based. Malformed input throws config-error.
CovModel model_from_json(std::string_view text);
std::string model_to_json(const CovModel& m);

}  // namespace spoja
