#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "spoja/oja.hpp"
#include "spoja/sampling.hpp"
#include "spoja/support.hpp"

namespace spoja {

enum class Pipeline { trunc_vec, trunc_data, plain_oja, diag_thresh };

std::string_view to_string(Pipeline p);

struct SparsePcaResult {
  std::vector<double> v_hat;
  SupportEstimate support;
  double sin2 = 1.0;
  Pipeline pipeline = Pipeline::trunc_vec;
  std::size_t n_used = 0;
  std::uint64_t seed = 0;
  double eta = 0.0;
  double wall_time_ms = 0.0;
};

// Initial-vector seeds for the two Oja passes of a split pipeline.
struct PipelineSeeds {
  std::uint64_t support_init = 0;
  std::uint64_t estimate_init = 0;

  static PipelineSeeds from_trial(std::uint64_t trial_seed);
};

// Zero v outside S and rescale to unit length.
std::vector<double> truncate_renormalize(std::span<const double> v, std::span<const std::size_t> S);

// 1 − (uᵀv)² clamped to [0, 1]; both arguments must be unit to 1e-9.
double sin2(std::span<const double> u, std::span<const double> v);

// Number of samples the support half of a split pipeline consumes: ⌈n/2⌉.
std::size_t support_half(std::size_t n);

// Oja on the first ⌈n/2⌉ samples → top-k support; Oja on the rest from an
// independent start; the second vector truncated to Ŝ. Both passes use the
// same constant η.
SparsePcaResult pipeline_trunc_vec(SampleStream& data, std::size_t k, double eta, PipelineSeeds seeds);

// Support as in pipeline_trunc_vec; the second half is restricted to the Ŝ
// coordinates, fed to the inverse-time schedule in dimension k, and the
// result placed back into ℝᵈ.
SparsePcaResult pipeline_trunc_data(SampleStream& data, std::size_t k, double eta,
                                    OptimalSchedule schedule, PipelineSeeds seeds);

// Oja over all n samples; the reported support is the top-k of the output.
SparsePcaResult pipeline_plain_oja(SampleStream& data, std::size_t k, double eta, PipelineSeeds seeds);

}  // namespace spoja
