#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "spoja/sampling.hpp"
#include "spoja/sparse_pca.hpp"
#include "spoja/support.hpp"

namespace spoja {

// Single pass computing Σ̂ᵢᵢ = (1/n)Σₜ Xₜ(i)².
std::vector<double> empirical_diagonal(SampleSource& source);

// Top-s indices of the empirical diagonal (lowest index wins ties).
SupportEstimate diagonal_thresholding(SampleSource& source, std::size_t s);

struct PowerOptions {
  double tol = 1e-10;
  std::size_t max_iter = 100000;
};

// Top eigenvector of a symmetric row-major k×k matrix by power iteration,
// stopping once ‖Av − (vᵀAv)v‖ ≤ tol·max(1, |vᵀAv|). Throws no-convergence.
std::vector<double> top_eigvec_symmetric(std::span<const double> a, std::size_t k,
                                         PowerOptions opts = {});

// Top eigenvector of (1/n)ΣXᵢXᵢᵀ from a row-major n×d sample matrix.
// Ground-truth helper for tests and benchmarks; d is capped at 512.
std::vector<double> offline_top_eigvec(std::span<const double> samples, std::size_t n, std::size_t d,
                                       PowerOptions opts = {});

// Diagonal thresholding on the first ⌈n/2⌉ samples, then the top eigenvector
// of the k×k empirical covariance of the remaining samples on Ŝ.
SparsePcaResult pipeline_diag_thresh(SampleStream& data, std::size_t k);

}  // namespace spoja
