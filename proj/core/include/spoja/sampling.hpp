#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "spoja/cov_models.hpp"

namespace spoja {

// Single-pass source of d-dimensional samples.
class SampleSource {
 public:
  virtual ~SampleSource() = default;
  virtual std::size_t dim() const = 0;
  virtual std::size_t remaining() const = 0;
  // Writes the next sample into out (size dim()); throws stream-exhausted.
  virtual void next(std::span<double> out) = 0;
};

// Seeded i.i.d. samples from a CovModel. Sample j of a stream is generated from
// its own generator seeded with derive_seed(seed, j), so any contiguous range
// can be handed to a child stream without touching the others.
//
// The model must outlive the stream.
class SampleStream final : public SampleSource {
 public:
  SampleStream(const CovModel& model, std::uint64_t seed, std::size_t n,
               SampleFamily family = SampleFamily::gaussian);

  std::size_t dim() const override { return model_->dim(); }
  std::size_t remaining() const override { return count_ - cursor_; }
  void next(std::span<double> out) override;
  std::vector<double> next_sample();

  // Child stream over the next m samples; this stream's cursor skips past them.
  SampleStream take(std::size_t m);

  const CovModel& model() const noexcept { return *model_; }
  std::uint64_t seed() const noexcept { return seed_; }
  SampleFamily family() const noexcept { return family_; }
  std::size_t count() const noexcept { return count_; }
  std::size_t cursor() const noexcept { return cursor_; }
  // Global index of this stream's first sample within the seed's sequence.
  std::size_t offset() const noexcept { return offset_; }

 private:
  SampleStream(const CovModel& model, std::uint64_t seed, std::size_t offset, std::size_t n,
               SampleFamily family);

  const CovModel* model_;
  std::uint64_t seed_;
  std::size_t offset_;
  std::size_t count_;
  std::size_t cursor_ = 0;
  SampleFamily family_;
};

// View of another source keeping only the listed coordinates (in that order).
class RestrictedSource final : public SampleSource {
 public:
  RestrictedSource(SampleSource& inner, std::vector<std::size_t> coords);

  std::size_t dim() const override { return coords_.size(); }
  std::size_t remaining() const override { return inner_->remaining(); }
  void next(std::span<double> out) override;

 private:
  SampleSource* inner_;
  std::vector<std::size_t> coords_;
  std::vector<double> buf_;
};

// z ~ N(0, I_d), not normalized.
std::vector<double> gaussian_unit_init(std::size_t d, std::uint64_t seed);

}  // namespace spoja
