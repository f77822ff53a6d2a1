#include "spoja/sampling.hpp"

#include "spoja/error.hpp"
#include "spoja/rng.hpp"

namespace spoja {

SampleStream::SampleStream(const CovModel& model, std::uint64_t seed, std::size_t n,
                           SampleFamily family)
    : SampleStream(model, seed, 0, n, family) {}

SampleStream::SampleStream(const CovModel& model, std::uint64_t seed, std::size_t offset,
                           std::size_t n, SampleFamily family)
    : model_(&model), seed_(seed), offset_(offset), count_(n), family_(family) {}

void SampleStream::next(std::span<double> out) {
  if (cursor_ >= count_) fail(ErrorKind::stream_exhausted, "no samples left");
  NormalSource rng(derive_seed(seed_, offset_ + cursor_));
  model_->sample(rng, family_, out);
  ++cursor_;
}

std::vector<double> SampleStream::next_sample() {
  std::vector<double> x(dim());
  next(x);
  return x;
}

SampleStream SampleStream::take(std::size_t m) {
  if (m > remaining()) fail(ErrorKind::stream_exhausted, "cannot take more samples than remain");
  SampleStream child(*model_, seed_, offset_ + cursor_, m, family_);
  cursor_ += m;
  return child;
}

RestrictedSource::RestrictedSource(SampleSource& inner, std::vector<std::size_t> coords)
    : inner_(&inner), coords_(std::move(coords)), buf_(inner.dim()) {
  for (std::size_t c : coords_)
    if (c >= inner.dim()) fail(ErrorKind::invalid_dims, "restricted coordinate out of range");
}

void RestrictedSource::next(std::span<double> out) {
  if (out.size() != coords_.size()) fail(ErrorKind::invalid_dims, "restricted buffer size mismatch");
  inner_->next(buf_);
  for (std::size_t a = 0; a < coords_.size(); ++a) out[a] = buf_[coords_[a]];
}

std::vector<double> gaussian_unit_init(std::size_t d, std::uint64_t seed) {
  if (d == 0) fail(ErrorKind::invalid_dims, "d must be positive");
  NormalSource rng(derive_seed(seed, 0x696e6974ULL));
  std::vector<double> z(d);
  for (auto& v : z) v = rng();
  return z;
}

}  // namespace spoja
