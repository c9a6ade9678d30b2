#include "korops/random.hpp"

#include <array>
#include <bit>
#include <cmath>

#include "korops/error.hpp"

namespace korops {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

Complex PointSampler::sample_coordinate(Rng& rng) const {
  const double re = rng.uniform(-re_half_width, re_half_width);
  const double log_im = rng.uniform(std::log(im_min), std::log(im_max));
  return {re, std::exp(log_im)};
}

TubePoint PointSampler::sample(Rng& rng, std::size_t n) const {
  std::vector<Complex> coords(n);
  for (auto& c : coords) c = sample_coordinate(rng);
  return TubePoint(std::move(coords));
}

namespace {

constexpr int kBits = 32;

struct JoeKuo {
  unsigned degree;
  unsigned poly;
  std::array<std::uint32_t, 6> m;
};

// Dimensions 2..16 of new-joe-kuo-6.21201.
constexpr std::array<JoeKuo, 15> kJoeKuo{{
    {1, 0, {1}},
    {2, 1, {1, 3}},
    {3, 1, {1, 3, 1}},
    {3, 2, {1, 1, 1}},
    {4, 1, {1, 1, 3, 3}},
    {4, 4, {1, 3, 5, 13}},
    {5, 2, {1, 1, 5, 5, 17}},
    {5, 4, {1, 1, 5, 5, 5}},
    {5, 7, {1, 1, 7, 11, 19}},
    {5, 11, {1, 1, 5, 1, 1}},
    {5, 13, {1, 1, 1, 3, 11}},
    {5, 14, {1, 3, 5, 5, 31}},
    {6, 1, {1, 3, 3, 9, 7, 49}},
    {6, 13, {1, 1, 1, 15, 21, 21}},
    {6, 16, {1, 3, 1, 13, 27, 49}},
}};

std::vector<std::uint32_t> direction_numbers(std::size_t d) {
  std::vector<std::uint32_t> v(kBits);
  if (d == 0) {
    for (int i = 0; i < kBits; ++i) v[i] = 1u << (kBits - 1 - i);
    return v;
  }
  const JoeKuo& jk = kJoeKuo[d - 1];
  const unsigned s = jk.degree;
  for (unsigned i = 0; i < s && i < static_cast<unsigned>(kBits); ++i) {
    v[i] = jk.m[i] << (kBits - 1 - i);
  }
  for (unsigned i = s; i < static_cast<unsigned>(kBits); ++i) {
    std::uint32_t x = v[i - s] ^ (v[i - s] >> s);
    for (unsigned k = 1; k < s; ++k) {
      if ((jk.poly >> (s - 1 - k)) & 1u) x ^= v[i - k];
    }
    v[i] = x;
  }
  return v;
}

}  // namespace

SobolSequence::SobolSequence(std::size_t dim, std::uint64_t seed)
    : dim_(dim), state_(dim, 0), shift_(dim, 0) {
  if (dim == 0 || dim > kMaxDim) {
    throw DomainError("Sobol dimension must be in [1, " + std::to_string(kMaxDim) + "]");
  }
  directions_.reserve(dim);
  for (std::size_t d = 0; d < dim; ++d) {
    directions_.push_back(direction_numbers(d));
    shift_[d] = static_cast<std::uint32_t>(derive_seed(seed, d) >> 32);
  }
}

std::vector<double> SobolSequence::next() {
  std::vector<double> out(dim_);
  for (std::size_t d = 0; d < dim_; ++d) {
    out[d] = (static_cast<double>(state_[d] ^ shift_[d]) + 0.5) * 0x1.0p-32;
  }
  // Gray-code update for the following point.
  const int c = std::countr_one(index_);
  if (c < kBits) {
    for (std::size_t d = 0; d < dim_; ++d) state_[d] ^= directions_[d][c];
  }
  ++index_;
  return out;
}

}  // namespace korops
