#include "herit/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace herit::rng {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t stream_id(Purpose purpose, std::uint64_t index) {
  return (static_cast<std::uint64_t>(purpose) << 56) ^ index;
}

namespace {
inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}
}  // namespace

Stream::Stream(std::uint64_t seed, std::uint64_t id) {
  // Seed the four xoshiro words from splitmix64 over (seed, id) so that
  // distinct (seed, id) pairs give independent-looking streams.
  std::uint64_t mix = seed;
  std::uint64_t a = splitmix64(mix);
  mix ^= 0x6a09e667f3bcc909ULL + id;
  std::uint64_t b = splitmix64(mix);
  mix ^= rotl(id, 17) + 0xbb67ae8584caa73bULL;
  s_[0] = a;
  s_[1] = b;
  s_[2] = splitmix64(mix);
  s_[3] = splitmix64(mix) | 1ULL;  // never all-zero state
}

std::uint64_t Stream::next_u64() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Stream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Stream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

double Stream::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  cached_normal_ = r * std::sin(theta);
  has_cached_normal_ = true;
  return r * std::cos(theta);
}

std::uint64_t Stream::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Stream::below: n must be positive");
  // Rejection sampling to avoid modulo bias.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v = next_u64();
  while (v >= limit) v = next_u64();
  return v % n;
}

int Stream::binomial2(double p) {
  return (uniform() < p ? 1 : 0) + (uniform() < p ? 1 : 0);
}

std::vector<std::size_t> Stream::sample_without_replacement(std::size_t n,
                                                            std::size_t k) {
  if (k > n) throw std::invalid_argument("sample size exceeds population");
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(below(n - i));
    std::swap(pool[i], pool[j]);
  }
  std::vector<std::size_t> out(pool.begin(), pool.begin() + static_cast<long>(k));
  std::sort(out.begin(), out.end());
  return out;
}

Stream substream(std::uint64_t seed, Purpose purpose, std::uint64_t index) {
  return Stream(seed, stream_id(purpose, index));
}

}  // namespace herit::rng
