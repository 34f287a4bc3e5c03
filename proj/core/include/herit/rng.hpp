#ifndef HERIT_RNG_HPP
#define HERIT_RNG_HPP

#include <cstdint>
#include <vector>

namespace herit::rng {

// splitmix64 step; used both as a generator kernel and to mix stream ids.
std::uint64_t splitmix64(std::uint64_t& state);

// Stream purposes keep substreams of one master seed from colliding.
enum class Purpose : std::uint64_t {
  GenotypeColumn = 1,
  MinorAlleleFreq = 2,
  Effects = 3,
  Noise = 4,
  FixedEffects = 5,
  Subsample = 6,
  BootstrapReplicate = 7,
  CalibrationCell = 8,
  Generic = 9,
};

std::uint64_t stream_id(Purpose purpose, std::uint64_t index);

// Counter-based substream: fully determined by (seed, id), cheap to
// construct, so per-column / per-replicate streams are free and results
// never depend on worker scheduling. The core is xoshiro256**.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t id);

  std::uint64_t next_u64();

  // Uniform on [0,1).
  double uniform();
  double uniform(double lo, double hi);

  // Standard normal via Box-Muller (one value cached), so draws are
  // identical on every platform.
  double normal();

  // Unbiased integer on [0, n).
  std::uint64_t below(std::uint64_t n);

  // Allele count: sum of two Bernoulli(p) draws.
  int binomial2(double p);

  // First k entries of a random permutation of 0..n-1 (partial
  // Fisher-Yates), sorted ascending.
  std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

 private:
  std::uint64_t s_[4];
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

Stream substream(std::uint64_t seed, Purpose purpose, std::uint64_t index);

}  // namespace herit::rng

#endif
