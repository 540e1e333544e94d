#ifndef CDCOPT_RANDOM_HPP
#define CDCOPT_RANDOM_HPP

#include <cstdint>
#include <string_view>

namespace cdcopt {

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// FNV-1a, stable across platforms and standard libraries.
std::uint64_t fnv1a64(std::string_view text);

// Counter-based uniform source. A draw is a pure function of
// (seed, stream, key, counter), so replication r of a run never depends on
// how many draws other replications made, or on which thread ran them.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream)
      : seed_(seed), stream_(stream) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  std::uint64_t bits(std::uint64_t key, std::uint64_t counter) const;

  // Uniform in the open interval (0, 1).
  double uniform(std::uint64_t key, std::uint64_t counter) const;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
};

}  // namespace cdcopt

#endif  // CDCOPT_RANDOM_HPP
