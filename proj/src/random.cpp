#include "cdcopt/random.hpp"

namespace cdcopt {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t RngStream::bits(std::uint64_t key, std::uint64_t counter) const {
  std::uint64_t h = mix64(seed_);
  h = mix64(h ^ stream_);
  h = mix64(h ^ key);
  return mix64(h ^ counter);
}

double RngStream::uniform(std::uint64_t key, std::uint64_t counter) const {
  // 53 random bits centred in their cell: never 0, never 1.
  return (static_cast<double>(bits(key, counter) >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace cdcopt
