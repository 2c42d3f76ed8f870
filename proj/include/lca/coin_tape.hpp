#pragma once

#include <cstdint>
#include <optional>

namespace lca {

/// Separates the coin streams of the different oracles so that two oracles run
/// on the same instance with the same seed never share randomness.
enum class CoinStream : std::uint8_t {
  kMis = 1,
  kMisBExtra = 2,
  kIsc = 3,
  kColoring = 4,
  kCnf = 5,
};

enum class Color : std::uint8_t { kRed = 0, kBlue = 1 };

/**
 * Lazily evaluated random tape. Every coin is a pure function of
 * (seed, stream, entity, round, epoch): the 64-bit word for a key is a chained
 * SplitMix64 finalizer over the tuple, so any process on any platform that
 * asks for the same key sees the same bit.
 */
class CoinTape {
 public:
  CoinTape(std::uint64_t seed, CoinStream stream) : seed_(seed), stream_(stream) {}

  /// A tape whose every word is `word`. Test-only: lets a caller force
  /// outcomes (e.g. all-ones never passes a biased coin with p < 1).
  static CoinTape stub(std::uint64_t word);

  std::uint64_t seed() const { return seed_; }
  CoinStream stream() const { return stream_; }

  std::uint64_t word(std::uint64_t entity, std::uint64_t round, std::uint64_t epoch) const;

  /// True with probability numerator/denominator: the word is compared
  /// against floor(2^64 · numerator / denominator).
  bool bernoulli(std::uint64_t entity, std::uint64_t round, std::uint64_t epoch, std::uint64_t numerator,
                 std::uint64_t denominator) const;

  /// Fair coin on the word's top bit, keyed (vertex, round 0, epoch).
  Color color_coin(std::uint64_t vertex, std::uint64_t epoch) const;

 private:
  std::uint64_t seed_;
  CoinStream stream_;
  std::optional<std::uint64_t> fixed_;
};

/// SplitMix64 output function (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace lca
