#include "lca/coin_tape.hpp"

#include <stdexcept>

namespace lca {

CoinTape CoinTape::stub(std::uint64_t word) {
  CoinTape tape(0, CoinStream::kMis);
  tape.fixed_ = word;
  return tape;
}

std::uint64_t CoinTape::word(std::uint64_t entity, std::uint64_t round, std::uint64_t epoch) const {
  if (fixed_) return *fixed_;
  std::uint64_t h = splitmix64(seed_);
  h = splitmix64(h ^ static_cast<std::uint64_t>(stream_));
  h = splitmix64(h ^ entity);
  h = splitmix64(h ^ round);
  return splitmix64(h ^ epoch);
}

bool CoinTape::bernoulli(std::uint64_t entity, std::uint64_t round, std::uint64_t epoch,
                         std::uint64_t numerator, std::uint64_t denominator) const {
  if (numerator == 0 || numerator > denominator) {
    throw std::invalid_argument("bernoulli requires 0 < numerator <= denominator");
  }
  if (numerator == denominator) return true;
  using u128 = unsigned __int128;
  const auto threshold = static_cast<std::uint64_t>((static_cast<u128>(numerator) << 64) / denominator);
  return word(entity, round, epoch) < threshold;
}

Color CoinTape::color_coin(std::uint64_t vertex, std::uint64_t epoch) const {
  return (word(vertex, 0, epoch) >> 63) != 0 ? Color::kBlue : Color::kRed;
}

}  // namespace lca
