#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "lca/coin_tape.hpp"

using namespace lca;

TEST(CoinTape, FrozenVectors) {
  std::ifstream in(LCA_TEST_DATA_DIR "/coin_vectors.txt");
  ASSERT_TRUE(in) << "missing coin_vectors.txt";
  std::string line;
  int checked = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::uint64_t seed, stream, entity, round, epoch;
    std::string word;
    fields >> seed >> stream >> entity >> round >> epoch >> word;
    const CoinTape tape(seed, static_cast<CoinStream>(stream));
    EXPECT_EQ(tape.word(entity, round, epoch), std::stoull(word, nullptr, 16)) << line;
    ++checked;
  }
  EXPECT_GE(checked, 30);
}

TEST(CoinTape, SplitMixReferenceOutputs) {
  // First outputs of the reference generator seeded with 0.
  std::uint64_t state = 0;
  auto next = [&] {
    const std::uint64_t out = splitmix64(state);
    state += 0x9e3779b97f4a7c15ULL;
    return out;
  };
  EXPECT_EQ(next(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(next(), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(next(), 0x06c45d188009454fULL);
}

TEST(CoinTape, Pure) {
  const CoinTape a(99, CoinStream::kMis), b(99, CoinStream::kMis);
  for (std::uint64_t e = 0; e < 100; ++e) {
    EXPECT_EQ(a.word(e, 3, 1), b.word(e, 3, 1));
    EXPECT_EQ(a.bernoulli(e, 3, 0, 1, 8), a.bernoulli(e, 3, 0, 1, 8));
    EXPECT_EQ(a.color_coin(e, 2), b.color_coin(e, 2));
  }
}

TEST(CoinTape, StreamsDiffer) {
  const CoinTape mis(5, CoinStream::kMis), isc(5, CoinStream::kIsc);
  int same = 0;
  for (std::uint64_t e = 0; e < 1000; ++e) same += mis.word(e, 1, 0) == isc.word(e, 1, 0);
  EXPECT_EQ(same, 0);
}

TEST(CoinTape, CertainEventAlwaysTrue) {
  const CoinTape t(1, CoinStream::kCnf);
  for (std::uint64_t e = 0; e < 1000; ++e) EXPECT_TRUE(t.bernoulli(e, 0, 0, 7, 7));
  EXPECT_THROW(t.bernoulli(0, 0, 0, 0, 4), std::invalid_argument);
  EXPECT_THROW(t.bernoulli(0, 0, 0, 5, 4), std::invalid_argument);
}

TEST(CoinTape, StubForcesOutcomes) {
  const CoinTape ones = CoinTape::stub(~0ULL);
  const CoinTape zeros = CoinTape::stub(0);
  EXPECT_FALSE(ones.bernoulli(3, 1, 0, 1, 4));
  EXPECT_TRUE(zeros.bernoulli(3, 1, 0, 1, 4));
  EXPECT_EQ(ones.color_coin(0, 0), Color::kBlue);
  EXPECT_EQ(zeros.color_coin(0, 0), Color::kRed);
}

TEST(CoinTape, QuarterCoinMean) {
  const CoinTape t(2024, CoinStream::kMis);
  const int n = 1000000;
  int hits = 0;
  for (int i = 0; i < n; ++i) hits += t.bernoulli(static_cast<std::uint64_t>(i), 7, 0, 1, 4);
  EXPECT_NEAR(static_cast<double>(hits) / n, 0.25, 0.002);
}

TEST(CoinTape, ColorCoinFair) {
  const CoinTape t(77, CoinStream::kColoring);
  const int n = 1000000;
  int red = 0;
  for (int i = 0; i < n; ++i) red += t.color_coin(static_cast<std::uint64_t>(i), 0) == Color::kRed;
  EXPECT_NEAR(static_cast<double>(red) / n, 0.5, 0.002);
}

TEST(CoinTape, EpochsGiveFreshColors) {
  const CoinTape t(3, CoinStream::kColoring);
  int differ = 0;
  for (std::uint64_t v = 0; v < 1000; ++v) differ += t.color_coin(v, 1) != t.color_coin(v, 2);
  EXPECT_GT(differ, 400);
  EXPECT_LT(differ, 600);
}
