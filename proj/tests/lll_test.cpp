#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

#include "lca/lll.hpp"
#include "lca/verify.hpp"

using namespace lca;

namespace {

// Exhaustive scan over every positive split, smallest first.
std::optional<LllParams> enumerate_split(unsigned k, unsigned d, bool cnf) {
  const double dd = d;
  const double a = (cnf ? 8.0 : 16.0) * dd * (dd - 1) * (dd - 1) * (dd - 1) * (dd + 1);
  const double b = (cnf ? 1.0 : 2.0) * std::exp(1.0) * (dd + 1);
  for (unsigned k1 = 1; k1 <= k; ++k1)
    for (unsigned k2 = 1; k1 + k2 < k; ++k2) {
      const unsigned k3 = k - k1 - k2;
      if (a < std::pow(2.0, k1) && a < std::pow(2.0, k2) && b < std::pow(2.0, k3)) return LllParams{k1, k2, k3};
    }
  return std::nullopt;
}

Hypergraph single_edge(unsigned k) {
  std::vector<VertexId> flat(k);
  for (unsigned i = 0; i < k; ++i) flat[i] = i;
  return Hypergraph(k, k, flat);
}

bool is_value(VarState s) { return s == VarState::kValue0 || s == VarState::kValue1; }

bool satisfied_under(const LllSession& s, EdgeId e, const std::vector<int>& value, bool cnf,
                     std::span<const std::uint8_t> polarity) {
  const auto m = s.instance().member(e);
  bool seen[2] = {false, false};
  for (unsigned i = 0; i < m.size(); ++i) {
    const int v = value[m[i]];
    if (cnf) {
      if ((v == 1) == (polarity[std::size_t{e} * m.size() + i] != 0)) return true;
    } else {
      seen[v] = true;
    }
  }
  return !cnf && seen[0] && seen[1];
}

// First satisfying assignment of x's trouble-2 component in plain binary
// counting order (smallest id most significant, 0 before 1).
std::vector<int> brute_phase3(const LllSession& s, VertexId x, bool cnf, std::span<const std::uint8_t> polarity) {
  const Incidence& inc = s.instance();
  auto surviving2 = [&](EdgeId e) {
    return s.edge_state(e) == EdgeState::kDangerous2 || s.edge_state(e) == EdgeState::kUnsafe2;
  };
  std::set<EdgeId> comp;
  std::deque<EdgeId> q;
  for (EdgeId e : inc.members_of(x)) {
    if (surviving2(e) && comp.insert(e).second) q.push_back(e);
  }
  while (!q.empty()) {
    const EdgeId e = q.front();
    q.pop_front();
    for (EdgeId f : inc.dependents(e)) {
      if (surviving2(f) && comp.insert(f).second) q.push_back(f);
    }
  }
  std::set<VertexId> free_set;
  for (EdgeId e : comp)
    for (VertexId y : inc.member(e))
      if (s.var_state(y) == VarState::kTrouble2) free_set.insert(y);
  const std::vector<VertexId> free(free_set.begin(), free_set.end());
  std::vector<int> value(inc.num_points(), 0);
  for (VertexId y = 0; y < inc.num_points(); ++y) value[y] = s.var_state(y) == VarState::kValue1;
  const std::size_t n = free.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    for (std::size_t i = 0; i < n; ++i) value[free[i]] = (mask >> (n - 1 - i)) & 1;
    if (std::all_of(comp.begin(), comp.end(), [&](EdgeId e) { return satisfied_under(s, e, value, cnf, polarity); })) {
      return value;
    }
  }
  return {};
}

}  // namespace

TEST(CheckParams, Examples) {
  EXPECT_EQ(check_params(6, 1), (LllParams{1, 1, 4}));
  EXPECT_FALSE(check_params(3, 1));
  EXPECT_EQ(check_params(19, 2), (LllParams{7, 7, 5}));
  EXPECT_EQ(check_params_cnf(5, 1), (LllParams{1, 1, 3}));
  EXPECT_FALSE(check_params_cnf(4, 1));
  EXPECT_EQ(check_params_cnf(16, 2), (LllParams{6, 6, 4}));
}

TEST(CheckParams, AgreesWithEnumeration) {
  for (unsigned k = 1; k <= 32; ++k) {
    for (unsigned d = 0; d <= 6; ++d) {
      EXPECT_EQ(check_params(k, d), enumerate_split(k, d, false)) << k << "," << d;
      EXPECT_EQ(check_params_cnf(k, d), enumerate_split(k, d, true)) << k << "," << d;
    }
  }
}

TEST(Caps, RetryFormula) {
  LllConfig c;
  c.c3 = 1;
  EXPECT_EQ(lll_caps(65536, c).retries, 4u);
  const auto caps = lll_caps(1000, LllConfig{});
  EXPECT_EQ(caps.phase2_cap, static_cast<std::size_t>(std::ceil(8 * std::log2(1001.0))));
  EXPECT_EQ(caps.phase3_cap, static_cast<std::size_t>(std::ceil(8 * std::log2(std::log2(1002.0) + 1))));
  EXPECT_GE(lll_caps(0, LllConfig{}).retries, 1u);
}

TEST(Coloring, InfeasibleThrows) {
  const Hypergraph h = single_edge(3);
  EXPECT_THROW(ColoringSession(h, 1), InfeasibleParams);
}

TEST(Coloring, NoConstraintsGivesCoin) {
  const Hypergraph h(10, 6, {});
  ColoringSession s(h, 4);
  const CoinTape tape(4, CoinStream::kColoring);
  for (VertexId x = 0; x < 10; ++x) EXPECT_EQ(s.query(x), tape.color_coin(x, 0));
}

TEST(Coloring, FirstColorMakesLoneEdgeDangerous) {
  const Hypergraph h = single_edge(6);
  ColoringSession s(h, 12);
  ASSERT_EQ(s.engine().params(), (LllParams{1, 1, 4}));
  s.query(2);
  EXPECT_EQ(s.engine().edge_state(0), EdgeState::kDangerous1);
  for (VertexId x = 0; x < 6; ++x) {
    if (x != 2) EXPECT_EQ(s.engine().var_state(x), VarState::kTrouble1);
  }
  EXPECT_EQ(s.engine().check_invariants(), "");
  std::vector<std::uint8_t> colors(6);
  for (VertexId x = 0; x < 6; ++x) colors[x] = *s.query(x) == Color::kBlue;
  EXPECT_FALSE(verify_coloring(h, colors));
}

TEST(Coloring, SweepsAreProperAndInvariantsHold) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const Hypergraph h = gen_hypergraph(2000, 200, 6, 1, seed);
    ColoringSession s(h, seed);
    const auto order = make_order(h.vertex_count(), seed);
    std::vector<std::uint8_t> colors(h.vertex_count());
    bool failed = false;
    for (VertexId x : order) {
      const auto c = s.query(x);
      failed |= !c;
      if (c) colors[x] = *c == Color::kBlue;
      ASSERT_EQ(s.engine().check_invariants(), "") << "after querying " << x;
    }
    if (!failed) EXPECT_FALSE(verify_coloring(h, colors));
    EXPECT_LE(s.engine().stats().max_phase3_component, s.engine().caps().phase3_cap);
  }
}

TEST(Coloring, ReplayIsDeterministic) {
  const Hypergraph h = gen_hypergraph(3000, 300, 6, 1, 5);
  const auto order = make_order(h.vertex_count(), 77);
  EXPECT_EQ(sweep_coloring(h, 9, order).answers, sweep_coloring(h, 9, order).answers);
}

TEST(Coloring, FreeVariableGetsEpochZeroCoin) {
  const Hypergraph h = gen_hypergraph(1000, 100, 6, 1, 3);
  ColoringSession s(h, 3);
  const CoinTape tape(3, CoinStream::kColoring);
  int checked = 0;
  for (VertexId x = 0; x < h.vertex_count(); ++x) {
    const bool was_free = s.engine().var_state(x) == VarState::kFree;
    const auto c = s.query(x);
    if (was_free) {
      EXPECT_EQ(c, tape.color_coin(x, 0));
      ++checked;
    }
  }
  EXPECT_GT(checked, 0);
}

TEST(Coloring, AcceptedEpochsAreRecorded) {
  const Hypergraph h = gen_hypergraph(2000, 200, 6, 1, 1);
  ColoringSession s(h, 1);
  for (VertexId x = 0; x < h.vertex_count(); ++x) s.query(x);
  std::size_t pinned = 0;
  for (EdgeId e = 0; e < h.edge_count(); ++e) {
    if (const auto ep = s.engine().accepted_epoch(e)) {
      EXPECT_GE(*ep, 1u);
      ++pinned;
    }
  }
  EXPECT_GT(pinned, 0u);
  EXPECT_GE(s.engine().stats().phase2_runs, 1u);
}

// Forcing k1 = k2 = 1 on wide edges drives many variables into the last phase.
TEST(PhaseThree, MatchesBruteForceColoring) {
  LllConfig config;
  config.params = LllParams{1, 1, 4};
  std::size_t compared = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Hypergraph h = gen_hypergraph(60, 12, 6, 2, seed);
    LllSession s(h, Semantics::kColoring, {}, seed, config);
    for (VertexId x = 0; x < h.vertex_count(); ++x) {
      if (s.var_state(x) != VarState::kTrouble2) {
        s.query(x);
        continue;
      }
      const auto expect = brute_phase3(s, x, false, {});
      ASSERT_FALSE(expect.empty());
      const auto got = s.query(x);
      ASSERT_TRUE(got);
      for (VertexId y = 0; y < h.vertex_count(); ++y) {
        if (is_value(s.var_state(y))) EXPECT_EQ(s.var_state(y) == VarState::kValue1, expect[y] == 1) << y;
      }
      ++compared;
      ASSERT_EQ(s.check_invariants(), "");
    }
  }
  EXPECT_GT(compared, 0u);
}

TEST(PhaseThree, MatchesBruteForceCnf) {
  LllConfig config;
  config.params = LllParams{1, 1, 3};
  std::size_t compared = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const CnfFormula f = gen_cnf(60, 14, 5, 2, seed);
    LllSession s(f, Semantics::kCnf, f.polarities(), seed, config);
    for (VertexId x = 0; x < f.var_count(); ++x) {
      if (s.var_state(x) != VarState::kTrouble2) {
        s.query(x);
        continue;
      }
      const auto expect = brute_phase3(s, x, true, f.polarities());
      ASSERT_FALSE(expect.empty());
      ASSERT_TRUE(s.query(x));
      for (VertexId y = 0; y < f.var_count(); ++y) {
        if (is_value(s.var_state(y))) EXPECT_EQ(s.var_state(y) == VarState::kValue1, expect[y] == 1) << y;
      }
      ++compared;
    }
  }
  EXPECT_GT(compared, 0u);
}

TEST(Cnf, SatisfiedClauseTurnsSafe) {
  const CnfFormula f(2, 2, {Literal{0, true}, Literal{1, true}});
  LllConfig config;
  config.params = LllParams{1, 1, 0};
  std::uint64_t seed = 0;
  while (CoinTape(seed, CoinStream::kCnf).color_coin(0, 0) != Color::kBlue) ++seed;
  CnfSession s(f, seed, config);
  EXPECT_EQ(s.query(0), true);
  EXPECT_EQ(s.engine().edge_state(0), EdgeState::kSafe);
  EXPECT_EQ(s.engine().var_state(1), VarState::kFree);
}

TEST(Cnf, FalseLiteralMakesClauseDangerous) {
  const CnfFormula f(5, 5, {Literal{0, true}, Literal{1, false}, Literal{2, true}, Literal{3, true}, Literal{4, true}});
  std::uint64_t seed = 0;
  while (CoinTape(seed, CoinStream::kCnf).color_coin(0, 0) != Color::kRed) ++seed;
  CnfSession s(f, seed);
  ASSERT_EQ(s.engine().params(), (LllParams{1, 1, 3}));
  EXPECT_EQ(s.query(0), false);
  EXPECT_EQ(s.engine().edge_state(0), EdgeState::kDangerous1);
  std::vector<std::uint8_t> values(5);
  for (VertexId x = 0; x < 5; ++x) values[x] = *s.query(x);
  EXPECT_FALSE(verify_sat(f, values));
}

TEST(Cnf, SweepSatisfiesFormula) {
  const CnfFormula f = gen_cnf(5000, 1000, 5, 1, 6);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto report = sweep_cnf(f, seed, make_order(f.var_count()));
    if (report.fail_count) continue;
    EXPECT_FALSE(verify_sat(f, report.bits()));
  }
}

TEST(Cnf, InvariantsHoldThroughSweep) {
  const CnfFormula f = gen_cnf(1500, 300, 5, 1, 2);
  CnfSession s(f, 2);
  for (VertexId x : make_order(f.var_count(), 8)) {
    s.query(x);
    ASSERT_EQ(s.engine().check_invariants(), "");
  }
}

TEST(Dangerous, IsolatedEdgeRates) {
  // k1 = 4 via override; coloring doubles the CNF rate.
  LllConfig config;
  config.params = LllParams{4, 1, 1};
  const int trials = 20000;
  int col = 0, cnf = 0;
  const Hypergraph h = single_edge(6);
  const CnfFormula f(6, 6, {Literal{0, true}, Literal{1, false}, Literal{2, true}, Literal{3, false},
                            Literal{4, true}, Literal{5, true}});
  for (int t = 0; t < trials; ++t) {
    LllSession a(h, Semantics::kColoring, {}, t, config);
    LllSession b(f, Semantics::kCnf, f.polarities(), t, config);
    for (VertexId x = 0; x < 4; ++x) {
      if (a.var_state(x) == VarState::kFree) a.query(x);
      if (b.var_state(x) == VarState::kFree) b.query(x);
    }
    col += a.stats().dangerous1 > 0;
    cnf += b.stats().dangerous1 > 0;
  }
  const double pc = 1.0 / 8, pf = 1.0 / 16;
  EXPECT_NEAR(static_cast<double>(col) / trials, pc, 4 * std::sqrt(pc * (1 - pc) / trials));
  EXPECT_NEAR(static_cast<double>(cnf) / trials, pf, 4 * std::sqrt(pf * (1 - pf) / trials));
}
