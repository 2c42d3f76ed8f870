#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "lca/isc.hpp"
#include "lca/mis.hpp"
#include "lca/verify.hpp"

using namespace lca;

namespace {

Graph complete(std::size_t n) {
  std::vector<std::pair<VertexId, VertexId>> e;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph::from_edges(n, e);
}

Graph path3() { return Graph::from_edges(3, std::vector<std::pair<VertexId, VertexId>>{{0, 1}, {1, 2}}); }

Graph star3() {
  return Graph::from_edges(4, std::vector<std::pair<VertexId, VertexId>>{{0, 1}, {0, 2}, {0, 3}});
}

Answers sweep_rounds(IscSession& s) {
  Answers out;
  for (VertexId v = 0; v < s.view().size(); ++v) {
    auto r = s.round(v);
    EXPECT_TRUE(r);
    out.emplace_back(r ? std::optional<std::int64_t>(*r) : std::nullopt);
  }
  return out;
}

}  // namespace

TEST(GreedyIsc, EdgelessIsOneSet) {
  const Graph g = Graph::from_edges(2, {});
  EXPECT_EQ(greedy_isc(g), (std::vector<unsigned>{1, 1}));
}

TEST(GreedyIsc, PathByIdOrder) { EXPECT_EQ(greedy_isc(path3()), (std::vector<unsigned>{1, 2, 1})); }

TEST(GreedyIsc, TriangleNeedsThreeSets) { EXPECT_EQ(greedy_isc(complete(3)), (std::vector<unsigned>{1, 2, 3})); }

TEST(GreedyIsc, AtMostMaxDegreePlusOne) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Graph g = gen_graph(5 + seed % 45, static_cast<unsigned>(seed % 7), seed);
    const auto idx = greedy_isc(g);
    const unsigned sets = *std::max_element(idx.begin(), idx.end());
    EXPECT_LE(sets, g.max_degree() + 1);
    Answers classes(idx.begin(), idx.end());
    EXPECT_FALSE(verify_isc(NeighborView::direct(g), classes));
  }
}

TEST(IscRound, IsolatedVertexFollowsTape) {
  const Graph g = Graph::from_edges(1, {});
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    IscSession s(NeighborView::direct(g), seed);
    const CoinTape tape(seed, CoinStream::kIsc);
    unsigned expect = s.rounds() + 1;
    for (unsigned i = 1; i <= s.rounds(); ++i) {
      if (tape.bernoulli(0, i, 0, 1, 4)) {
        expect = i;
        break;
      }
    }
    EXPECT_EQ(s.round(0), expect);
  }
}

TEST(IscRound, ForcedSurvivorsOnTriangle) {
  // A word of all ones never passes a biased coin, so nobody wins Phase 1.
  const Graph g = complete(3);
  IscSession s(NeighborView::direct(g), 0);
  s.set_tape(CoinTape::stub(~0ULL));
  const unsigned r = s.rounds();
  EXPECT_EQ(s.round(2), r + 3);
  EXPECT_EQ(s.round(0), r + 1);
  EXPECT_EQ(s.round(1), r + 2);
  EXPECT_EQ(s.last_component_size(), 0u);  // answered from the cache
}

TEST(IscRound, AllChoosersBlockEachOther) {
  // A word of zero passes every coin: each vertex of an edge is always
  // contested, while an isolated vertex wins round 1.
  const Graph g = Graph::from_edges(3, std::vector<std::pair<VertexId, VertexId>>{{0, 1}});
  IscSession s(NeighborView::direct(g), 0);
  s.set_tape(CoinTape::stub(0));
  EXPECT_EQ(s.round(2), 1u);
  EXPECT_EQ(s.round(0), s.rounds() + 1);
  EXPECT_EQ(s.round(1), s.rounds() + 2);
}

TEST(IscRound, SweepIsCover) {
  for (unsigned d : {1u, 3u, 5u}) {
    const Graph g = gen_graph(1500, d, d);
    IscSession s(NeighborView::direct(g), 40 + d);
    const auto rounds = sweep_rounds(s);
    EXPECT_FALSE(verify_isc(NeighborView::direct(g), rounds));
    for (const auto& r : rounds) {
      EXPECT_GE(*r, 1);
      EXPECT_LE(*r, s.max_round());
    }
  }
}

TEST(IscRound, PhaseTwoWithShortRuns) {
  IscConfig config;
  config.rounds_factor = 0.1;
  config.cap = 100000;
  const Graph g = gen_graph(800, 4, 3);
  IscSession s(NeighborView::direct(g), 3, config);
  const auto rounds = sweep_rounds(s);
  EXPECT_FALSE(verify_isc(NeighborView::direct(g), rounds));
  EXPECT_GT(s.max_component_size(), 1u);
  for (const auto& r : rounds) EXPECT_LE(*r, s.max_round());
}

TEST(IscRound, OrderOblivious) {
  IscConfig config;
  config.rounds_factor = 0.2;
  config.cap = 100000;
  const Graph g = gen_graph(700, 3, 8);
  const auto view = NeighborView::direct(g);
  const auto base = sweep_isc(view, 2, make_order(g.size()), config).answers;
  for (std::uint64_t p = 1; p <= 5; ++p) EXPECT_EQ(sweep_isc(view, 2, make_order(g.size(), p), config).answers, base);
}

TEST(IscRound, TinyCapFails) {
  IscConfig config;
  config.rounds_factor = 0.1;
  config.cap = 1;
  const Graph g = gen_graph(300, 4, 1);
  IscSession s(NeighborView::direct(g), 1, config);
  std::size_t fails = 0;
  for (VertexId v = 0; v < g.size(); ++v) fails += !s.round(v);
  EXPECT_GT(fails, 0u);
  EXPECT_EQ(s.fail_count(), fails);
}

TEST(IscRound, StreamIndependentOfMis) {
  const Graph g = gen_graph(500, 3, 2);
  MisSession mis(g, 5);
  const CoinTape isc(5, CoinStream::kIsc);
  int same = 0;
  for (VertexId v = 0; v < g.size(); ++v) same += mis.coin(v, 1) == isc.bernoulli(v, 1, 0, 1, 6);
  EXPECT_LT(same, 500);
}

TEST(Broadcast, StarGetsFourDistinctRounds) {
  const Graph g = star3();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    IscSession s = IscSession::broadcast(g, seed);
    const auto rounds = sweep_rounds(s);
    std::set<std::int64_t> distinct;
    for (const auto& r : rounds) distinct.insert(*r);
    EXPECT_EQ(distinct.size(), 4u);
    EXPECT_FALSE(verify_broadcast(g, rounds));
  }
}

TEST(Broadcast, PathEndsDiffer) {
  const Graph g = path3();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    IscSession s = IscSession::broadcast(g, seed);
    const auto rounds = sweep_rounds(s);
    EXPECT_NE(*rounds[0], *rounds[1]);
    EXPECT_NE(*rounds[1], *rounds[2]);
    EXPECT_NE(*rounds[0], *rounds[2]);
  }
}

TEST(Broadcast, IsolatedVertexWithinBound) {
  const Graph g = Graph::from_edges(1, {});
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    IscSession s = IscSession::broadcast(g, seed);
    const auto r = s.round(0);
    ASSERT_TRUE(r);
    EXPECT_GE(*r, 1u);
    EXPECT_LE(*r, s.rounds() + 1);
  }
}

TEST(Broadcast, RandomGraphSweep) {
  const Graph g = gen_graph(600, 4, 17);
  IscSession s = IscSession::broadcast(g, 17);
  EXPECT_EQ(s.view().degree_bound(), 16u);
  const auto rounds = sweep_rounds(s);
  EXPECT_FALSE(verify_broadcast(g, rounds));
  EXPECT_FALSE(verify_isc(s.view(), rounds));
}
