#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "lca/coin_tape.hpp"
#include "lca/instance.hpp"

namespace lca {

/// Adjacency seen by the ISC oracle: either the graph itself or its square
/// (vertices at distance 1 or 2), the latter computed on the fly.
class NeighborView {
 public:
  static NeighborView direct(const Graph& g) { return NeighborView(g, false, g.max_degree()); }
  /// `degree_bound` defaults to Δ², the worst case for the square.
  static NeighborView square(const Graph& g, std::optional<unsigned> degree_bound = std::nullopt);

  const Graph& graph() const { return *graph_; }
  std::size_t size() const { return graph_->size(); }
  bool is_square() const { return square_; }
  unsigned degree_bound() const { return degree_bound_; }

  /// Replaces `out` with the sorted neighbors of v.
  void neighbors(VertexId v, std::vector<VertexId>& out) const;
  std::vector<VertexId> neighbors(VertexId v) const;

  /// Subgraph of the view induced by sorted `vertices`, in local ids.
  Graph induced(std::span<const VertexId> vertices) const;

 private:
  NeighborView(const Graph& g, bool square, unsigned bound) : graph_(&g), square_(square), degree_bound_(bound) {}

  const Graph* graph_;
  bool square_;
  unsigned degree_bound_;
};

/// Repeated greedy MIS extraction in ascending id order. Returns a 1-based set
/// index per vertex; uses at most max_degree + 1 sets.
std::vector<unsigned> greedy_isc(const Graph& g);

struct IscConfig {
  double cap_constant = 8.0;
  double rounds_factor = 20.0;
  std::optional<std::size_t> cap;
};

/**
 * Independent-set-cover oracle: returns the index of the class containing a
 * vertex. Phase 1 gives a vertex round i when it is the only chooser in its
 * closed neighborhood in round i; survivors get r + (greedy class within their
 * survivor component). Over the square view the result is a broadcast schedule.
 *
 * Query-order oblivious; single-threaded per session.
 */
class IscSession {
 public:
  IscSession(NeighborView view, std::uint64_t seed, IscConfig config = {});
  /// Oracle over the square of g, i.e. a broadcast-round oracle.
  static IscSession broadcast(const Graph& g, std::uint64_t seed, IscConfig config = {},
                              std::optional<unsigned> square_degree_bound = std::nullopt);

  /// Class index, or std::nullopt on FAIL (survivor component over the cap).
  std::optional<unsigned> round(VertexId v);

  /// Phase-1 round of v, or 0 if v survives all r rounds.
  unsigned phase1(VertexId v);

  unsigned rounds() const { return rounds_; }
  std::size_t cap() const { return cap_; }
  const NeighborView& view() const { return view_; }
  /// Upper bound on any returned round: r + d_view + 1.
  unsigned max_round() const { return rounds_ + view_.degree_bound() + 1; }

  std::uint64_t last_touched() const { return touched_; }
  std::size_t last_component_size() const { return last_component_; }
  std::size_t fail_count() const { return fails_; }
  std::size_t max_component_size() const { return max_component_; }
  void reset();

  /// Test hook: replaces the coin tape (e.g. with CoinTape::stub).
  void set_tape(const CoinTape& tape) { tape_ = tape; }

 private:
  struct Record {
    std::uint32_t generation = 0;
    std::int64_t phase1 = -1;  // -1 unknown, 0 survivor, else round
    std::uint32_t stamp = 0;
  };
  Record& record(VertexId v);

  NeighborView view_;
  CoinTape tape_;
  unsigned rounds_;
  std::uint64_t denominator_;
  std::size_t cap_;
  std::vector<Record> records_;
  std::uint32_t generation_ = 1;
  std::uint32_t query_stamp_ = 0;
  std::uint64_t touched_ = 0;
  std::unordered_map<VertexId, unsigned> phase2_;
  std::vector<VertexId> scratch_;
  std::size_t last_component_ = 0;
  std::size_t fails_ = 0;
  std::size_t max_component_ = 0;
};

}  // namespace lca
