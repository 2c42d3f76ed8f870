#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "lca/coin_tape.hpp"
#include "lca/instance.hpp"

namespace lca {

enum class MisState : std::uint8_t { kBot = 0, kSelected = 1, kDeleted = 2 };
enum class MisAnswer : std::uint8_t { kOut = 0, kIn = 1, kFail = 2 };
/// State of the analysis-only process in which picked vertices never delete
/// their neighbors.
enum class PickState : std::uint8_t { kBot = 0, kPicked = 1 };

/// ceil(factor · d · log2 d) with d clamped to at least 2.
unsigned rounds_for(unsigned d, double factor = 20.0);

/// Greedy MIS in ascending id order; returns one flag per vertex.
std::vector<std::uint8_t> greedy_mis(const Graph& g);

struct MisConfig {
  /// Constant c in the survivor-component cap ceil(c · d^3 · log2(n + 1)).
  double cap_constant = 8.0;
  /// Multiplier in the round count (see rounds_for).
  double rounds_factor = 20.0;
  /// Replaces the computed cap when set. Use std::numeric_limits<size_t>::max()
  /// to disable the cap.
  std::optional<std::size_t> cap;
};

/**
 * Point-query MIS oracle. Phase 1 evaluates Luby rounds recursively through a
 * write-once memo; a vertex still undecided after the last round has its
 * survivor component explored and solved greedily (Phase 2).
 *
 * Answers depend only on the graph and the seed, never on query order.
 * A session is single-threaded; distinct sessions may share the graph.
 */
class MisSession {
 public:
  MisSession(const Graph& graph, std::uint64_t seed, MisConfig config = {});

  MisAnswer query(VertexId v);

  /// Phase-1 state of v after `round` rounds (0 <= round <= rounds()).
  MisState state(VertexId v, unsigned round);
  /// State of the coupled pick-only process after `round` rounds.
  PickState b_state(VertexId v, unsigned round);
  /// Undecided after the last round and no neighbor selected in that round.
  bool is_survivor(VertexId v);

  unsigned rounds() const { return rounds_; }
  std::size_t cap() const { return cap_; }
  /// Coin denominator 2 · max(d, 2).
  std::uint64_t coin_denominator() const { return denominator_; }
  const Graph& graph() const { return graph_; }

  /// Distinct (vertex, round) states touched by the most recent query.
  std::uint64_t last_touched() const { return touched_; }
  /// Survivor component size of the most recent query (0 if Phase 2 did not run).
  std::size_t last_component_size() const { return last_component_; }
  std::size_t fail_count() const { return fails_; }
  std::size_t max_component_size() const { return max_component_; }

  /// Forgets all memoized state in O(1). Answers afterwards are unchanged.
  void reset();

  /// Round-i coin of v in the main process.
  bool coin(VertexId v, unsigned round) const;
  /// Round-i coin of v in the pick-only process: the main coin while v is
  /// undecided at round - 1, an independent extra coin afterwards.
  bool b_coin(VertexId v, unsigned round);

 private:
  struct Record {
    std::uint32_t generation = 0;
    std::uint32_t through = 0;     // states known for rounds <= through
    std::uint32_t decided_at = 0;  // 0 = undecided so far
    MisState decision = MisState::kBot;
    std::int8_t survivor = -1;
    std::uint32_t stamp = 0;             // query that last touched this record
    std::uint32_t touched_through = 0;  // highest round counted for that query
    std::uint32_t b_through = 0;
    std::uint32_t b_picked_at = 0;
  };

  Record& record(VertexId v);
  void touch(Record& rec, unsigned round);
  MisState step(VertexId v, unsigned round);

  const Graph& graph_;
  CoinTape tape_;
  CoinTape extra_tape_;
  unsigned rounds_;
  std::uint64_t denominator_;
  std::size_t cap_;
  std::vector<Record> records_;
  std::uint32_t generation_ = 1;
  std::uint32_t query_stamp_ = 0;
  std::uint64_t touched_ = 0;
  std::unordered_map<VertexId, bool> phase2_;
  std::size_t last_component_ = 0;
  std::size_t fails_ = 0;
  std::size_t max_component_ = 0;
};

}  // namespace lca
