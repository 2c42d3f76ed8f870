#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lca/instance.hpp"
#include "lca/isc.hpp"
#include "lca/lll.hpp"
#include "lca/mis.hpp"

namespace lca {

/// A failed definition check: what broke and which ids witness it.
struct Violation {
  std::string kind;
  std::vector<std::uint64_t> witness;

  /// One-line JSON object, e.g. {"kind":"mis_not_independent","witness":[0,1]}.
  std::string to_json() const;
};

/// Per-entity answer of a sweep; std::nullopt marks FAIL.
using Answers = std::vector<std::optional<std::int64_t>>;

std::optional<Violation> verify_mis(const Graph& g, std::span<const std::uint8_t> in_set);
/// Every vertex has a round; no vertex hears two neighbors in one round; the
/// endpoints of an edge use different rounds.
std::optional<Violation> verify_broadcast(const Graph& g, const Answers& rounds);
/// Classes cover the view and each class is independent in it.
std::optional<Violation> verify_isc(const NeighborView& view, const Answers& classes);
/// colors: 0 red, 1 blue. Flags a monochromatic hyperedge.
std::optional<Violation> verify_coloring(const Hypergraph& h, std::span<const std::uint8_t> colors);
std::optional<Violation> verify_sat(const CnfFormula& f, std::span<const std::uint8_t> values);

/// Whole-graph, round-synchronous Luby simulation on the MIS coin stream.
/// Result[i][v] is v's state after round i, for i in 0..rounds. Throws
/// std::invalid_argument for graphs with more than 100000 vertices.
std::vector<std::vector<MisState>> global_luby(const Graph& g, std::uint64_t seed, unsigned rounds);

/// Ascending ids without a seed, else a uniformly random permutation.
std::vector<VertexId> make_order(std::size_t n, std::optional<std::uint64_t> permutation_seed = std::nullopt);

struct SweepReport {
  Answers answers;
  std::size_t fail_count = 0;
  std::size_t max_component = 0;
  std::vector<std::uint64_t> touched;  // per entity id
  std::vector<double> micros;          // per entity id
  std::optional<LllStats> lll;

  std::size_t answered() const { return answers.size() - fail_count; }
  /// Answers as 0/1 flags, FAIL entries mapped to 0.
  std::vector<std::uint8_t> bits() const;
};

SweepReport sweep_mis(const Graph& g, std::uint64_t seed, std::span<const VertexId> order, MisConfig config = {});
SweepReport sweep_isc(const NeighborView& view, std::uint64_t seed, std::span<const VertexId> order,
                      IscConfig config = {});
SweepReport sweep_coloring(const Hypergraph& h, std::uint64_t seed, std::span<const VertexId> order,
                           LllConfig config = {});
SweepReport sweep_cnf(const CnfFormula& f, std::uint64_t seed, std::span<const VertexId> order,
                      LllConfig config = {});

/// Sizes of all survivor components after Phase 1, without any cap.
std::vector<std::size_t> survivor_component_sizes(const Graph& g, std::uint64_t seed, MisConfig config = {});

}  // namespace lca
