#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lca {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

/// Raised when an instance violates its structural invariants.
class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the text parsers; carries the 1-based offending line.
class ParseError : public InstanceError {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Raised when a rejection-sampling generator exhausts its proposal budget.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Bounded-degree undirected simple graph in compressed adjacency form.
 * Neighbor lists are sorted ascending; max_degree() is the true maximum.
 */
class Graph {
 public:
  Graph() = default;

  /// Builds from an undirected edge list. Throws InstanceError on self-loops,
  /// duplicate edges, or out-of-range endpoints.
  static Graph from_edges(std::size_t n,
                          std::span<const std::pair<VertexId, VertexId>> edges);

  std::size_t size() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return targets_.size() / 2; }
  unsigned max_degree() const { return max_degree_; }
  unsigned degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  bool adjacent(VertexId u, VertexId v) const;

  /// Edges as (u, v) pairs with u < v, in ascending order.
  std::vector<std::pair<VertexId, VertexId>> edges() const;

  /// Subgraph induced by `vertices` (must be sorted ascending). Local id i
  /// corresponds to vertices[i].
  Graph induced(std::span<const VertexId> vertices) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::uint32_t> offsets_;
  std::vector<VertexId> targets_;
  unsigned max_degree_ = 0;
};

/**
 * Uniform set system shared by hypergraphs and k-CNF formulas: N members of
 * width k over m points, with the point->member index and the member
 * dependency graph (members sharing a point) precomputed.
 */
class Incidence {
 public:
  std::size_t num_points() const { return point_offsets_.empty() ? 0 : point_offsets_.size() - 1; }
  std::size_t num_members() const { return width_ == 0 ? 0 : members_.size() / width_; }
  unsigned width() const { return width_; }
  /// Maximum number of other members any one member intersects.
  unsigned max_intersections() const { return max_intersections_; }

  std::span<const VertexId> member(EdgeId e) const {
    return {members_.data() + std::size_t{e} * width_, width_};
  }
  std::span<const EdgeId> members_of(VertexId x) const {
    return {point_members_.data() + point_offsets_[x],
            point_members_.data() + point_offsets_[x + 1]};
  }
  /// Members intersecting e (excluding e), ascending.
  std::span<const EdgeId> dependents(EdgeId e) const {
    return {dependents_.data() + dep_offsets_[e], dependents_.data() + dep_offsets_[e + 1]};
  }

  friend bool operator==(const Incidence&, const Incidence&) = default;

 protected:
  Incidence() = default;
  /// `flat` holds N·k point ids; throws InstanceError on a repeated point
  /// within a member or an out-of-range id.
  Incidence(std::size_t points, unsigned width, std::vector<VertexId> flat);

 private:
  unsigned width_ = 0;
  unsigned max_intersections_ = 0;
  std::vector<VertexId> members_;
  std::vector<std::uint32_t> point_offsets_;
  std::vector<EdgeId> point_members_;
  std::vector<std::uint32_t> dep_offsets_;
  std::vector<EdgeId> dependents_;
};

/// k-uniform hypergraph; d = max_intersections().
class Hypergraph : public Incidence {
 public:
  Hypergraph() = default;
  Hypergraph(std::size_t vertices, unsigned k, std::vector<VertexId> flat_edges)
      : Incidence(vertices, k, std::move(flat_edges)) {}

  std::size_t vertex_count() const { return num_points(); }
  std::size_t edge_count() const { return num_members(); }
};

struct Literal {
  VertexId var;
  bool positive;
  friend bool operator==(const Literal&, const Literal&) = default;
};

/// k-CNF with uniform clause width; d = max_intersections().
class CnfFormula : public Incidence {
 public:
  CnfFormula() = default;
  /// Clauses given as flat N·k literals.
  CnfFormula(std::size_t vars, unsigned k, const std::vector<Literal>& flat);

  std::size_t var_count() const { return num_points(); }
  std::size_t clause_count() const { return num_members(); }
  Literal literal(EdgeId clause, unsigned pos) const {
    return {member(clause)[pos], polarity_[std::size_t{clause} * width() + pos] != 0};
  }
  /// One byte per literal position: 1 positive, 0 negated.
  std::span<const std::uint8_t> polarities() const { return polarity_; }

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;

 private:
  std::vector<std::uint8_t> polarity_;
};

// Text formats -------------------------------------------------------------

/// "n m d" header then m lines "u v", 0 <= u < v < n.
Graph parse_graph(std::istream& in);
/// "m N k d" header then N lines of k vertex ids.
Hypergraph parse_hypergraph(std::istream& in);
/// DIMACS CNF.
CnfFormula parse_cnf(std::istream& in);

void write_graph(std::ostream& out, const Graph& g);
void write_hypergraph(std::ostream& out, const Hypergraph& h);
void write_cnf(std::ostream& out, const CnfFormula& f);

// Generators -------------------------------------------------------------

Graph gen_graph(std::size_t n, unsigned d, std::uint64_t seed);

/// Rejection-sampled k-uniform hypergraph where every edge meets at most d
/// others. `budget` = 0 means the default of 100·N proposals.
Hypergraph gen_hypergraph(std::size_t m, std::size_t edges, unsigned k, unsigned d,
                          std::uint64_t seed, std::size_t budget = 0);
CnfFormula gen_cnf(std::size_t vars, std::size_t clauses, unsigned k, unsigned d,
                   std::uint64_t seed, std::size_t budget = 0);

/// Sorted distinct vertices at distance 1 or 2 from v.
std::vector<VertexId> square_neighbors(const Graph& g, VertexId v);

}  // namespace lca
