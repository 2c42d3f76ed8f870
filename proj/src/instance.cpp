#include "lca/instance.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "lca/random.hpp"

namespace lca {

ParseError::ParseError(std::size_t line, const std::string& what)
    : InstanceError("line " + std::to_string(line) + ": " + what), line_(line) {}

// Graph ----------------------------------------------------------------------

Graph Graph::from_edges(std::size_t n, std::span<const std::pair<VertexId, VertexId>> edges) {
  Graph g;
  std::vector<std::uint32_t> degree(n, 0);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw InstanceError("edge endpoint out of range");
    if (u == v) throw InstanceError("self-loop at vertex " + std::to_string(u));
    ++degree[u];
    ++degree[v];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
  g.targets_.resize(g.offsets_[n]);
  std::vector<std::uint32_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (auto [u, v] : edges) {
    g.targets_[fill[u]++] = v;
    g.targets_[fill[v]++] = u;
  }
  for (std::size_t v = 0; v < n; ++v) {
    auto first = g.targets_.begin() + g.offsets_[v];
    auto last = g.targets_.begin() + g.offsets_[v + 1];
    std::sort(first, last);
    if (std::adjacent_find(first, last) != last) {
      throw InstanceError("duplicate edge at vertex " + std::to_string(v));
    }
    g.max_degree_ = std::max(g.max_degree_, degree[v]);
  }
  return g;
}

bool Graph::adjacent(VertexId u, VertexId v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::pair<VertexId, VertexId>> Graph::edges() const {
  std::vector<std::pair<VertexId, VertexId>> out;
  out.reserve(edge_count());
  for (VertexId u = 0; u < size(); ++u) {
    for (VertexId v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph Graph::induced(std::span<const VertexId> vertices) const {
  std::vector<std::pair<VertexId, VertexId>> local;
  for (VertexId i = 0; i < vertices.size(); ++i) {
    for (VertexId w : neighbors(vertices[i])) {
      if (w <= vertices[i]) continue;
      auto it = std::lower_bound(vertices.begin(), vertices.end(), w);
      if (it != vertices.end() && *it == w) {
        local.emplace_back(i, static_cast<VertexId>(it - vertices.begin()));
      }
    }
  }
  return from_edges(vertices.size(), local);
}

std::vector<VertexId> square_neighbors(const Graph& g, VertexId v) {
  std::vector<VertexId> out;
  for (VertexId u : g.neighbors(v)) {
    out.push_back(u);
    for (VertexId w : g.neighbors(u)) {
      if (w != v) out.push_back(w);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Incidence --------------------------------------------------------------------

Incidence::Incidence(std::size_t points, unsigned width, std::vector<VertexId> flat)
    : width_(width), members_(std::move(flat)) {
  if (width_ == 0 && !members_.empty()) throw InstanceError("zero-width members");
  if (width_ != 0 && members_.size() % width_ != 0) {
    throw InstanceError("member list is not a multiple of the width");
  }
  const std::size_t count = num_members();
  std::vector<std::uint32_t> degree(points, 0);
  std::vector<VertexId> scratch;
  for (EdgeId e = 0; e < count; ++e) {
    auto m = member(e);
    scratch.assign(m.begin(), m.end());
    std::sort(scratch.begin(), scratch.end());
    if (std::adjacent_find(scratch.begin(), scratch.end()) != scratch.end()) {
      throw InstanceError("member " + std::to_string(e) + " repeats a point");
    }
    for (VertexId x : m) {
      if (x >= points) throw InstanceError("member " + std::to_string(e) + " point out of range");
      ++degree[x];
    }
  }
  point_offsets_.assign(points + 1, 0);
  for (std::size_t x = 0; x < points; ++x) point_offsets_[x + 1] = point_offsets_[x] + degree[x];
  point_members_.resize(point_offsets_[points]);
  std::vector<std::uint32_t> fill(point_offsets_.begin(), point_offsets_.end() - 1);
  for (EdgeId e = 0; e < count; ++e) {
    for (VertexId x : member(e)) point_members_[fill[x]++] = e;
  }

  dep_offsets_.assign(count + 1, 0);
  std::vector<EdgeId> around;
  for (EdgeId e = 0; e < count; ++e) {
    around.clear();
    for (VertexId x : member(e)) {
      for (EdgeId f : members_of(x)) {
        if (f != e) around.push_back(f);
      }
    }
    std::sort(around.begin(), around.end());
    around.erase(std::unique(around.begin(), around.end()), around.end());
    dependents_.insert(dependents_.end(), around.begin(), around.end());
    dep_offsets_[e + 1] = static_cast<std::uint32_t>(dependents_.size());
    max_intersections_ = std::max<unsigned>(max_intersections_, around.size());
  }
}

namespace {

std::vector<VertexId> vars_of(const std::vector<Literal>& flat) {
  std::vector<VertexId> out;
  out.reserve(flat.size());
  for (const Literal& l : flat) out.push_back(l.var);
  return out;
}

}  // namespace

CnfFormula::CnfFormula(std::size_t vars, unsigned k, const std::vector<Literal>& flat)
    : Incidence(vars, k, vars_of(flat)) {
  polarity_.reserve(flat.size());
  for (const Literal& l : flat) polarity_.push_back(l.positive ? 1 : 0);
}

// Parsers --------------------------------------------------------------------

namespace {

/// Line reader that skips blank lines and tracks 1-based line numbers.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::istringstream& fields) {
    std::string text;
    while (std::getline(in_, text)) {
      ++line_;
      if (!text.empty() && text.back() == '\r') text.pop_back();
      if (text.find_first_not_of(" \t") == std::string::npos) continue;
      fields.clear();
      fields.str(text);
      return true;
    }
    return false;
  }
  std::size_t line() const { return line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

bool at_end(std::istringstream& fields) {
  fields >> std::ws;
  return fields.eof();
}

}  // namespace

Graph parse_graph(std::istream& in) {
  LineReader reader(in);
  std::istringstream fields;
  if (!reader.next(fields)) throw ParseError(reader.line() + 1, "missing header");
  long long n = -1, m = -1, d = -1;
  if (!(fields >> n >> m >> d) || !at_end(fields) || n < 0 || m < 0 || d < 0) {
    throw ParseError(reader.line(), "expected header \"n m d\"");
  }
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(static_cast<std::size_t>(m));
  std::vector<long long> degree(static_cast<std::size_t>(n), 0);
  std::unordered_set<std::uint64_t> seen;
  for (long long i = 0; i < m; ++i) {
    if (!reader.next(fields)) throw ParseError(reader.line() + 1, "expected " + std::to_string(m) + " edges");
    long long u = -1, v = -1;
    if (!(fields >> u >> v) || !at_end(fields)) throw ParseError(reader.line(), "expected \"u v\"");
    if (u < 0 || v >= n || u >= v) throw ParseError(reader.line(), "edge must satisfy 0 <= u < v < n");
    if (!seen.insert(static_cast<std::uint64_t>(u) * static_cast<std::uint64_t>(n) + v).second) {
      throw ParseError(reader.line(), "duplicate edge");
    }
    if (++degree[u] > d || ++degree[v] > d) {
      throw ParseError(reader.line(), "degree exceeds declared maximum " + std::to_string(d));
    }
    edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
  }
  if (reader.next(fields)) throw ParseError(reader.line(), "trailing content after edge list");
  return Graph::from_edges(static_cast<std::size_t>(n), edges);
}

Hypergraph parse_hypergraph(std::istream& in) {
  LineReader reader(in);
  std::istringstream fields;
  if (!reader.next(fields)) throw ParseError(reader.line() + 1, "missing header");
  long long m = -1, count = -1, k = -1, d = -1;
  if (!(fields >> m >> count >> k >> d) || !at_end(fields) || m < 0 || count < 0 || k < 1 || d < 0) {
    throw ParseError(reader.line(), "expected header \"m N k d\"");
  }
  std::vector<VertexId> flat;
  std::vector<std::size_t> lines;
  for (long long e = 0; e < count; ++e) {
    if (!reader.next(fields)) throw ParseError(reader.line() + 1, "expected " + std::to_string(count) + " hyperedges");
    lines.push_back(reader.line());
    std::vector<VertexId> row;
    long long x;
    while (fields >> x) {
      if (x < 0 || x >= m) throw ParseError(reader.line(), "vertex id out of range");
      row.push_back(static_cast<VertexId>(x));
    }
    if (!fields.eof()) throw ParseError(reader.line(), "non-numeric token");
    if (row.size() != static_cast<std::size_t>(k)) {
      throw ParseError(reader.line(), "hyperedge has " + std::to_string(row.size()) + " vertices, expected " + std::to_string(k));
    }
    auto sorted = row;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ParseError(reader.line(), "repeated vertex in hyperedge");
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  if (reader.next(fields)) throw ParseError(reader.line(), "trailing content after hyperedges");
  Hypergraph h(static_cast<std::size_t>(m), static_cast<unsigned>(k), std::move(flat));
  for (EdgeId e = 0; e < h.edge_count(); ++e) {
    if (h.dependents(e).size() > static_cast<std::size_t>(d)) {
      throw ParseError(lines[e], "hyperedge intersects more than " + std::to_string(d) + " others");
    }
  }
  return h;
}

CnfFormula parse_cnf(std::istream& in) {
  std::string text;
  std::size_t line = 0;
  long long vars = -1, clauses = -1;
  std::vector<Literal> flat;
  std::vector<Literal> current;
  std::size_t width = 0;
  std::size_t seen_clauses = 0;
  bool done = false;
  while (!done && std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    std::istringstream fields(text);
    std::string first;
    if (!(fields >> first)) continue;
    if (first == "c") continue;
    if (first == "%") break;
    if (first == "p") {
      std::string fmt;
      if (vars >= 0 || !(fields >> fmt >> vars >> clauses) || fmt != "cnf" || !at_end(fields) || vars < 0 || clauses < 0) {
        throw ParseError(line, "expected \"p cnf <vars> <clauses>\"");
      }
      continue;
    }
    if (vars < 0) throw ParseError(line, "clause before problem line");
    fields.clear();
    fields.str(text);
    long long lit;
    while (fields >> lit) {
      if (lit == 0) {
        if (current.empty()) throw ParseError(line, "empty clause");
        if (width == 0) width = current.size();
        if (current.size() != width) {
          throw ParseError(line, "clause width " + std::to_string(current.size()) + " differs from " + std::to_string(width));
        }
        flat.insert(flat.end(), current.begin(), current.end());
        current.clear();
        if (++seen_clauses == static_cast<std::size_t>(clauses)) done = true;
        continue;
      }
      const long long var = lit < 0 ? -lit : lit;
      if (var > vars) throw ParseError(line, "variable " + std::to_string(var) + " out of range");
      const auto id = static_cast<VertexId>(var - 1);
      for (const Literal& l : current) {
        if (l.var == id) throw ParseError(line, "duplicate variable " + std::to_string(var) + " in clause");
      }
      current.push_back({id, lit > 0});
    }
    if (!fields.eof()) throw ParseError(line, "non-numeric token");
  }
  if (vars < 0) throw ParseError(line + 1, "missing problem line");
  if (!current.empty()) throw ParseError(line, "unterminated clause");
  if (seen_clauses != static_cast<std::size_t>(clauses)) {
    throw ParseError(line, "expected " + std::to_string(clauses) + " clauses, found " + std::to_string(seen_clauses));
  }
  return CnfFormula(static_cast<std::size_t>(vars), static_cast<unsigned>(width), flat);
}

void write_graph(std::ostream& out, const Graph& g) {
  out << g.size() << ' ' << g.edge_count() << ' ' << g.max_degree() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

void write_hypergraph(std::ostream& out, const Hypergraph& h) {
  out << h.vertex_count() << ' ' << h.edge_count() << ' ' << h.width() << ' ' << h.max_intersections() << '\n';
  for (EdgeId e = 0; e < h.edge_count(); ++e) {
    const char* sep = "";
    for (VertexId x : h.member(e)) {
      out << sep << x;
      sep = " ";
    }
    out << '\n';
  }
}

void write_cnf(std::ostream& out, const CnfFormula& f) {
  out << "p cnf " << f.var_count() << ' ' << f.clause_count() << '\n';
  for (EdgeId c = 0; c < f.clause_count(); ++c) {
    for (unsigned i = 0; i < f.width(); ++i) {
      const Literal l = f.literal(c, i);
      out << (l.positive ? "" : "-") << (l.var + 1) << ' ';
    }
    out << "0\n";
  }
}

// Generators -------------------------------------------------------------------

Graph gen_graph(std::size_t n, unsigned d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t target = n * d / 2;
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::unordered_set<std::uint64_t> present;
  std::vector<unsigned> degree(n, 0);
  std::vector<VertexId> open;
  if (d > 0) {
    open.resize(n);
    for (VertexId v = 0; v < n; ++v) open[v] = v;
  }
  // Proposals are drawn among vertices with spare degree; stop once the
  // remaining pool can only produce loops or repeats.
  std::size_t misses = 0;
  const std::size_t miss_budget = 100 + 10 * static_cast<std::size_t>(d) * d;
  while (edges.size() < target && open.size() >= 2 && misses < miss_budget) {
    const std::size_t i = uniform_below(rng, open.size());
    const std::size_t j = uniform_below(rng, open.size());
    VertexId u = open[i], v = open[j];
    if (u > v) std::swap(u, v);
    const std::uint64_t key = static_cast<std::uint64_t>(u) * n + v;
    if (u == v || present.count(key)) {
      ++misses;
      continue;
    }
    misses = 0;
    present.insert(key);
    edges.emplace_back(u, v);
    ++degree[u];
    ++degree[v];
    // Remove saturated endpoints, higher index first so the lower stays valid.
    for (std::size_t idx : {std::max(i, j), std::min(i, j)}) {
      if (degree[open[idx]] == d) {
        open[idx] = open.back();
        open.pop_back();
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  return Graph::from_edges(n, edges);
}

namespace {

// Candidates are drawn from the points that no saturated member touches; any
// candidate using another point would be rejected anyway, so this is uniform
// proposal with rejection minus the proposals that are certain to fail.
std::vector<VertexId> gen_members(std::size_t m, std::size_t count, unsigned k, unsigned d,
                                  std::mt19937_64& rng, std::size_t budget) {
  if (k == 0 || m < k) throw GenerationError("need at least k points to build a k-uniform instance");
  if (budget == 0) budget = 100 * std::max<std::size_t>(count, 1);
  std::vector<VertexId> flat;
  flat.reserve(count * k);
  std::vector<std::vector<EdgeId>> at_point(m);
  std::vector<unsigned> hits;  // per accepted member: intersections so far
  std::vector<VertexId> pool(m);
  std::vector<std::size_t> slot(m);
  for (VertexId x = 0; x < m; ++x) pool[x] = slot[x] = x;
  constexpr std::size_t kGone = ~std::size_t{0};
  auto block = [&](EdgeId f) {
    for (VertexId x : std::span<const VertexId>(flat.data() + std::size_t{f} * k, k)) {
      if (slot[x] == kGone) continue;
      const VertexId last = pool.back();
      pool[slot[x]] = last;
      slot[last] = slot[x];
      pool.pop_back();
      slot[x] = kGone;
    }
  };
  std::vector<VertexId> candidate;
  std::vector<EdgeId> meets;
  std::size_t proposals = 0;
  while (hits.size() < count) {
    if (proposals++ >= budget || pool.size() < k) {
      throw GenerationError("rejection budget exhausted after " + std::to_string(hits.size()) + " of " +
                            std::to_string(count) + " members");
    }
    candidate.clear();
    while (candidate.size() < k) {
      const VertexId x = pool[uniform_below(rng, pool.size())];
      if (std::find(candidate.begin(), candidate.end(), x) == candidate.end()) candidate.push_back(x);
    }
    std::sort(candidate.begin(), candidate.end());
    meets.clear();
    for (VertexId x : candidate) meets.insert(meets.end(), at_point[x].begin(), at_point[x].end());
    std::sort(meets.begin(), meets.end());
    meets.erase(std::unique(meets.begin(), meets.end()), meets.end());
    if (meets.size() > d) continue;
    if (std::any_of(meets.begin(), meets.end(), [&](EdgeId f) { return hits[f] >= d; })) continue;
    const auto id = static_cast<EdgeId>(hits.size());
    hits.push_back(static_cast<unsigned>(meets.size()));
    for (VertexId x : candidate) at_point[x].push_back(id);
    flat.insert(flat.end(), candidate.begin(), candidate.end());
    for (EdgeId f : meets) {
      if (++hits[f] >= d) block(f);
    }
    if (hits[id] >= d) block(id);
  }
  return flat;
}

}  // namespace

Hypergraph gen_hypergraph(std::size_t m, std::size_t edges, unsigned k, unsigned d, std::uint64_t seed,
                          std::size_t budget) {
  std::mt19937_64 rng(seed);
  return Hypergraph(m, k, gen_members(m, edges, k, d, rng, budget));
}

CnfFormula gen_cnf(std::size_t vars, std::size_t clauses, unsigned k, unsigned d, std::uint64_t seed,
                   std::size_t budget) {
  std::mt19937_64 rng(seed);
  auto members = gen_members(vars, clauses, k, d, rng, budget);
  std::vector<Literal> flat;
  flat.reserve(members.size());
  for (VertexId x : members) flat.push_back({x, (rng() >> 63) != 0});
  return CnfFormula(vars, k, flat);
}

}  // namespace lca
