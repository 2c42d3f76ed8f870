#include "lca/isc.hpp"

#include <algorithm>
#include <cmath>

#include "lca/explore.hpp"
#include "lca/mis.hpp"

namespace lca {

NeighborView NeighborView::square(const Graph& g, std::optional<unsigned> degree_bound) {
  const unsigned delta = g.max_degree();
  return NeighborView(g, true, degree_bound.value_or(delta * delta));
}

void NeighborView::neighbors(VertexId v, std::vector<VertexId>& out) const {
  if (square_) {
    out = square_neighbors(*graph_, v);
    return;
  }
  auto nb = graph_->neighbors(v);
  out.assign(nb.begin(), nb.end());
}

std::vector<VertexId> NeighborView::neighbors(VertexId v) const {
  std::vector<VertexId> out;
  neighbors(v, out);
  return out;
}

Graph NeighborView::induced(std::span<const VertexId> vertices) const {
  if (!square_) return graph_->induced(vertices);
  std::vector<std::pair<VertexId, VertexId>> local;
  std::vector<VertexId> nb;
  for (VertexId i = 0; i < vertices.size(); ++i) {
    neighbors(vertices[i], nb);
    for (VertexId w : nb) {
      if (w <= vertices[i]) continue;
      auto it = std::lower_bound(vertices.begin(), vertices.end(), w);
      if (it != vertices.end() && *it == w) local.emplace_back(i, static_cast<VertexId>(it - vertices.begin()));
    }
  }
  return Graph::from_edges(vertices.size(), local);
}

std::vector<unsigned> greedy_isc(const Graph& g) {
  std::vector<unsigned> index(g.size(), 0);
  std::size_t remaining = g.size();
  for (unsigned set = 1; remaining > 0; ++set) {
    for (VertexId v = 0; v < g.size(); ++v) {
      if (index[v] != 0) continue;
      const bool blocked = std::any_of(g.neighbors(v).begin(), g.neighbors(v).end(),
                                       [&](VertexId u) { return index[u] == set; });
      if (!blocked) {
        index[v] = set;
        --remaining;
      }
    }
  }
  return index;
}

namespace {

std::size_t default_cap(std::size_t n, unsigned d, double c) {
  const double eff = std::max(d, 2u);
  const double cap = std::ceil(c * eff * eff * eff * std::log2(static_cast<double>(n) + 1.0));
  return std::max<std::size_t>(1, static_cast<std::size_t>(cap));
}

}  // namespace

IscSession::IscSession(NeighborView view, std::uint64_t seed, IscConfig config)
    : view_(view),
      tape_(seed, CoinStream::kIsc),
      rounds_(rounds_for(view.degree_bound(), config.rounds_factor)),
      denominator_(2ull * std::max(view.degree_bound(), 2u)),
      cap_(config.cap.value_or(default_cap(view.size(), view.degree_bound(), config.cap_constant))),
      records_(view.size()) {}

IscSession IscSession::broadcast(const Graph& g, std::uint64_t seed, IscConfig config,
                                 std::optional<unsigned> square_degree_bound) {
  return IscSession(NeighborView::square(g, square_degree_bound), seed, config);
}

void IscSession::reset() {
  ++generation_;
  phase2_.clear();
}

IscSession::Record& IscSession::record(VertexId v) {
  Record& rec = records_[v];
  if (rec.generation != generation_) {
    rec = Record{};
    rec.generation = generation_;
  }
  if (rec.stamp != query_stamp_) {
    rec.stamp = query_stamp_;
    ++touched_;
  }
  return rec;
}

// Every neighbor flips its round-i coin whether or not it already holds a
// round; with a keyed tape that is simply the coin at (u, i).
unsigned IscSession::phase1(VertexId v) {
  Record& rec = record(v);
  if (rec.phase1 >= 0) return static_cast<unsigned>(rec.phase1);
  view_.neighbors(v, scratch_);
  rec.phase1 = 0;
  for (unsigned i = 1; i <= rounds_; ++i) {
    if (!tape_.bernoulli(v, i, 0, 1, denominator_)) continue;
    const bool contested = std::any_of(scratch_.begin(), scratch_.end(),
                                       [&](VertexId u) { return tape_.bernoulli(u, i, 0, 1, denominator_); });
    if (!contested) {
      rec.phase1 = i;
      break;
    }
  }
  return static_cast<unsigned>(rec.phase1);
}

std::optional<unsigned> IscSession::round(VertexId v) {
  ++query_stamp_;
  touched_ = 0;
  last_component_ = 0;
  if (const unsigned r1 = phase1(v); r1 != 0) return r1;
  if (auto it = phase2_.find(v); it != phase2_.end()) return rounds_ + it->second;

  const VertexId start[] = {v};
  std::vector<VertexId> nb;
  auto component = explore_component(
      start, [&](std::uint32_t u) { return phase1(u) == 0; },
      [&](std::uint32_t u, auto&& visit) {
        view_.neighbors(u, nb);
        for (VertexId w : nb) visit(w);
      },
      cap_);
  if (!component) {
    ++fails_;
    return std::nullopt;
  }
  const auto& members = component->entities;
  last_component_ = members.size();
  max_component_ = std::max(max_component_, members.size());
  const auto classes = greedy_isc(view_.induced(members));
  for (std::size_t i = 0; i < members.size(); ++i) phase2_[members[i]] = classes[i];
  return rounds_ + phase2_.at(v);
}

}  // namespace lca
