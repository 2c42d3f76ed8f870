#include "lca/mis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lca/explore.hpp"

namespace lca {

unsigned rounds_for(unsigned d, double factor) {
  const double eff = std::max(d, 2u);
  return static_cast<unsigned>(std::ceil(factor * eff * std::log2(eff)));
}

std::vector<std::uint8_t> greedy_mis(const Graph& g) {
  std::vector<std::uint8_t> in(g.size(), 0);
  for (VertexId v = 0; v < g.size(); ++v) {
    in[v] = std::none_of(g.neighbors(v).begin(), g.neighbors(v).end(),
                         [&](VertexId u) { return u < v && in[u]; });
  }
  return in;
}

namespace {

std::size_t default_cap(std::size_t n, unsigned d, double c) {
  const double eff = std::max(d, 2u);
  const double cap = std::ceil(c * eff * eff * eff * std::log2(static_cast<double>(n) + 1.0));
  return std::max<std::size_t>(1, static_cast<std::size_t>(cap));
}

}  // namespace

MisSession::MisSession(const Graph& graph, std::uint64_t seed, MisConfig config)
    : graph_(graph),
      tape_(seed, CoinStream::kMis),
      extra_tape_(seed, CoinStream::kMisBExtra),
      rounds_(rounds_for(graph.max_degree(), config.rounds_factor)),
      denominator_(2ull * std::max(graph.max_degree(), 2u)),
      cap_(config.cap.value_or(default_cap(graph.size(), graph.max_degree(), config.cap_constant))),
      records_(graph.size()) {}

void MisSession::reset() {
  ++generation_;
  phase2_.clear();
}

MisSession::Record& MisSession::record(VertexId v) {
  Record& rec = records_[v];
  if (rec.generation != generation_) {
    rec = Record{};
    rec.generation = generation_;
  }
  return rec;
}

void MisSession::touch(Record& rec, unsigned round) {
  if (rec.stamp != query_stamp_) {
    rec.stamp = query_stamp_;
    rec.touched_through = 0;
  }
  if (round > rec.touched_through) {
    touched_ += round - rec.touched_through;
    rec.touched_through = round;
  }
}

bool MisSession::coin(VertexId v, unsigned round) const {
  return tape_.bernoulli(v, round, 0, 1, denominator_);
}

MisState MisSession::state(VertexId v, unsigned round) {
  Record& rec = record(v);
  touch(rec, round);
  if (rec.decided_at != 0 && rec.decided_at <= round) return rec.decision;
  while (rec.through < round) {
    const unsigned next = rec.through + 1;
    const MisState s = step(v, next);
    rec.through = next;
    if (s != MisState::kBot) {
      rec.decided_at = next;
      rec.decision = s;
      return s;
    }
  }
  return MisState::kBot;
}

// One round for a vertex undecided after round - 1. A neighbor selected in
// the previous round deletes v only now, one round late.
MisState MisSession::step(VertexId v, unsigned round) {
  const auto nbrs = graph_.neighbors(v);
  for (VertexId u : nbrs) {
    if (state(u, round - 1) == MisState::kSelected) return MisState::kDeleted;
  }
  if (!coin(v, round)) return MisState::kBot;
  for (VertexId u : nbrs) {
    if (state(u, round - 1) == MisState::kBot && coin(u, round)) return MisState::kBot;
  }
  return MisState::kSelected;
}

bool MisSession::b_coin(VertexId v, unsigned round) {
  if (state(v, round - 1) == MisState::kBot) return coin(v, round);
  return extra_tape_.bernoulli(v, round, 0, 1, denominator_);
}

PickState MisSession::b_state(VertexId v, unsigned round) {
  Record& rec = record(v);
  if (rec.b_picked_at != 0 && rec.b_picked_at <= round) return PickState::kPicked;
  while (rec.b_through < round) {
    const unsigned next = rec.b_through + 1;
    bool picked = b_coin(v, next);
    for (VertexId u : graph_.neighbors(v)) {
      if (!picked) break;
      picked = !b_coin(u, next);
    }
    rec.b_through = next;
    if (picked) {
      rec.b_picked_at = next;
      return PickState::kPicked;
    }
  }
  return PickState::kBot;
}

bool MisSession::is_survivor(VertexId v) {
  {
    Record& rec = record(v);
    if (rec.survivor >= 0) {
      touch(rec, rounds_);
      return rec.survivor != 0;
    }
  }
  bool alive = state(v, rounds_) == MisState::kBot;
  for (VertexId u : graph_.neighbors(v)) {
    if (!alive) break;
    alive = state(u, rounds_) != MisState::kSelected;
  }
  record(v).survivor = alive ? 1 : 0;
  return alive;
}

MisAnswer MisSession::query(VertexId v) {
  ++query_stamp_;
  touched_ = 0;
  last_component_ = 0;
  switch (state(v, rounds_)) {
    case MisState::kSelected:
      return MisAnswer::kIn;
    case MisState::kDeleted:
      return MisAnswer::kOut;
    case MisState::kBot:
      break;
  }
  // Undecided but next to a vertex selected in the final round: deleted.
  if (!is_survivor(v)) return MisAnswer::kOut;
  if (auto it = phase2_.find(v); it != phase2_.end()) {
    return it->second ? MisAnswer::kIn : MisAnswer::kOut;
  }
  const VertexId start[] = {v};
  auto component = explore_component(
      start, [&](std::uint32_t u) { return is_survivor(u); },
      [&](std::uint32_t u, auto&& visit) {
        for (VertexId w : graph_.neighbors(u)) visit(w);
      },
      cap_);
  if (!component) {
    ++fails_;
    return MisAnswer::kFail;
  }
  const auto& members = component->entities;
  last_component_ = members.size();
  max_component_ = std::max(max_component_, members.size());
  const auto in = greedy_mis(graph_.induced(members));
  for (std::size_t i = 0; i < members.size(); ++i) phase2_[members[i]] = in[i] != 0;
  return phase2_.at(v) ? MisAnswer::kIn : MisAnswer::kOut;
}

}  // namespace lca
