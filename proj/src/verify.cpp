#include "lca/verify.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "lca/coin_tape.hpp"
#include "lca/random.hpp"

namespace lca {

std::string Violation::to_json() const {
  return nlohmann::json{{"kind", kind}, {"witness", witness}}.dump();
}

std::vector<std::uint8_t> SweepReport::bits() const {
  std::vector<std::uint8_t> out(answers.size(), 0);
  for (std::size_t i = 0; i < answers.size(); ++i) out[i] = answers[i].value_or(0) != 0;
  return out;
}

std::optional<Violation> verify_mis(const Graph& g, std::span<const std::uint8_t> in_set) {
  if (in_set.size() != g.size()) return Violation{"size_mismatch", {in_set.size(), g.size()}};
  for (auto [u, v] : g.edges()) {
    if (in_set[u] && in_set[v]) return Violation{"mis_not_independent", {u, v}};
  }
  for (VertexId v = 0; v < g.size(); ++v) {
    if (in_set[v]) continue;
    const auto nb = g.neighbors(v);
    if (std::none_of(nb.begin(), nb.end(), [&](VertexId u) { return in_set[u] != 0; })) {
      return Violation{"mis_not_maximal", {v}};
    }
  }
  return std::nullopt;
}

std::optional<Violation> verify_broadcast(const Graph& g, const Answers& rounds) {
  if (rounds.size() != g.size()) return Violation{"size_mismatch", {rounds.size(), g.size()}};
  for (VertexId v = 0; v < g.size(); ++v) {
    if (!rounds[v]) return Violation{"broadcast_missing", {v}};
  }
  for (auto [u, v] : g.edges()) {
    if (*rounds[u] == *rounds[v]) return Violation{"broadcast_edge_collision", {u, v}};
  }
  for (VertexId v = 0; v < g.size(); ++v) {
    std::map<std::int64_t, VertexId> heard;
    for (VertexId u : g.neighbors(v)) {
      auto [it, fresh] = heard.emplace(*rounds[u], u);
      if (!fresh) return Violation{"broadcast_interference", {v, it->second, u}};
    }
  }
  return std::nullopt;
}

std::optional<Violation> verify_isc(const NeighborView& view, const Answers& classes) {
  if (classes.size() != view.size()) return Violation{"size_mismatch", {classes.size(), view.size()}};
  std::vector<VertexId> nb;
  for (VertexId v = 0; v < view.size(); ++v) {
    if (!classes[v]) return Violation{"isc_uncovered", {v}};
    view.neighbors(v, nb);
    for (VertexId u : nb) {
      if (u > v && classes[u] && *classes[u] == *classes[v]) return Violation{"isc_not_independent", {v, u}};
    }
  }
  return std::nullopt;
}

std::optional<Violation> verify_coloring(const Hypergraph& h, std::span<const std::uint8_t> colors) {
  if (colors.size() != h.vertex_count()) return Violation{"size_mismatch", {colors.size(), h.vertex_count()}};
  for (EdgeId e = 0; e < h.edge_count(); ++e) {
    const auto m = h.member(e);
    const bool mono = std::all_of(m.begin(), m.end(), [&](VertexId x) { return colors[x] == colors[m[0]]; });
    if (mono) return Violation{"monochromatic_edge", {e}};
  }
  return std::nullopt;
}

std::optional<Violation> verify_sat(const CnfFormula& f, std::span<const std::uint8_t> values) {
  if (values.size() != f.var_count()) return Violation{"size_mismatch", {values.size(), f.var_count()}};
  for (EdgeId c = 0; c < f.clause_count(); ++c) {
    bool sat = false;
    for (unsigned i = 0; i < f.width() && !sat; ++i) {
      const Literal lit = f.literal(c, i);
      sat = (values[lit.var] != 0) == lit.positive;
    }
    if (!sat) return Violation{"unsatisfied_clause", {c}};
  }
  return std::nullopt;
}

std::vector<std::vector<MisState>> global_luby(const Graph& g, std::uint64_t seed, unsigned rounds) {
  if (g.size() > 100000) throw std::invalid_argument("global_luby is limited to 100000 vertices");
  const CoinTape tape(seed, CoinStream::kMis);
  const std::uint64_t den = 2ull * std::max(g.max_degree(), 2u);
  std::vector<std::vector<MisState>> states(rounds + 1, std::vector<MisState>(g.size(), MisState::kBot));
  std::vector<std::uint8_t> chose(g.size());
  for (unsigned i = 1; i <= rounds; ++i) {
    const auto& prev = states[i - 1];
    auto& cur = states[i];
    for (VertexId v = 0; v < g.size(); ++v) chose[v] = prev[v] == MisState::kBot && tape.bernoulli(v, i, 0, 1, den);
    for (VertexId v = 0; v < g.size(); ++v) {
      if (prev[v] != MisState::kBot) {
        cur[v] = prev[v];
        continue;
      }
      const auto nb = g.neighbors(v);
      if (std::any_of(nb.begin(), nb.end(), [&](VertexId u) { return prev[u] == MisState::kSelected; })) {
        cur[v] = MisState::kDeleted;
      } else if (chose[v] && std::none_of(nb.begin(), nb.end(), [&](VertexId u) { return chose[u] != 0; })) {
        cur[v] = MisState::kSelected;
      }
    }
  }
  return states;
}

std::vector<VertexId> make_order(std::size_t n, std::optional<std::uint64_t> permutation_seed) {
  std::vector<VertexId> order(n);
  for (VertexId i = 0; i < n; ++i) order[i] = i;
  if (permutation_seed) {
    std::mt19937_64 rng(*permutation_seed);
    shuffle(order, rng);
  }
  return order;
}

namespace {

template <typename Query>
SweepReport run_sweep(std::size_t n, std::span<const VertexId> order, Query&& query) {
  using Clock = std::chrono::steady_clock;
  SweepReport report;
  report.answers.assign(n, std::nullopt);
  report.touched.assign(n, 0);
  report.micros.assign(n, 0.0);
  for (VertexId v : order) {
    const auto start = Clock::now();
    auto [answer, touched] = query(v);
    report.micros[v] = std::chrono::duration<double, std::micro>(Clock::now() - start).count();
    report.touched[v] = touched;
    report.answers[v] = answer;
    if (!answer) ++report.fail_count;
  }
  return report;
}

}  // namespace

SweepReport sweep_mis(const Graph& g, std::uint64_t seed, std::span<const VertexId> order, MisConfig config) {
  MisSession session(g, seed, config);
  auto report = run_sweep(g.size(), order, [&](VertexId v) {
    const MisAnswer a = session.query(v);
    std::optional<std::int64_t> out;
    if (a != MisAnswer::kFail) out = a == MisAnswer::kIn ? 1 : 0;
    return std::pair{out, session.last_touched()};
  });
  report.max_component = session.max_component_size();
  return report;
}

SweepReport sweep_isc(const NeighborView& view, std::uint64_t seed, std::span<const VertexId> order,
                      IscConfig config) {
  IscSession session(view, seed, config);
  auto report = run_sweep(view.size(), order, [&](VertexId v) {
    std::optional<std::int64_t> out;
    if (auto r = session.round(v)) out = *r;
    return std::pair{out, session.last_touched()};
  });
  report.max_component = session.max_component_size();
  return report;
}

namespace {

SweepReport sweep_lll(LllSession& session, std::size_t n, std::span<const VertexId> order) {
  auto report = run_sweep(n, order, [&](VertexId x) {
    std::optional<std::int64_t> out;
    if (auto b = session.query(x)) out = *b ? 1 : 0;
    return std::pair{out, session.last_touched()};
  });
  report.lll = session.stats();
  report.max_component = session.stats().max_phase2_component;
  return report;
}

}  // namespace

SweepReport sweep_coloring(const Hypergraph& h, std::uint64_t seed, std::span<const VertexId> order,
                           LllConfig config) {
  ColoringSession session(h, seed, config);
  return sweep_lll(session.engine(), h.vertex_count(), order);
}

SweepReport sweep_cnf(const CnfFormula& f, std::uint64_t seed, std::span<const VertexId> order, LllConfig config) {
  CnfSession session(f, seed, config);
  return sweep_lll(session.engine(), f.var_count(), order);
}

std::vector<std::size_t> survivor_component_sizes(const Graph& g, std::uint64_t seed, MisConfig config) {
  MisSession session(g, seed, config);
  std::vector<std::uint8_t> seen(g.size(), 0);
  std::vector<std::size_t> sizes;
  std::vector<VertexId> stack;
  for (VertexId s = 0; s < g.size(); ++s) {
    if (seen[s] || !session.is_survivor(s)) continue;
    std::size_t size = 0;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      ++size;
      for (VertexId u : g.neighbors(v)) {
        if (!seen[u] && session.is_survivor(u)) {
          seen[u] = 1;
          stack.push_back(u);
        }
      }
    }
    sizes.push_back(size);
  }
  return sizes;
}

}  // namespace lca
