#include "lca/lll.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <unordered_set>

#include "lca/explore.hpp"

namespace lca {

namespace {

std::optional<LllParams> smallest_split(unsigned k, long double dangerous_bound, long double final_bound) {
  for (unsigned k1 = 1; k1 + 2 <= k; ++k1) {
    if (!(dangerous_bound < std::ldexp(1.0L, static_cast<int>(k1)))) continue;
    for (unsigned k2 = 1; k1 + k2 + 1 <= k; ++k2) {
      const unsigned k3 = k - k1 - k2;
      if (dangerous_bound < std::ldexp(1.0L, static_cast<int>(k2)) &&
          final_bound < std::ldexp(1.0L, static_cast<int>(k3))) {
        return LllParams{k1, k2, k3};
      }
    }
  }
  return std::nullopt;
}

long double growth_term(unsigned d) {
  const long double dd = d;
  return dd * (dd - 1) * (dd - 1) * (dd - 1) * (dd + 1);
}

}  // namespace

std::optional<LllParams> check_params(unsigned k, unsigned d) {
  return smallest_split(k, 16 * growth_term(d), 2 * std::numbers::e_v<long double> * (d + 1.0L));
}

std::optional<LllParams> check_params_cnf(unsigned k, unsigned d) {
  return smallest_split(k, 8 * growth_term(d), std::numbers::e_v<long double> * (d + 1.0L));
}

const char* to_string(VarState s) {
  switch (s) {
    case VarState::kFree: return "FREE";
    case VarState::kValue0: return "VALUE0";
    case VarState::kValue1: return "VALUE1";
    case VarState::kTrouble1: return "TROUBLE1";
    case VarState::kTrouble2: return "TROUBLE2";
  }
  return "?";
}

const char* to_string(EdgeState s) {
  switch (s) {
    case EdgeState::kInitial: return "INITIAL";
    case EdgeState::kSafe: return "SAFE";
    case EdgeState::kUnsafe1: return "UNSAFE1";
    case EdgeState::kUnsafe2: return "UNSAFE2";
    case EdgeState::kDangerous1: return "DANGEROUS1";
    case EdgeState::kDangerous2: return "DANGEROUS2";
  }
  return "?";
}

LllCaps lll_caps(std::size_t constraints, const LllConfig& config) {
  const double n = static_cast<double>(constraints);
  const double log_n = std::log2(n + 1.0);
  const double log_log = std::log2(n + 2.0);
  LllCaps caps;
  caps.phase2_cap = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(config.c1 * log_n)));
  caps.phase3_cap =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(config.c2 * std::log2(log_log + 1.0))));
  caps.retries =
      std::max(1u, static_cast<unsigned>(std::ceil(config.c3 * log_n / std::log2(log_log + 2.0))));
  return caps;
}

LllSession::LllSession(const Incidence& instance, Semantics semantics, std::span<const std::uint8_t> polarity,
                       std::uint64_t seed, LllConfig config)
    : instance_(instance),
      semantics_(semantics),
      polarity_(polarity),
      tape_(seed, semantics == Semantics::kColoring ? CoinStream::kColoring : CoinStream::kCnf),
      caps_(lll_caps(instance.num_members(), config)),
      vars_(instance.num_points(), VarState::kFree),
      edges_(instance.num_members()),
      epoch_of_(instance.num_members(), 0) {
  if (semantics_ == Semantics::kCnf && polarity_.size() != instance.num_members() * instance.width()) {
    throw std::invalid_argument("CNF semantics needs one polarity per literal");
  }
  if (config.params) {
    params_ = *config.params;
  } else {
    const auto found = semantics_ == Semantics::kColoring
                           ? check_params(instance.width(), instance.max_intersections())
                           : check_params_cnf(instance.width(), instance.max_intersections());
    if (!found) {
      throw InfeasibleParams("no (k1, k2, k3) split for k=" + std::to_string(instance.width()) +
                             ", d=" + std::to_string(instance.max_intersections()));
    }
    params_ = *found;
  }
  for (EdgeId e = 0; e < edges_.size(); ++e) edges_[e].free = static_cast<std::uint16_t>(instance.width());
}

std::optional<std::uint64_t> LllSession::accepted_epoch(EdgeId e) const {
  if (epoch_of_[e] == 0) return std::nullopt;
  return epoch_of_[e];
}

// Coloring: the color itself. CNF: whether the literal of x in e is true.
int LllSession::kind(EdgeId e, VertexId x, bool value) const {
  if (semantics_ == Semantics::kColoring) return value ? 1 : 0;
  const auto members = instance_.member(e);
  const auto pos = static_cast<std::size_t>(std::find(members.begin(), members.end(), x) - members.begin());
  const bool positive = polarity_[std::size_t{e} * instance_.width() + pos] != 0;
  return value == positive ? 1 : 0;
}

bool LllSession::satisfied(const EdgeRec& rec) const {
  if (semantics_ == Semantics::kColoring) return rec.count[0] > 0 && rec.count[1] > 0;
  return rec.count[1] > 0;
}

unsigned LllSession::violating(const EdgeRec& rec) const {
  if (semantics_ == Semantics::kColoring) return std::max(rec.count[0], rec.count[1]);
  return rec.count[0];
}

void LllSession::leave(VertexId x, EdgeRec& rec) const {
  switch (vars_[x]) {
    case VarState::kFree: --rec.free; break;
    case VarState::kTrouble1: --rec.trouble1; break;
    case VarState::kTrouble2: --rec.trouble2; break;
    default: break;
  }
}

void LllSession::assign(VertexId x, bool value) {
  for (EdgeId e : instance_.members_of(x)) {
    EdgeRec& rec = edges_[e];
    leave(x, rec);
    ++rec.count[kind(e, x, value)];
    ++touched_;
  }
  vars_[x] = value ? VarState::kValue1 : VarState::kValue0;
}

void LllSession::set_trouble(VertexId x, VarState level, std::vector<EdgeId>& recheck) {
  for (EdgeId e : instance_.members_of(x)) {
    EdgeRec& rec = edges_[e];
    leave(x, rec);
    if (level == VarState::kTrouble1) {
      ++rec.trouble1;
    } else {
      ++rec.trouble2;
    }
    recheck.push_back(e);
    ++touched_;
  }
  vars_[x] = level;
}

void LllSession::phase1_assign(VertexId x, bool value) {
  assign(x, value);
  const auto around = instance_.members_of(x);
  std::vector<EdgeId> recheck(around.begin(), around.end());
  for (EdgeId e : around) {
    EdgeRec& rec = edges_[e];
    if (rec.state != EdgeState::kInitial) continue;
    if (satisfied(rec)) {
      rec.state = EdgeState::kSafe;
    } else if (violating(rec) >= params_.k1) {
      rec.state = EdgeState::kDangerous1;
      ++stats_.dangerous1;
      for (VertexId y : instance_.member(e)) {
        if (vars_[y] == VarState::kFree) set_trouble(y, VarState::kTrouble1, recheck);
      }
    }
  }
  for (EdgeId e : recheck) {
    EdgeRec& rec = edges_[e];
    if (rec.state == EdgeState::kInitial && rec.free == 0) rec.state = EdgeState::kUnsafe1;
  }
}

void LllSession::phase2_assign(VertexId x, bool value) {
  assign(x, value);
  const auto around = instance_.members_of(x);
  std::vector<EdgeId> recheck(around.begin(), around.end());
  const unsigned threshold = params_.k1 + params_.k2;
  for (EdgeId e : around) {
    EdgeRec& rec = edges_[e];
    if (rec.state != EdgeState::kDangerous1 && rec.state != EdgeState::kUnsafe1) continue;
    if (satisfied(rec)) {
      rec.state = EdgeState::kSafe;
    } else if (violating(rec) >= threshold) {
      rec.state = EdgeState::kDangerous2;
      ++stats_.dangerous2;
      for (VertexId y : instance_.member(e)) {
        if (vars_[y] == VarState::kTrouble1) set_trouble(y, VarState::kTrouble2, recheck);
      }
    }
  }
  for (EdgeId e : recheck) {
    EdgeRec& rec = edges_[e];
    if ((rec.state == EdgeState::kDangerous1 || rec.state == EdgeState::kUnsafe1) && rec.trouble1 == 0 &&
        rec.free == 0) {
      rec.state = EdgeState::kUnsafe2;
    }
  }
}

namespace {

bool surviving1(EdgeState s) { return s == EdgeState::kDangerous1 || s == EdgeState::kUnsafe1; }
bool surviving2(EdgeState s) { return s == EdgeState::kDangerous2 || s == EdgeState::kUnsafe2; }

}  // namespace

// Returns false on FAIL.
bool LllSession::phase2(VertexId x) {
  // Grow the surviving-1 component around x, Phase-1 coloring every free
  // variable met on the way (ascending ids per expansion layer).
  std::vector<EdgeId> grown;
  std::unordered_set<EdgeId> grown_set;
  auto contains = [&](EdgeId e) { return grown_set.count(e) != 0; };
  std::vector<EdgeId> layer;
  for (EdgeId e : instance_.members_of(x)) {
    if (edges_[e].state != EdgeState::kSafe) {
      grown.push_back(e);
      grown_set.insert(e);
      layer.push_back(e);
    }
  }
  std::vector<VertexId> pending;
  std::size_t surviving = 0;
  while (!layer.empty()) {
    pending.clear();
    for (EdgeId e : layer) {
      for (VertexId y : instance_.member(e)) {
        if (vars_[y] == VarState::kFree) pending.push_back(y);
      }
    }
    std::sort(pending.begin(), pending.end());
    pending.erase(std::unique(pending.begin(), pending.end()), pending.end());
    for (VertexId y : pending) {
      if (vars_[y] != VarState::kFree) continue;
      // Variables whose grown constraints all turned safe are dropped.
      const auto around = instance_.members_of(y);
      const bool needed = std::any_of(around.begin(), around.end(), [&](EdgeId f) {
        return edges_[f].state != EdgeState::kSafe && contains(f);
      });
      if (needed) phase1_assign(y, tape_.color_coin(y, 0) == Color::kBlue);
    }
    surviving = static_cast<std::size_t>(
        std::count_if(grown.begin(), grown.end(), [&](EdgeId e) { return edges_[e].state != EdgeState::kSafe; }));
    if (surviving > caps_.phase2_cap) {
      ++stats_.phase2_cap_fails;
      ++stats_.fails;
      last_component_ = surviving;
      return false;
    }
    std::vector<EdgeId> next;
    for (EdgeId e : layer) {
      if (edges_[e].state == EdgeState::kSafe) continue;
      for (EdgeId f : instance_.dependents(e)) {
        const EdgeState s = edges_[f].state;
        if ((s == EdgeState::kInitial || surviving1(s)) && !contains(f)) {
          grown.push_back(f);
          grown_set.insert(f);
          next.push_back(f);
        }
        touched_++;
      }
    }
    layer = std::move(next);
  }

  std::vector<EdgeId> component;
  for (EdgeId e : grown) {
    if (edges_[e].state != EdgeState::kSafe) component.push_back(e);
  }
  std::sort(component.begin(), component.end());
  last_component_ = component.size();
  stats_.max_phase2_component = std::max(stats_.max_phase2_component, component.size());

  std::vector<VertexId> targets;
  for (EdgeId e : component) {
    for (VertexId y : instance_.member(e)) {
      if (vars_[y] == VarState::kTrouble1) targets.push_back(y);
    }
  }
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

  std::vector<EdgeId> affected;
  for (VertexId y : targets) {
    const auto around = instance_.members_of(y);
    affected.insert(affected.end(), around.begin(), around.end());
  }
  std::sort(affected.begin(), affected.end());
  affected.erase(std::unique(affected.begin(), affected.end()), affected.end());
  std::vector<EdgeRec> saved_edges(affected.size());
  for (std::size_t i = 0; i < affected.size(); ++i) saved_edges[i] = edges_[affected[i]];
  const auto saved_dangerous2 = stats_.dangerous2;

  ++stats_.phase2_runs;
  for (unsigned attempt = 1; attempt <= caps_.retries; ++attempt) {
    const std::uint64_t epoch = ++epoch_counter_;
    ++stats_.phase2_attempts;
    for (VertexId y : targets) {
      if (vars_[y] == VarState::kTrouble1) phase2_assign(y, tape_.color_coin(y, epoch) == Color::kBlue);
    }
    // Good when every connected piece of surviving-2 constraints is small.
    bool good = true;
    std::vector<EdgeId> seen;
    for (EdgeId e : component) {
      if (!surviving2(edges_[e].state) || std::binary_search(seen.begin(), seen.end(), e)) continue;
      const EdgeId start[] = {e};
      auto piece = explore_component(
          start, [&](std::uint32_t f) { return surviving2(edges_[f].state); },
          [&](std::uint32_t f, auto&& visit) {
            for (EdgeId g : instance_.dependents(f)) visit(g);
          },
          caps_.phase3_cap);
      if (!piece) {
        good = false;
        break;
      }
      seen.insert(seen.end(), piece->entities.begin(), piece->entities.end());
      std::sort(seen.begin(), seen.end());
    }
    if (good) {
      if (attempt == 1) ++stats_.phase2_first_good;
      for (EdgeId e : component) epoch_of_[e] = epoch;
      return true;
    }
    // Erase this attempt's coloring and try again.
    for (std::size_t i = 0; i < affected.size(); ++i) edges_[affected[i]] = saved_edges[i];
    for (VertexId y : targets) vars_[y] = VarState::kTrouble1;
    stats_.dangerous2 = saved_dangerous2;
  }
  ++stats_.retry_fails;
  ++stats_.fails;
  return false;
}

void LllSession::phase3(VertexId x) {
  std::vector<EdgeId> start;
  for (EdgeId e : instance_.members_of(x)) {
    if (surviving2(edges_[e].state)) start.push_back(e);
  }
  auto piece = explore_component(
      std::span<const std::uint32_t>(start), [&](std::uint32_t f) { return surviving2(edges_[f].state); },
      [&](std::uint32_t f, auto&& visit) {
        for (EdgeId g : instance_.dependents(f)) visit(g);
      },
      caps_.phase3_cap);
  if (!piece) throw std::logic_error("surviving-2 component exceeds the phase-3 cap after an accepted epoch");
  const auto& component = piece->entities;
  ++stats_.phase3_runs;
  stats_.max_phase3_component = std::max(stats_.max_phase3_component, component.size());

  std::vector<VertexId> free_vars;
  for (EdgeId e : component) {
    for (VertexId y : instance_.member(e)) {
      if (vars_[y] == VarState::kTrouble2) free_vars.push_back(y);
    }
  }
  std::sort(free_vars.begin(), free_vars.end());
  free_vars.erase(std::unique(free_vars.begin(), free_vars.end()), free_vars.end());
  stats_.max_phase3_vars = std::max(stats_.max_phase3_vars, free_vars.size());

  // Per constraint: fixed counts plus its open positions. A constraint is
  // checked once its last open variable (in search order) is assigned.
  struct Open {
    EdgeId edge;
    std::vector<std::size_t> vars;  // indices into free_vars
  };
  std::vector<Open> opens;
  std::vector<std::vector<std::size_t>> closes_at(free_vars.size());
  for (EdgeId e : component) {
    Open o{e, {}};
    for (VertexId y : instance_.member(e)) {
      if (vars_[y] != VarState::kTrouble2) continue;
      o.vars.push_back(static_cast<std::size_t>(
          std::lower_bound(free_vars.begin(), free_vars.end(), y) - free_vars.begin()));
    }
    if (o.vars.empty()) {
      if (!satisfied(edges_[e])) throw std::logic_error("surviving-2 constraint with no open variable");
      continue;
    }
    closes_at[*std::max_element(o.vars.begin(), o.vars.end())].push_back(opens.size());
    opens.push_back(std::move(o));
  }

  std::vector<std::uint8_t> value(free_vars.size(), 0);
  auto closed_ok = [&](std::size_t idx) {
    for (std::size_t oi : closes_at[idx]) {
      EdgeRec rec = edges_[opens[oi].edge];
      for (std::size_t vi : opens[oi].vars) ++rec.count[kind(opens[oi].edge, free_vars[vi], value[vi] != 0)];
      if (!satisfied(rec)) return false;
    }
    return true;
  };
  // Depth-first in lexicographic order (value 0 before 1), so the result is
  // the first satisfying vector a plain enumeration would meet.
  std::size_t depth = 0;
  std::vector<std::uint8_t> tried(free_vars.size(), 0);
  bool found = free_vars.empty();
  while (!found) {
    if (tried[depth] == 2) {
      tried[depth] = 0;
      if (depth == 0) break;
      --depth;
      continue;
    }
    value[depth] = tried[depth]++;
    ++touched_;
    if (!closed_ok(depth)) continue;
    if (depth + 1 == free_vars.size()) {
      found = true;
    } else {
      ++depth;
    }
  }
  if (!found) throw std::logic_error("no satisfying assignment for a surviving-2 component");

  for (std::size_t i = 0; i < free_vars.size(); ++i) assign(free_vars[i], value[i] != 0);
  for (EdgeId e : component) {
    if (satisfied(edges_[e])) edges_[e].state = EdgeState::kSafe;
  }
}

std::optional<bool> LllSession::query(VertexId x) {
  touched_ = 0;
  last_component_ = 0;
  switch (vars_[x]) {
    case VarState::kValue0:
      return false;
    case VarState::kValue1:
      return true;
    case VarState::kFree:
      phase1_assign(x, tape_.color_coin(x, 0) == Color::kBlue);
      return value_of(x);
    case VarState::kTrouble1:
      if (!phase2(x)) return std::nullopt;
      break;
    case VarState::kTrouble2:
      break;
  }
  if (vars_[x] == VarState::kTrouble2) phase3(x);
  return value_of(x);
}

std::string LllSession::check_invariants() const {
  std::ostringstream err;
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    EdgeRec fresh;
    fresh.free = 0;
    for (VertexId y : instance_.member(e)) {
      switch (vars_[y]) {
        case VarState::kFree: ++fresh.free; break;
        case VarState::kTrouble1: ++fresh.trouble1; break;
        case VarState::kTrouble2: ++fresh.trouble2; break;
        default: ++fresh.count[kind(e, y, vars_[y] == VarState::kValue1)]; break;
      }
    }
    const EdgeRec& rec = edges_[e];
    if (fresh.free != rec.free || fresh.trouble1 != rec.trouble1 || fresh.trouble2 != rec.trouble2 ||
        fresh.count[0] != rec.count[0] || fresh.count[1] != rec.count[1]) {
      err << "constraint " << e << ": stale counters";
      return err.str();
    }
    const bool sat = satisfied(rec);
    const unsigned bad = violating(rec);
    const unsigned t2 = params_.k1 + params_.k2;
    bool ok = true;
    switch (rec.state) {
      case EdgeState::kInitial: ok = !sat && bad < params_.k1 && rec.free > 0 && rec.trouble2 == 0; break;
      case EdgeState::kSafe: ok = sat; break;
      case EdgeState::kDangerous1: ok = !sat && bad == params_.k1 && rec.free == 0 && rec.trouble2 == 0; break;
      case EdgeState::kUnsafe1: ok = !sat && bad < params_.k1 && rec.free == 0 && rec.trouble2 == 0; break;
      case EdgeState::kDangerous2: ok = !sat && bad == t2 && rec.free == 0 && rec.trouble1 == 0; break;
      case EdgeState::kUnsafe2: ok = !sat && bad < t2 && rec.free == 0 && rec.trouble1 == 0; break;
    }
    if (!ok) {
      err << "constraint " << e << ": state " << to_string(rec.state) << " inconsistent with counters";
      return err.str();
    }
  }
  for (VertexId x = 0; x < vars_.size(); ++x) {
    const EdgeState needed = vars_[x] == VarState::kTrouble1   ? EdgeState::kDangerous1
                             : vars_[x] == VarState::kTrouble2 ? EdgeState::kDangerous2
                                                               : EdgeState::kInitial;
    if (needed == EdgeState::kInitial) continue;
    const auto around = instance_.members_of(x);
    if (std::none_of(around.begin(), around.end(), [&](EdgeId e) { return edges_[e].state == needed; })) {
      err << "variable " << x << ": " << to_string(vars_[x]) << " without a " << to_string(needed) << " constraint";
      return err.str();
    }
  }
  return {};
}

}  // namespace lca
