#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lca/coin_tape.hpp"
#include "lca/instance.hpp"

namespace lca {

/// Split k = k1 + k2 + k3 of the constraint width across the three phases.
struct LllParams {
  unsigned k1 = 0;
  unsigned k2 = 0;
  unsigned k3 = 0;
  friend bool operator==(const LllParams&, const LllParams&) = default;
};

/// Lexicographically smallest positive (k1, k2, k3) summing to k with
/// 16d(d-1)^3(d+1) < 2^k1, the same bound for k2, and 2e(d+1) < 2^k3.
std::optional<LllParams> check_params(unsigned k, unsigned d);
/// As check_params with 8d(d-1)^3(d+1) and e(d+1).
std::optional<LllParams> check_params_cnf(unsigned k, unsigned d);

class InfeasibleParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// What makes a constraint violated: a monochromatic hyperedge, or a clause
/// with every literal false.
enum class Semantics : std::uint8_t { kColoring, kCnf };

/// Value bits: for coloring kValue0 is red and kValue1 blue; for CNF they are
/// false and true.
enum class VarState : std::uint8_t { kFree, kValue0, kValue1, kTrouble1, kTrouble2 };
enum class EdgeState : std::uint8_t { kInitial, kSafe, kUnsafe1, kUnsafe2, kDangerous1, kDangerous2 };

const char* to_string(VarState s);
const char* to_string(EdgeState s);

struct LllConfig {
  double c1 = 8.0;  // phase-2 component cap: ceil(c1 log2(N+1))
  double c2 = 8.0;  // phase-3 component cap: ceil(c2 log2(log2(N+2)+1))
  double c3 = 2.0;  // retries: ceil(c3 log2(N+1) / log2(log2(N+2)+2))
  /// Bypasses check_params. Intended for tests that exercise the state
  /// machine outside the feasible region; Phase 3 may then fail.
  std::optional<LllParams> params;
};

struct LllCaps {
  std::size_t phase2_cap = 0;
  std::size_t phase3_cap = 0;
  unsigned retries = 0;
};

LllCaps lll_caps(std::size_t constraints, const LllConfig& config);

struct LllStats {
  std::size_t fails = 0;
  std::size_t phase2_cap_fails = 0;
  std::size_t retry_fails = 0;
  std::size_t phase2_runs = 0;         // recolorings that reached the retry loop
  std::size_t phase2_first_good = 0;   // ... and were accepted on the first epoch
  std::size_t phase2_attempts = 0;
  std::size_t phase3_runs = 0;
  std::size_t max_phase2_component = 0;  // surviving-1 constraints
  std::size_t max_phase3_component = 0;  // surviving-2 constraints
  std::size_t max_phase3_vars = 0;
  std::size_t dangerous1 = 0;  // constraints that ever entered DANGEROUS1
  std::size_t dangerous2 = 0;
};

/**
 * Three-phase local assignment oracle over a uniform constraint system.
 *
 * Phase 1 gives each queried free variable its epoch-0 coin; a constraint that
 * collects k1 violating values and nothing satisfying becomes dangerous and
 * defers its free variables (trouble-1). Querying a trouble-1 variable grows
 * the component of surviving-1 constraints around it, then re-draws its
 * trouble-1 variables with fresh epochs until the surviving-2 components are
 * all small; trouble-2 variables are finished by exhaustive search over their
 * surviving-2 component.
 *
 * State persists across queries, so answers depend on query order (but are
 * reproducible for a fixed order). Single-threaded.
 */
class LllSession {
 public:
  /// `polarity` is one byte per literal position for kCnf and ignored for
  /// kColoring. Throws InfeasibleParams when no parameter split exists.
  LllSession(const Incidence& instance, Semantics semantics, std::span<const std::uint8_t> polarity,
             std::uint64_t seed, LllConfig config = {});

  /// Value bit for x, or std::nullopt on FAIL.
  std::optional<bool> query(VertexId x);

  VarState var_state(VertexId x) const { return vars_[x]; }
  EdgeState edge_state(EdgeId e) const { return edges_[e].state; }
  const LllParams& params() const { return params_; }
  const LllCaps& caps() const { return caps_; }
  const LllStats& stats() const { return stats_; }
  const Incidence& instance() const { return instance_; }

  /// Epoch accepted for the phase-2 component containing constraint e, if any.
  std::optional<std::uint64_t> accepted_epoch(EdgeId e) const;

  std::uint64_t last_touched() const { return touched_; }
  std::size_t last_component_size() const { return last_component_; }

  /// Empty if every structural invariant holds; otherwise a description of
  /// the first violation found.
  std::string check_invariants() const;

 private:
  struct EdgeRec {
    EdgeState state = EdgeState::kInitial;
    std::uint16_t count[2] = {0, 0};  // assigned members by literal truth (CNF) or color
    std::uint16_t free = 0;
    std::uint16_t trouble1 = 0;
    std::uint16_t trouble2 = 0;
  };

  bool value_of(VertexId x) const { return vars_[x] == VarState::kValue1; }
  int kind(EdgeId e, VertexId x, bool value) const;
  bool satisfied(const EdgeRec& rec) const;
  unsigned violating(const EdgeRec& rec) const;
  void leave(VertexId x, EdgeRec& rec) const;
  void assign(VertexId x, bool value);
  void set_trouble(VertexId x, VarState level, std::vector<EdgeId>& recheck);

  void phase1_assign(VertexId x, bool value);
  void phase2_assign(VertexId x, bool value);
  bool phase2(VertexId x);
  void phase3(VertexId x);

  const Incidence& instance_;
  Semantics semantics_;
  std::span<const std::uint8_t> polarity_;
  CoinTape tape_;
  LllParams params_;
  LllCaps caps_;
  std::vector<VarState> vars_;
  std::vector<EdgeRec> edges_;
  std::vector<std::uint64_t> epoch_of_;  // per constraint, 0 = none
  std::uint64_t epoch_counter_ = 0;
  LllStats stats_;
  std::uint64_t touched_ = 0;
  std::size_t last_component_ = 0;
};

/// Hypergraph two-coloring oracle.
class ColoringSession {
 public:
  ColoringSession(const Hypergraph& h, std::uint64_t seed, LllConfig config = {})
      : engine_(h, Semantics::kColoring, {}, seed, config) {}

  std::optional<Color> query(VertexId x) {
    auto bit = engine_.query(x);
    if (!bit) return std::nullopt;
    return *bit ? Color::kBlue : Color::kRed;
  }
  LllSession& engine() { return engine_; }
  const LllSession& engine() const { return engine_; }

 private:
  LllSession engine_;
};

/// k-CNF satisfying-assignment oracle.
class CnfSession {
 public:
  CnfSession(const CnfFormula& f, std::uint64_t seed, LllConfig config = {})
      : engine_(f, Semantics::kCnf, f.polarities(), seed, config) {}

  std::optional<bool> query(VertexId var) { return engine_.query(var); }
  LllSession& engine() { return engine_; }
  const LllSession& engine() const { return engine_; }

 private:
  LllSession engine_;
};

}  // namespace lca
