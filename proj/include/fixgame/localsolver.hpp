#pragma once

#include "fixgame/game.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

namespace fixgame {

struct Counter {
  std::vector<std::uint32_t> k;

  friend bool operator==(const Counter&, const Counter&) = default;
};

Counter zero_counter(std::size_t m);

// Components below `priority` reset, component `priority` incremented,
// higher ones kept; priority 0 leaves the counter unchanged.
Counter next_counter(const Counter& k, std::size_t priority);

bool counter_lt(Player p, const Counter& a, const Counter& b, const std::vector<Sign>& signs);
bool counter_le(Player p, const Counter& a, const Counter& b, const std::vector<Sign>& signs);

struct Assumption {
  Position pos;
  Counter k;
  std::uint64_t time = 0;
};

struct Decision {
  Position pos;
  Counter k;
  std::vector<Position> justification;
  std::uint64_t time = 0;
};

using AssumptionSet = std::vector<Assumption>;
using DecisionSet = std::vector<Decision>;

struct ForgetReport {
  std::size_t by_timestamp = 0;
  std::size_t by_justification = 0;
};

// Drops every decision taken after `failed` was assumed, then any decision
// whose justification no longer holds.
DecisionSet forget(const DecisionSet& decisions, const AssumptionSet& assumptions, const Assumption& failed,
                   Player p, const std::vector<Sign>& signs, ForgetReport* report = nullptr);

// Every kept decision (C, k) and justifying C'' have (C'', k'') in the kept
// decisions with k'' ≤_p next(k, prio C), or in the assumptions other than
// `failed` with k'' <_p next(k, prio C).
bool sound_forget(const DecisionSet& kept, const AssumptionSet& assumptions, const Assumption& failed, Player p,
                  const std::vector<Sign>& signs);

// Read-only view of the solver state offered to move providers.
class SolverView {
 public:
  virtual ~SolverView() = default;
  // Some (pos, k') ∈ Δ_p with k' ≤_p bound.
  virtual bool usable_decision(Player p, const Position& pos, const Counter& bound) const = 0;
  // Counter of pos in the playlist, if present.
  virtual std::optional<Counter> playlist_counter(const Position& pos) const = 0;
  virtual const std::vector<Sign>& signs() const = 0;
};

class MoveProvider {
 public:
  virtual ~MoveProvider() = default;
  virtual std::vector<Position> moves(const Position& pos, const Counter& k, const SolverView& view) = 0;
  // Counts positions produced by a restricted (up-to) move.
  virtual std::size_t pruning_moves() const { return 0; }
};

// Selection for ∃ (cached per position), forall_moves for ∀.
class SelectionProvider : public MoveProvider {
 public:
  SelectionProvider(const EquationSystem& sys, SelectionOptions opts = {});
  std::vector<Position> moves(const Position& pos, const Counter& k, const SolverView& view) override;
  const SelectionStats& stats() const { return stats_; }

 private:
  const EquationSystem& sys_;
  SelectionOptions opts_;
  SelectionStats stats_;
  std::unordered_map<Position, std::vector<Position>, PositionHash> cache_;
};

struct SolverStats {
  std::size_t nodes = 0;
  std::size_t exists_nodes = 0;
  std::size_t forall_nodes = 0;
  std::vector<std::size_t> exists_nodes_by_index;
  std::size_t assumptions = 0;
  std::size_t decisions = 0;
  std::size_t reused_decisions = 0;
  std::size_t forgets = 0;
  std::size_t forgotten_by_timestamp = 0;
  std::size_t forgotten_by_justification = 0;
  std::size_t max_playlist = 0;
  std::size_t upto_prunes = 0;
  std::size_t invariant_violations = 0;
  std::size_t forget_predicate_checks = 0;
  std::size_t forget_predicate_violations = 0;
};

struct CheckOptions {
  SelectionOptions selection;
  bool trace = false;
  // Re-walks justifications after every forget and checks that assumptions
  // stay on the playlist.
  bool validate = false;
  // Prefer moves whose successors are all decided or assumed for ∃.
  bool heuristic = false;
};

struct AssumptionEvent {
  Player player;
  Position pos;
  Counter k;
};

struct CheckResult {
  Player winner = Player::exists;
  SolverStats stats;
  std::vector<AssumptionEvent> assumption_log;
  nlohmann::json trace;
};

class LocalSolver final : public SolverView {
 public:
  LocalSolver(const EquationSystem& sys, MoveProvider& provider, CheckOptions opts = {});

  CheckResult run(const Position& start);

  bool usable_decision(Player p, const Position& pos, const Counter& bound) const override;
  std::optional<Counter> playlist_counter(const Position& pos) const override;
  const std::vector<Sign>& signs() const override { return signs_; }

 private:
  struct Entry {
    Position pos;
    Counter k;
    std::vector<Position> moves;
    std::size_t next_move = 0;
  };

  std::size_t side(Player p) const { return p == Player::exists ? 0 : 1; }
  std::vector<Position> moves_of(const Position& pos, const Counter& k);
  void decide(Player p, const Position& pos, const Counter& k, std::vector<Position> justification);
  void check_invariants();
  nlohmann::json counter_json(const Counter& k) const;
  void event(nlohmann::json e);
  std::string fmt(const Position& p) const;

  const EquationSystem& sys_;
  MoveProvider& provider_;
  CheckOptions opts_;
  std::vector<Sign> signs_;

  std::vector<Entry> playlist_;
  std::unordered_map<Position, std::size_t, PositionHash> on_playlist_;
  AssumptionSet assumptions_[2];
  DecisionSet decisions_[2];
  std::uint64_t clock_ = 0;
  CheckResult result_;
};

// Runs the local algorithm from (b, i) with the default selection moves.
CheckResult check(const EquationSystem& sys, std::size_t b, std::size_t i, const CheckOptions& opts = {});

nlohmann::json stats_json(const SolverStats& s);

}  // namespace fixgame
