#include "fixgame/localsolver.hpp"

#include <algorithm>

namespace fixgame {

Counter zero_counter(std::size_t m) { return Counter{std::vector<std::uint32_t>(m, 0)}; }

Counter next_counter(const Counter& k, std::size_t priority) {
  if (priority == 0) return k;
  if (priority > k.k.size()) throw InvalidArgument("priority exceeds counter length");
  Counter out = k;
  for (std::size_t j = 0; j + 1 < priority; ++j) out.k[j] = 0;
  ++out.k[priority - 1];
  return out;
}

bool counter_lt(Player p, const Counter& a, const Counter& b, const std::vector<Sign>& signs) {
  if (a.k.size() != b.k.size() || a.k.size() != signs.size())
    throw InvalidArgument("counter length mismatch");
  for (std::size_t j = a.k.size(); j-- > 0;) {
    if (a.k[j] == b.k[j]) continue;
    bool exists_less = signs[j] == Sign::nu ? a.k[j] < b.k[j] : a.k[j] > b.k[j];
    return p == Player::exists ? exists_less : !exists_less;
  }
  return false;
}

bool counter_le(Player p, const Counter& a, const Counter& b, const std::vector<Sign>& signs) {
  return a == b || counter_lt(p, a, b, signs);
}

namespace {

bool justified(const Decision& d, const DecisionSet& kept, const AssumptionSet& assumptions,
               const Assumption& failed, Player p, const std::vector<Sign>& signs) {
  Counter bound = next_counter(d.k, d.pos.priority());
  for (const auto& j : d.justification) {
    bool ok = std::any_of(kept.begin(), kept.end(), [&](const Decision& e) {
      return e.pos == j && counter_le(p, e.k, bound, signs);
    });
    if (!ok)
      ok = std::any_of(assumptions.begin(), assumptions.end(), [&](const Assumption& a) {
        bool is_failed = a.pos == failed.pos && a.k == failed.k;
        return !is_failed && a.pos == j && counter_lt(p, a.k, bound, signs);
      });
    if (!ok) return false;
  }
  return true;
}

}  // namespace

DecisionSet forget(const DecisionSet& decisions, const AssumptionSet& assumptions, const Assumption& failed,
                   Player p, const std::vector<Sign>& signs, ForgetReport* report) {
  ForgetReport rep;
  DecisionSet kept;
  for (const auto& d : decisions) {
    if (d.time > failed.time) ++rep.by_timestamp;
    else kept.push_back(d);
  }
  // An earlier decision may rest on an assumption that was later discharged
  // by a decision the timestamp rule just removed.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < kept.size(); ++i) {
      if (justified(kept[i], kept, assumptions, failed, p, signs)) continue;
      kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
      ++rep.by_justification;
      changed = true;
      break;
    }
  }
  if (report) *report = rep;
  return kept;
}

bool sound_forget(const DecisionSet& kept, const AssumptionSet& assumptions, const Assumption& failed, Player p,
                  const std::vector<Sign>& signs) {
  for (const auto& d : kept) {
    const Counter bound = next_counter(d.k, d.pos.priority());
    for (const auto& j : d.justification) {
      bool found = false;
      for (const auto& e : kept)
        if (e.pos == j && (e.k == bound || counter_lt(p, e.k, bound, signs))) found = true;
      for (const auto& a : assumptions) {
        if (a.pos == failed.pos && a.k == failed.k) continue;
        if (a.pos == j && counter_lt(p, a.k, bound, signs)) found = true;
      }
      if (!found) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

SelectionProvider::SelectionProvider(const EquationSystem& sys, SelectionOptions opts)
    : sys_(sys), opts_(opts) {}

std::vector<Position> SelectionProvider::moves(const Position& pos, const Counter&, const SolverView&) {
  if (!pos.is_exists()) return forall_moves(pos);
  auto it = cache_.find(pos);
  if (it == cache_.end()) it = cache_.emplace(pos, selection(sys_, pos.basis, pos.index, opts_, &stats_)).first;
  return it->second;
}

// ---------------------------------------------------------------------------

LocalSolver::LocalSolver(const EquationSystem& sys, MoveProvider& provider, CheckOptions opts)
    : sys_(sys), provider_(provider), opts_(opts), signs_(sys.signs()) {}

bool LocalSolver::usable_decision(Player p, const Position& pos, const Counter& bound) const {
  for (const auto& d : decisions_[side(p)])
    if (d.pos == pos && counter_le(p, d.k, bound, signs_)) return true;
  return false;
}

std::optional<Counter> LocalSolver::playlist_counter(const Position& pos) const {
  auto it = on_playlist_.find(pos);
  if (it == on_playlist_.end()) return std::nullopt;
  return playlist_[it->second].k;
}

std::string LocalSolver::fmt(const Position& p) const { return format_position(sys_.lattice(), p); }

nlohmann::json LocalSolver::counter_json(const Counter& k) const { return k.k; }

void LocalSolver::event(nlohmann::json e) {
  if (opts_.trace) result_.trace["events"].push_back(std::move(e));
}

std::vector<Position> LocalSolver::moves_of(const Position& pos, const Counter& k) {
  auto mv = provider_.moves(pos, k, *this);
  if (opts_.heuristic && pos.is_exists()) {
    std::stable_partition(mv.begin(), mv.end(), [&](const Position& x) {
      for (const auto& y : forall_moves(x)) {
        bool known = std::any_of(decisions_[0].begin(), decisions_[0].end(),
                                 [&](const Decision& d) { return d.pos == y; });
        if (!known) return false;
      }
      return true;
    });
  }
  return mv;
}

void LocalSolver::decide(Player p, const Position& pos, const Counter& k, std::vector<Position> justification) {
  ++result_.stats.decisions;
  if (opts_.trace) {
    nlohmann::json by = nlohmann::json::array();
    for (const auto& j : justification) by.push_back(fmt(j));
    event({{"event", "decide"}, {"player", to_string(p)}, {"pos", fmt(pos)}, {"k", counter_json(k)}, {"by", by}});
  }
  decisions_[side(p)].push_back(Decision{pos, k, std::move(justification), ++clock_});
}

void LocalSolver::check_invariants() {
  for (const auto& set : assumptions_)
    for (const auto& a : set)
      if (!on_playlist_.count(a.pos)) ++result_.stats.invariant_violations;
}

CheckResult LocalSolver::run(const Position& start) {
  const std::size_t m = sys_.size();
  if (!sys_.lattice().finite()) throw UnsupportedOperation("the local algorithm needs a finite lattice");
  if (start.is_exists() && (start.index >= m || start.basis >= sys_.lattice().basis().size()))
    throw InvalidArgument("start position out of range");
  result_ = CheckResult{};
  result_.stats.exists_nodes_by_index.assign(m, 0);
  playlist_.clear();
  on_playlist_.clear();
  for (auto& a : assumptions_) a.clear();
  for (auto& d : decisions_) d.clear();
  clock_ = 0;
  if (opts_.trace) {
    result_.trace = {{"schema", "fixgame-trace/1"}, {"start", fmt(start)}, {"events", nlohmann::json::array()}};
    nlohmann::json sg = nlohmann::json::array();
    for (auto s : signs_) sg.push_back(to_string(s));
    result_.trace["signs"] = sg;
  }

  auto& st = result_.stats;
  Position cur = start;
  Counter ck = zero_counter(m);
  bool exploring = true;
  Player bp = Player::exists;
  Position bpos;

  while (true) {
    if (opts_.validate) check_invariants();
    if (exploring) {
      ++st.nodes;
      if (cur.is_exists()) {
        ++st.exists_nodes;
        ++st.exists_nodes_by_index[cur.index];
      } else {
        ++st.forall_nodes;
      }
      event({{"event", "explore"}, {"pos", fmt(cur)}, {"k", counter_json(ck)}});
      auto mv = moves_of(cur, ck);
      if (mv.empty()) {
        bp = opponent(cur.owner());
        event({{"event", "stuck"}, {"pos", fmt(cur)}, {"winner", to_string(bp)}});
        decide(bp, cur, ck, {});
        bpos = cur;
        exploring = false;
        continue;
      }
      std::optional<Player> reuse;
      for (Player p : {Player::exists, Player::forall})
        if (usable_decision(p, cur, ck)) {
          reuse = p;
          break;
        }
      if (reuse) {
        ++st.reused_decisions;
        event({{"event", "reuse"}, {"player", to_string(*reuse)}, {"pos", fmt(cur)}});
        bp = *reuse;
        bpos = cur;
        exploring = false;
        continue;
      }
      if (auto it = on_playlist_.find(cur); it != on_playlist_.end()) {
        const Counter earlier = playlist_[it->second].k;
        if (earlier == ck) throw std::logic_error("position repeated with an unchanged counter");
        bp = counter_lt(Player::exists, earlier, ck, signs_) ? Player::exists : Player::forall;
        auto& gamma = assumptions_[side(bp)];
        if (std::none_of(gamma.begin(), gamma.end(), [&](const Assumption& a) { return a.pos == cur; }))
          gamma.push_back(Assumption{cur, earlier, ++clock_});
        result_.assumption_log.push_back(AssumptionEvent{bp, cur, earlier});
        ++st.assumptions;
        event({{"event", "assume"}, {"player", to_string(bp)}, {"pos", fmt(cur)}, {"k", counter_json(earlier)}});
        bpos = cur;
        exploring = false;
        continue;
      }
      Counter nk = next_counter(ck, cur.priority());
      on_playlist_.emplace(cur, playlist_.size());
      playlist_.push_back(Entry{cur, ck, std::move(mv), 1});
      st.max_playlist = std::max(st.max_playlist, playlist_.size());
      cur = playlist_.back().moves.front();
      ck = std::move(nk);
      continue;
    }

    if (playlist_.empty()) {
      result_.winner = bp;
      break;
    }
    Entry& head = playlist_.back();
    if (head.pos.owner() != bp && head.next_move < head.moves.size()) {
      cur = head.moves[head.next_move++];
      ck = next_counter(head.k, head.pos.priority());
      exploring = true;
      continue;
    }
    Entry done = std::move(head);
    playlist_.pop_back();
    on_playlist_.erase(done.pos);
    std::vector<Position> why = done.pos.owner() == bp ? std::vector<Position>{bpos} : done.moves;
    decide(bp, done.pos, done.k, std::move(why));

    auto& mine = assumptions_[side(bp)];
    std::erase_if(mine, [&](const Assumption& a) { return a.pos == done.pos && a.k == done.k; });
    auto& theirs = assumptions_[side(opponent(bp))];
    auto failed = std::find_if(theirs.begin(), theirs.end(),
                               [&](const Assumption& a) { return a.pos == done.pos && a.k == done.k; });
    if (failed != theirs.end()) {
      Player q = opponent(bp);
      Assumption f = *failed;
      ForgetReport rep;
      DecisionSet kept = forget(decisions_[side(q)], theirs, f, q, signs_, &rep);
      if (opts_.validate) {
        ++st.forget_predicate_checks;
        if (!sound_forget(kept, theirs, f, q, signs_)) ++st.forget_predicate_violations;
      }
      decisions_[side(q)] = std::move(kept);
      theirs.erase(std::find_if(theirs.begin(), theirs.end(),
                                [&](const Assumption& a) { return a.pos == f.pos && a.k == f.k; }));
      ++st.forgets;
      st.forgotten_by_timestamp += rep.by_timestamp;
      st.forgotten_by_justification += rep.by_justification;
      event({{"event", "forget"},
             {"player", to_string(q)},
             {"pos", fmt(f.pos)},
             {"k", counter_json(f.k)},
             {"removed", rep.by_timestamp + rep.by_justification}});
    }
    bpos = done.pos;
  }

  st.upto_prunes = provider_.pruning_moves();
  if (opts_.trace) {
    result_.trace["winner"] = to_string(result_.winner);
    result_.trace["stats"] = stats_json(st);
  }
  return std::move(result_);
}

CheckResult check(const EquationSystem& sys, std::size_t b, std::size_t i, const CheckOptions& opts) {
  SelectionProvider provider(sys, opts.selection);
  LocalSolver solver(sys, provider, opts);
  return solver.run(Position::exists_at(b, i));
}

nlohmann::json stats_json(const SolverStats& s) {
  return {{"nodes", s.nodes},
          {"exists_nodes", s.exists_nodes},
          {"forall_nodes", s.forall_nodes},
          {"exists_nodes_by_index", s.exists_nodes_by_index},
          {"assumptions", s.assumptions},
          {"decisions", s.decisions},
          {"reused_decisions", s.reused_decisions},
          {"forgets", s.forgets},
          {"forgotten_by_timestamp", s.forgotten_by_timestamp},
          {"forgotten_by_justification", s.forgotten_by_justification},
          {"max_playlist", s.max_playlist},
          {"upto_prunes", s.upto_prunes}};
}

}  // namespace fixgame
