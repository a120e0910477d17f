#include "fixgame/applications.hpp"

#include <unordered_set>

namespace fixgame::nfa {

namespace {

struct PairHash {
  std::size_t operator()(const SetPair& p) const noexcept {
    return std::hash<std::uint64_t>{}(p.first * 0x9e3779b97f4a7c15ull ^ (p.second + 0x632be59bd9b4e019ull));
  }
};

bool subset(StateSet a, StateSet b) { return (a & ~b) == 0; }

}  // namespace

StateSet normal_form(StateSet X, const std::vector<SetPair>& R) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [Y1, Y2] : R) {
      if (subset(Y1, X) && !subset(Y2, X)) {
        X |= Y2;
        changed = true;
      }
      if (subset(Y2, X) && !subset(Y1, X)) {
        X |= Y1;
        changed = true;
      }
    }
  }
  return X;
}

bool congruence_member(const SetPair& p, const std::vector<SetPair>& R) {
  return p.first == p.second || normal_form(p.first, R) == normal_form(p.second, R);
}

EquivResult set_equiv(const Nfa& N, StateSet X1, StateSet X2, bool upto) {
  const StateSet F = N.finals;
  auto below_c = [F](const SetPair& p) { return ((p.first & F) == 0) == ((p.second & F) == 0); };
  auto successors = [&N](const SetPair& p) {
    std::vector<SetPair> next;
    for (std::size_t a = 0; a < N.alphabet.size(); ++a) next.emplace_back(N.step(p.first, a), N.step(p.second, a));
    return next;
  };
  std::unordered_set<SetPair, PairHash> seen;
  std::size_t indexed = 0;
  auto covered = [&](const SetPair& p, const std::vector<SetPair>& W) {
    if (upto) return congruence_member(p, W);
    for (; indexed < W.size(); ++indexed) seen.insert(W[indexed]);
    return seen.count(p) > 0;
  };
  auto run = explore_case2<SetPair>({X1, X2}, below_c, successors, covered);
  EquivResult out;
  out.equivalent = run.winner == Player::exists;
  out.explored = run.explored.size();
  out.visited = run.visited;
  out.stops = run.stops;
  out.counterexample = run.losing;
  return out;
}

EquivResult language_equiv(const Nfa& N, std::size_t q1, std::size_t q2, bool upto) {
  if (q1 >= N.size() || q2 >= N.size()) throw InvalidArgument("state index out of range");
  return set_equiv(N, StateSet{1} << q1, StateSet{1} << q2, upto);
}

}  // namespace fixgame::nfa
