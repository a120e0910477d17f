#pragma once

#include "fixgame/game.hpp"
#include "fixgame/upto.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace fixgame {

using UnaryMap = std::function<Element(const Element&)>;

class NotMeetPreserving : public InvalidArgument {
 public:
  NotMeetPreserving(const std::string& what, std::vector<std::string> witness)
      : InvalidArgument(what), witness_(std::move(witness)) {}
  // The offending arguments, formatted.
  const std::vector<std::string>& witness() const { return witness_; }

 private:
  std::vector<std::string> witness_;
};

// x =ν f(x) with f(x) = f*(x) ⊓ c and f_* ⊣ f*.
struct MeetPreservingEquation {
  LatticePtr lattice;
  UnaryMap f_star;
  Element c;
  UnaryMap f_lower;
  std::string name = "x";

  Element f(const Element& x) const { return lattice->meet(f_star(x), c); }
};

// f_*(b) = ⨅{l | b ⊑ f*(l)}, tabulated. Refuses an f* that does not preserve
// all meets and checks the adjunction on every pair.
UnaryMap derive_left_adjoint(LatticePtr L, const UnaryMap& f_star, CheckLimits limits = {});

MeetPreservingEquation make_meet_preserving(LatticePtr L, UnaryMap f_star, Element c, std::string name = "x",
                                            CheckLimits limits = {});

// Splits an f preserving non-empty meets as f* ⊓ f(⊤), with f* = f off ⊤.
MeetPreservingEquation from_function(LatticePtr L, const UnaryMap& f, std::string name = "x",
                                     CheckLimits limits = {});

struct AdjunctionReport {
  bool holds = true;
  std::size_t pairs_checked = 0;
  std::optional<std::pair<std::string, std::string>> witness;  // (b, l)
};

// f_*(b) ⊑ l ⟺ b ⊑ f*(l) over all pairs, and f(x) = f*(x) ⊓ c.
AdjunctionReport verify_adjunction(const MeetPreservingEquation& eq, CheckLimits limits = {});

// Same order, basis = every element except ⊥.
LatticePtr with_full_basis(LatticePtr L, std::size_t element_limit = 4096);

struct Case1Result {
  Player winner = Player::exists;
  std::vector<Element> chain;
};

Case1Result case1_check(const MeetPreservingEquation& eq, const Element& b, const UpToFunction* u = nullptr,
                        CheckLimits limits = {});

template <class P>
struct Case2Outcome {
  Player winner = Player::exists;
  std::vector<P> explored;  // W
  std::size_t visited = 0;
  std::size_t stops = 0;
  std::optional<P> losing;
};

// Depth-first exploration with W. `covered(p, W)` decides the stop test, so
// callers may plug in ⨆W, u(⨆W) or anything else sound.
template <class P, class BelowC, class Successors, class Covered>
Case2Outcome<P> explore_case2(const P& start, BelowC&& below_c, Successors&& successors, Covered&& covered) {
  Case2Outcome<P> out;
  std::vector<P> stack{start};
  while (!stack.empty()) {
    P p = std::move(stack.back());
    stack.pop_back();
    ++out.visited;
    if (!below_c(p)) {
      out.winner = Player::forall;
      out.losing = std::move(p);
      return out;
    }
    if (covered(p, out.explored)) {
      ++out.stops;
      continue;
    }
    out.explored.push_back(p);
    std::vector<P> next = successors(p);
    for (auto it = next.rbegin(); it != next.rend(); ++it) stack.push_back(std::move(*it));
  }
  return out;
}

using Case2Result = Case2Outcome<Element>;

// b must be a basis element. Moves are minimal_join_cover(f_*(b')).
Case2Result case2_check(const MeetPreservingEquation& eq, const Element& b, const UpToFunction* u = nullptr,
                        CheckLimits limits = {});

}  // namespace fixgame
