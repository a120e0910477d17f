#pragma once

#include "fixgame/syntax.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace fixgame {

struct TransitionSystem {
  std::vector<std::string> states;
  std::vector<std::vector<std::size_t>> succ;  // sorted, no duplicates
  std::map<std::string, std::vector<bool>> atoms;

  std::size_t size() const { return states.size(); }
  // Throws InvalidArgument for an unknown name.
  std::size_t index(const std::string& name) const;
};

// states: a b c
// edges: a->b b->c
// atom p: a c
TransitionSystem parse_ts(std::string_view text);

struct Nfa {
  std::vector<std::string> states;
  std::vector<std::string> alphabet;
  std::vector<std::vector<std::uint64_t>> delta;  // delta[a][q] as a state set
  std::uint64_t finals = 0;

  std::size_t size() const { return states.size(); }
  std::size_t index(const std::string& name) const;
  std::uint64_t step(std::uint64_t X, std::size_t a) const;
  std::string format_set(std::uint64_t X) const;
};

// states: q0 q1
// alphabet: a b
// final: q1
// trans: q0 -a-> q0 q1
Nfa parse_nfa(std::string_view text);

struct Pndt {
  std::vector<std::string> states;
  // dists[s] lists the distributions of s, each one weight per state
  std::vector<std::vector<std::vector<Rational>>> dists;
  std::map<std::string, std::vector<Rational>> props;

  std::size_t size() const { return states.size(); }
  std::size_t index(const std::string& name) const;
};

// state a: (1/3 a, 1/3 b, 1/3 c) (1/2 a, 1/2 c)
// prop p: a=0 b=1 c=0
Pndt parse_pndt(std::string_view text);

// pairs: a->A b->B, over two state lists.
std::vector<std::vector<bool>> parse_relation(std::string_view text, const std::vector<std::string>& left,
                                              const std::vector<std::string>& right);

}  // namespace fixgame
