#pragma once

#include "fixgame/eqsys.hpp"
#include "fixgame/lattice.hpp"
#include "fixgame/upto.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace fixgame::testing {

inline std::vector<LatticePtr> small_lattices() {
  return {make_chain(2),
          make_chain(3),
          make_chain(5),
          make_m3(),
          make_n5(),
          make_powerset({"p", "q"}),
          make_powerset({"p", "q", "r"}),
          make_grid(3),
          make_product_table(*make_chain(2), *make_chain(4)),
          make_product_table(*make_chain(2), *make_chain(3)),
          make_pointwise_grid({"s", "t"}, 2)};
}

// Lattices with at most 8 elements.
inline LatticePtr random_small_lattice(std::mt19937_64& rng) {
  static const std::vector<LatticePtr> pool = [] {
    std::vector<LatticePtr> v;
    for (std::size_t n = 2; n <= 8; ++n) v.push_back(make_chain(n));
    v.push_back(make_m3());
    v.push_back(make_n5());
    v.push_back(make_powerset({"p", "q"}));
    v.push_back(make_powerset({"p", "q", "r"}));
    v.push_back(make_product_table(*make_chain(2), *make_chain(4)));
    v.push_back(make_product_table(*make_chain(2), *make_chain(3)));
    v.push_back(make_grid(4));
    v.push_back(make_pointwise_grid({"s", "t"}, 1));
    return v;
  }();
  return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
}

inline std::vector<Element> random_tuple(const Lattice& L, std::size_t m, std::mt19937_64& rng) {
  std::vector<Element> out;
  for (std::size_t j = 0; j < m; ++j) out.push_back(L.random_element(rng));
  return out;
}

// Join of step functions x⃗ ↦ (a⃗ ≤ x⃗ ? c : ⊥); monotone by construction.
struct StepFunction {
  std::vector<std::pair<std::vector<Element>, Element>> steps;
};

inline StepFunction random_steps(const Lattice& L, std::size_t m, std::mt19937_64& rng, std::size_t max_steps = 3) {
  StepFunction f;
  std::size_t r = std::uniform_int_distribution<std::size_t>(0, max_steps)(rng);
  for (std::size_t s = 0; s < r; ++s) f.steps.emplace_back(random_tuple(L, m, rng), L.random_element(rng));
  return f;
}

inline MonotoneFunction<Element> as_function(LatticePtr L, std::size_t m, StepFunction f) {
  return MonotoneFunction<Element>{
      m,
      [L, f](std::span<const Element> x) {
        Element acc = L->bot();
        for (const auto& [a, c] : f.steps) {
          bool above = true;
          for (std::size_t j = 0; j < a.size(); ++j)
            if (!L->leq(a[j], x[j])) above = false;
          if (above) acc = L->join(acc, c);
        }
        return acc;
      },
      "steps"};
}

inline EquationSystem random_system(std::mt19937_64& rng, LatticePtr L, std::size_t m) {
  std::vector<Equation<Element>> eqs;
  for (std::size_t i = 0; i < m; ++i) {
    Sign s = rng() & 1u ? Sign::nu : Sign::mu;
    eqs.push_back({"x" + std::to_string(i + 1), s, as_function(L, m, random_steps(*L, m, rng))});
  }
  return EquationSystem(L, std::move(eqs));
}

inline EquationSystem random_system(std::mt19937_64& rng, std::size_t max_m = 3) {
  auto L = random_small_lattice(rng);
  std::size_t m = std::uniform_int_distribution<std::size_t>(1, max_m)(rng);
  return random_system(rng, L, m);
}

// Knaster–Tarski by enumeration: μ = ⨅ pre-fixpoints, ν = ⨆ post-fixpoints.
inline Element brute_fixpoint(const Lattice& L, const std::function<Element(const Element&)>& g, Sign s) {
  auto xs = *L.elements(1u << 16);
  Element acc = s == Sign::mu ? L.top() : L.bot();
  for (const auto& x : xs) {
    Element y = g(x);
    if (s == Sign::mu && L.leq(y, x)) acc = L.meet(acc, x);
    if (s == Sign::nu && L.leq(x, y)) acc = L.join(acc, x);
  }
  return acc;
}

// Solution by direct recursion on substitution without memoization.
inline std::vector<Element> brute_solve(const EquationSystem& sys) {
  const std::size_t m = sys.size();
  if (m == 0) return {};
  const auto& L = sys.lattice();
  auto g = [&](const Element& x) {
    auto rest = brute_solve(substitute(sys, m - 1, x));
    rest.push_back(x);
    return sys.eval(m - 1, rest);
  };
  Element s = brute_fixpoint(L, g, sys.sign(m - 1));
  auto out = brute_solve(substitute(sys, m - 1, s));
  out.push_back(s);
  return out;
}

// Random candidates x ↦ x ⊔ g(x) or x ↦ g(x) with g a join of strict steps,
// kept when compatible with the system.
inline std::vector<UpToFunction> random_compatible(std::mt19937_64& rng, const EquationSystem& sys) {
  auto L = sys.lattice_ptr();
  std::vector<UpToFunction> out;
  for (std::size_t i = 0; i < sys.size(); ++i) out.push_back(u_identity(L));
  for (int attempt = 0; attempt < 12; ++attempt) {
    std::size_t i = rng() % sys.size();
    StepFunction g = random_steps(*L, 1, rng, 2);
    std::erase_if(g.steps, [&](const auto& s) { return s.first[0] == L->bot(); });
    bool ext = rng() & 1u;
    auto gf = as_function(L, 1, g);
    auto cand = UpToFunction(
        L,
        [L, gf, ext](const Element& x) {
          std::vector<Element> a{x};
          return ext ? L->join(x, gf(a)) : gf(a);
        },
        ext ? "x|steps" : "steps");
    auto trial = out;
    trial[i] = cand;
    if (check_compatibility(sys, trial).ok()) out = std::move(trial);
  }
  return out;
}

}  // namespace fixgame::testing
