#pragma once

#include "fixgame/eqsys.hpp"
#include "fixgame/lattice.hpp"

#include <vector>

namespace fixgame::testing {

// The five-state system a→{a,b,c}, b→{d,e}, c→c, d→d, e→e with p = {b,d,e},
// written by hand so that front-end translations can be compared to it.
struct Fig3a {
  ChainProductPtr L = make_powerset({"a", "b", "c", "d", "e"});
  std::vector<std::vector<std::size_t>> succ{{0, 1, 2}, {3, 4}, {2}, {3}, {4}};
  Element p = L->from_members(std::vector<std::size_t>{1, 3, 4});

  Element box(const Element& y) const {
    Element out = L->bot();
    for (std::size_t x = 0; x < succ.size(); ++x) {
      bool all = true;
      for (auto s : succ[x])
        if (!y.v[s]) all = false;
      out.v[x] = all;
    }
    return out;
  }

  Element dia(const Element& y) const {
    Element out = L->bot();
    for (std::size_t x = 0; x < succ.size(); ++x)
      for (auto s : succ[x])
        if (y.v[s]) out.v[x] = 1;
    return out;
  }

  Element set(std::initializer_list<std::size_t> xs) const {
    std::vector<std::size_t> v(xs);
    return L->from_members(v);
  }

  // b ∼ d ∼ e, a and c alone
  std::vector<std::vector<bool>> bisimilar() const {
    std::vector<int> cls{0, 1, 2, 1, 1};
    std::vector<std::vector<bool>> r(5, std::vector<bool>(5));
    for (std::size_t x = 0; x < 5; ++x)
      for (std::size_t y = 0; y < 5; ++y) r[x][y] = cls[x] == cls[y];
    return r;
  }

  // x1 =ν p ∩ ■x1 ; x2 =μ x1 ∪ ♦x2
  EquationSystem system() const {
    auto self = *this;
    std::vector<Equation<Element>> eqs;
    eqs.push_back({"x1", Sign::nu,
                   {2, [self](std::span<const Element> x) { return self.L->meet(self.p, self.box(x[0])); },
                    "p & []x1"}});
    eqs.push_back({"x2", Sign::mu,
                   {2, [self](std::span<const Element> x) { return self.L->join(x[0], self.dia(x[1])); },
                    "x1 | <>x2"}});
    return EquationSystem(L, std::move(eqs));
  }
};

inline Rational luk_oplus(const Rational& x, const Rational& y) { return std::min<Rational>(x + y, 1); }
inline Rational luk_odot(const Rational& x, const Rational& y) { return std::max<Rational>(x + y - 1, 0); }

// x1 =μ (5/8 ⊕ 3/8·x2) ⊙ (1/2 ⊔ (3/8 ⊕ 1/2·x1)) ; x2 =ν x1
inline RealSystem ex36_real() {
  auto L = make_unit_interval();
  std::vector<Equation<RealVector>> eqs;
  eqs.push_back({"x1", Sign::mu,
                 {2,
                  [](std::span<const RealVector> x) {
                    Rational a = luk_oplus(Rational(5, 8), Rational(3, 8) * x[1].v[0]);
                    Rational b = std::max<Rational>(Rational(1, 2), luk_oplus(Rational(3, 8), Rational(1, 2) * x[0].v[0]));
                    return RealVector{{luk_odot(a, b)}};
                  },
                  "ex36"}});
  eqs.push_back({"x2", Sign::nu, {2, [](std::span<const RealVector> x) { return x[0]; }, "x1"}});
  return RealSystem(L, std::move(eqs));
}

}  // namespace fixgame::testing
