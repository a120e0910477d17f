#include "doctest.h"

#include "fixgame/eqsys.hpp"
#include "fixtures.hpp"
#include "support.hpp"

using namespace fixgame;
using namespace fixgame::testing;

TEST_CASE("substitute") {
  Fig3a t;
  auto sys = t.system();
  auto one = substitute(sys, 1, t.set({0, 1, 3, 4}));
  CHECK(one.size() == 1);
  CHECK(solve(one) == std::vector<Element>{t.set({1, 3, 4})});
  CHECK(substitute(one, 0, t.L->top()).empty());
  CHECK_THROWS_AS(substitute(sys, 2, t.L->top()), InvalidArgument);

  // a larger substituted value gives pointwise larger residual functions
  auto lo = substitute(sys, 0, t.set({1}));
  auto hi = substitute(sys, 0, t.set({1, 3}));
  std::mt19937_64 rng(3);
  for (int k = 0; k < 50; ++k) {
    std::vector<Element> x{t.L->random_element(rng)};
    CHECK(t.L->leq(lo.eval(0, x), hi.eval(0, x)));
  }
}

TEST_CASE("kleene") {
  auto g = make_grid(10);
  std::function<Element(const Element&)> id = [](const Element& x) { return x; };
  CHECK(kleene(*g, id, Sign::mu) == g->bot());
  CHECK(kleene(*g, id, Sign::nu) == g->top());

  Fig3a t;
  std::function<Element(const Element&)> box = [&](const Element& x) { return t.L->meet(t.p, t.box(x)); };
  CHECK(kleene(*t.L, box, Sign::nu) == t.set({1, 3, 4}));

  std::function<Element(const Element&)> half = [&](const Element& x) { return g->meet(x, Element{{5}}); };
  CHECK(kleene(*g, half, Sign::nu) == brute_fixpoint(*g, half, Sign::nu));
  CHECK(kleene(*g, half, Sign::nu) == Element{{5}});

  auto I = make_unit_interval();
  std::function<RealVector(const RealVector&)> f = [](const RealVector& x) { return x; };
  CHECK_THROWS_AS(kleene(*I, f, Sign::mu), UnsupportedOperation);
  std::function<RealVector(const RealVector&)> halve = [](const RealVector& x) {
    return RealVector{{(x.v[0] + 1) / 2}};
  };
  CHECK_THROWS_AS(kleene(*I, halve, Sign::mu, 10), NonConvergence<RealVector>);
  try {
    kleene(*I, halve, Sign::mu, 3);
  } catch (const NonConvergence<RealVector>& e) {
    CHECK(e.last().v[0] == Rational(7, 8));
  }
}

TEST_CASE("kleene agrees with Knaster-Tarski on small lattices") {
  std::mt19937_64 rng(11);
  for (int n = 0; n < 300; ++n) {
    auto L = random_small_lattice(rng);
    auto f = as_function(L, 1, random_steps(*L, 1, rng, 4));
    std::function<Element(const Element&)> g = [&](const Element& x) {
      std::vector<Element> a{x};
      return f(a);
    };
    for (Sign s : {Sign::mu, Sign::nu}) {
      Element r = kleene(*L, g, s);
      CHECK(g(r) == r);
      CHECK(r == brute_fixpoint(*L, g, s));
    }
  }
}

TEST_CASE("solve") {
  Fig3a t;
  auto sol = solve(t.system());
  CHECK(sol == std::vector<Element>{t.set({1, 3, 4}), t.set({0, 1, 3, 4})});
  EquationSystem empty(t.L, {});
  CHECK(solve(empty).empty());
}

TEST_CASE("solve agrees with the unmemoized recursion") {
  std::mt19937_64 rng(12);
  for (int n = 0; n < 200; ++n) {
    auto sys = random_system(rng);
    CHECK(solve(sys) == brute_solve(sys));
  }
}

TEST_CASE("solve is monotone in each function") {
  std::mt19937_64 rng(13);
  for (int n = 0; n < 150; ++n) {
    auto L = random_small_lattice(rng);
    std::size_t m = 1 + rng() % 3;
    std::vector<StepFunction> fs;
    std::vector<Sign> signs;
    for (std::size_t i = 0; i < m; ++i) {
      fs.push_back(random_steps(*L, m, rng));
      signs.push_back(rng() & 1u ? Sign::mu : Sign::nu);
    }
    auto build = [&](const std::vector<StepFunction>& v) {
      std::vector<Equation<Element>> eqs;
      for (std::size_t i = 0; i < m; ++i) eqs.push_back({"x", signs[i], as_function(L, m, v[i])});
      return EquationSystem(L, std::move(eqs));
    };
    auto bigger = fs;
    std::size_t i = rng() % m;
    bigger[i].steps.emplace_back(random_tuple(*L, m, rng), L->random_element(rng));
    auto a = solve(build(fs)), b = solve(build(bigger));
    for (std::size_t j = 0; j < m; ++j) CHECK(L->leq(a[j], b[j]));
  }
}

TEST_CASE("equation order matters") {
  auto L = make_chain(2);
  auto proj = [&](std::size_t j) {
    return MonotoneFunction<Element>{2, [j](std::span<const Element> x) { return x[j]; }, "proj"};
  };
  EquationSystem ab(L, {{"x1", Sign::mu, proj(1)}, {"x2", Sign::nu, proj(0)}});
  EquationSystem ba(L, {{"x1", Sign::nu, proj(1)}, {"x2", Sign::mu, proj(0)}});
  CHECK(solve(ab) == std::vector<Element>{L->top(), L->top()});
  CHECK(solve(ba) == std::vector<Element>{L->bot(), L->bot()});

  // and a randomly found instance where swapping two equations changes the solution
  std::mt19937_64 rng(14);
  bool found = false;
  for (int n = 0; n < 500 && !found; ++n) {
    auto sys = random_system(rng, random_small_lattice(rng), 2);
    std::vector<Equation<Element>> swapped;
    for (std::size_t i : {1u, 0u}) {
      auto eq = sys.equation(i);
      auto f = eq.f.eval;
      eq.f.eval = [f](std::span<const Element> x) {
        std::vector<Element> y{x[1], x[0]};
        return f(y);
      };
      swapped.push_back(eq);
    }
    auto s1 = solve(sys);
    auto s2 = solve(EquationSystem(sys.lattice_ptr(), swapped));
    found = s1 != std::vector<Element>{s2[1], s2[0]};
  }
  CHECK(found);
}

TEST_CASE("monotonicity is validated") {
  auto L = make_chain(3);
  MonotoneFunction<Element> flip{1, [](std::span<const Element> x) { return Element{{2 - x[0].v[0]}}; }, "flip"};
  CHECK_THROWS_AS(EquationSystem(L, {{"x", Sign::mu, flip}}), NotMonotone);
  MonotoneFunction<Element> wrong{2, [](std::span<const Element> x) { return x[0]; }, "arity"};
  CHECK_THROWS_AS(EquationSystem(L, {{"x", Sign::mu, wrong}}), InvalidArgument);
}

TEST_CASE("epsilon iteration") {
  auto r = solve_epsilon(ex36_real(), Rational(1, 1000000), 100000);
  CHECK(r.converged);
  CHECK_FALSE(r.exact);
  for (const auto& v : r.values) {
    Rational d = v.v[0] - Rational(1, 5);
    if (d < 0) d = -d;
    CHECK(d <= Rational(1, 1000000));
  }
  CHECK(r.loops[0].invocations > 1);

  auto I = make_unit_interval();
  RealSystem c(I, {{"x", Sign::mu, constant_function<RealVector>(1, RealVector{{Rational(1, 2)}}, "0.5")}});
  auto rc = solve_epsilon(c, Rational(1, 1000000), 10);
  CHECK(rc.exact);
  CHECK(rc.values[0].v[0] == Rational(1, 2));
  CHECK(rc.loops[0].total_iterations == 1);

  RealSystem slow(I, {{"x", Sign::mu, {1, [](std::span<const RealVector> x) { return RealVector{{(x[0].v[0] + 1) / 2}}; }, "slow"}}});
  auto rs = solve_epsilon(slow, Rational(1, 1000000), 5);
  CHECK_FALSE(rs.converged);
  CHECK(rs.values[0].v[0] == Rational(31, 32));
  CHECK(rs.loops[0].budget_exhausted == 1);
  CHECK_THROWS_AS(solve_epsilon(slow, Rational(0), 5), InvalidArgument);
}
