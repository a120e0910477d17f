#include "doctest.h"

#include "fixgame/abstraction.hpp"
#include "fixtures.hpp"
#include "support.hpp"

using namespace fixgame;
using namespace fixgame::testing;

namespace {

std::vector<std::pair<std::size_t, std::size_t>> identity_relation(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> r;
  for (std::size_t i = 0; i < n; ++i) r.emplace_back(i, i);
  return r;
}

// The quotient of the five-state system by bisimilarity: A={a}, B={b,d,e}, C={c}.
struct Quotient {
  ChainProductPtr L = make_powerset({"A", "B", "C"});
  std::vector<std::vector<std::size_t>> succ{{0, 1, 2}, {1}, {2}};
  std::vector<std::pair<std::size_t, std::size_t>> R{{0, 0}, {1, 1}, {2, 2}, {3, 1}, {4, 1}};

  Element dia(const Element& y) const {
    Element out = L->bot();
    for (std::size_t x = 0; x < succ.size(); ++x)
      for (auto s : succ[x])
        if (y.v[s]) out.v[x] = 1;
    return out;
  }
};

MonotoneFunction<Element> unary(std::size_t m, std::function<Element(const Element&)> f, std::size_t arg = 0) {
  return {m, [f, arg](std::span<const Element> x) { return f(x[arg]); }, "unary"};
}

MonotoneFunction<Element> binary(std::function<Element(const Element&, const Element&)> f) {
  return {2, [f](std::span<const Element> x) { return f(x[0], x[1]); }, "binary"};
}

std::int64_t lvl(const Element& e) { return e.v[0]; }

}  // namespace

TEST_CASE("named connections verify") {
  for (const auto& L : small_lattices()) {
    auto rep = verify_connection(join_connection(L));
    CHECK(rep.ok());
    CHECK(rep.insertion);
    CHECK(rep.exhaustive);
    auto id = verify_connection(identity_connection<Element>(L));
    CHECK(id.ok());
    CHECK(id.insertion);
  }
  auto g = verify_connection(grid_refinement(100, 10));
  CHECK(g.ok());
  CHECK(g.insertion);
  CHECK(g.exhaustive);

  auto real = verify_connection(grid_alpha(10));
  CHECK(real.ok());
  CHECK(real.insertion);
  CHECK_FALSE(real.exhaustive);
  CHECK(grid_alpha(10).alpha(RealVector{{Rational(1, 5)}}) == Element{{2}});
  CHECK(grid_alpha(10).alpha(RealVector{{Rational(201, 1000)}}) == Element{{3}});

  auto pw = grid_alpha(15, {"a", "b"});
  CHECK(pw.alpha(RealVector{{Rational(1, 4), Rational(0)}}) == Element{{4, 0}});
  CHECK(verify_connection(pw).ok());
}

TEST_CASE("broken connections are reported") {
  auto gc = grid_refinement(100, 10);
  gc.alpha = [](const Element& x) { return Element{{x.v[0] / 10}}; };  // floor instead of ceiling
  auto rep = verify_connection(gc);
  CHECK_FALSE(rep.adjoint);
  CHECK_FALSE(rep.violations.empty());

  auto P = make_powerset({"p", "q"});
  GaloisConnection top{P, P, [P](const Element&) { return P->top(); }, [P](const Element& x) { return x; }, "top",
                       true};
  auto t = verify_connection(top);
  CHECK_FALSE(t.adjoint);
  CHECK_FALSE(t.alpha_strict);
  CHECK_FALSE(t.insertion);
}

TEST_CASE("simulation connections") {
  Fig3a t;
  auto id = simulation_connection(t.L, t.L, identity_relation(5));
  std::mt19937_64 rng(41);
  for (int k = 0; k < 50; ++k) {
    auto x = t.L->random_element(rng);
    CHECK(id.alpha(x) == x);
    CHECK(id.gamma(x) == x);
  }

  Quotient q;
  auto gc = simulation_connection(t.L, q.L, q.R);
  CHECK(verify_connection(gc).adjoint);
  CHECK(gc.alpha(t.set({3})) == q.L->from_members(std::vector<std::size_t>{1}));

  // α ∘ ♦_C ⊆ ♦_A ∘ α on x =μ ♦x
  EquationSystem ec(t.L, {{"x", Sign::mu, unary(1, [t](const Element& y) { return t.dia(y); })}});
  EquationSystem ea(q.L, {{"x", Sign::mu, unary(1, [q](const Element& y) { return q.dia(y); })}});
  AbstractedSystem<Element, Element> abs(ec, ea, {gc});
  auto s = check_soundness(abs);
  CHECK(s.holds());
  CHECK(s.alpha_form.exhaustive);
  CHECK(s.gamma_form.ok());

  // an abstract diamond that forgets the edge B→B is no longer sound
  EquationSystem bad(q.L, {{"x", Sign::mu, unary(1, [q](const Element& y) {
                                    Element out = q.dia(y);
                                    if (y.v[1] && !y.v[0]) out.v[1] = 0;
                                    return out;
                                  })}},
                     ValidationOptions{false});
  auto b = check_soundness(AbstractedSystem<Element, Element>(ec, bad, {gc}));
  CHECK_FALSE(b.holds());
  REQUIRE(b.witness());
  CHECK(b.witness()->index == 0);
}

TEST_CASE("diamond-only formulas are preserved by the quotient") {
  Fig3a t;
  Quotient q;
  auto gc = simulation_connection(t.L, q.L, q.R);
  // x1 =ν p ∩ ♦x1 ; x2 =μ x1 ∪ ♦x2, with p interpreted as α(p) in the quotient
  Element pa = gc.alpha(t.p);
  std::vector<Equation<Element>> c, a;
  c.push_back({"x1", Sign::nu, binary([t](const Element& x1, const Element&) { return t.L->meet(t.p, t.dia(x1)); })});
  c.push_back({"x2", Sign::mu, binary([t](const Element& x1, const Element& x2) { return t.L->join(x1, t.dia(x2)); })});
  a.push_back({"x1", Sign::nu, binary([q, pa](const Element& x1, const Element&) { return q.L->meet(pa, q.dia(x1)); })});
  a.push_back({"x2", Sign::mu, binary([q](const Element& x1, const Element& x2) { return q.L->join(x1, q.dia(x2)); })});
  AbstractedSystem<Element, Element> abs(EquationSystem(t.L, c), EquationSystem(q.L, a), {gc, gc});
  auto rep = verify_solution_relation(abs);
  CHECK(rep.soundness.holds());
  CHECK(rep.sound_inequality);
  CHECK(rep.ok());
  for (std::size_t s : t.L->members(rep.concrete[1]))
    for (std::size_t x : q.L->members(gc.alpha(t.set({s})))) CHECK(rep.abstract[1].v[x] == 1);
}

TEST_CASE("identity abstraction is complete on both sides") {
  std::mt19937_64 rng(42);
  for (int n = 0; n < 40; ++n) {
    auto sys = random_system(rng);
    auto id = identity_connection<Element>(sys.lattice_ptr());
    AbstractedSystem<Element, Element> abs(sys, sys, std::vector<GaloisConnection>(sys.size(), id));
    CHECK(check_soundness(abs).holds());
    CHECK(check_completeness(abs, CompletenessSide::abstraction).ok());
    CHECK(check_completeness(abs, CompletenessSide::concretisation).ok());
    auto best = best_abstraction(sys, std::vector<GaloisConnection>(sys.size(), id));
    CHECK(solve(best) == solve(sys));
  }
}

TEST_CASE("best abstraction is sound and least") {
  std::mt19937_64 rng(43);
  int perturbed = 0;
  for (int n = 0; n < 120; ++n) {
    auto L = random_small_lattice(rng);
    if (L->basis().size() > 4) continue;
    auto gc = join_connection(L);
    auto P = std::dynamic_pointer_cast<const ChainProductLattice>(gc.concrete);
    std::size_t m = 1 + rng() % 2;
    auto ec = random_system(rng, gc.concrete, m);
    std::vector<GaloisConnection> gcs(m, gc);
    auto best = best_abstraction(ec, gcs);
    AbstractedSystem<Element, Element> abs(ec, best, gcs);
    auto s = check_soundness(abs);
    CHECK(s.holds());
    CHECK(s.alpha_form.exhaustive);
    CHECK(verify_solution_relation(abs).sound_inequality);

    // lower one value of f# and soundness breaks
    auto a = random_tuple(*L, m, rng);
    std::size_t i = rng() % m;
    Element v = best.eval(i, a);
    if (v == L->bot()) continue;
    Element lower = L->bot();
    auto elems = *L->elements(64);
    for (const auto& y : elems)
      if (L->leq(y, v) && y != v && L->leq(lower, y)) lower = y;
    std::vector<Equation<Element>> eqs = best.equations();
    auto f = eqs[i].f.eval;
    eqs[i].f.eval = [f, a, lower](std::span<const Element> x) {
      return std::equal(x.begin(), x.end(), a.begin()) ? lower : f(x);
    };
    EquationSystem worse(best.lattice_ptr(), eqs, ValidationOptions{false});
    CHECK_FALSE(check_soundness(AbstractedSystem<Element, Element>(ec, worse, gcs)).holds());
    ++perturbed;
  }
  CHECK(perturbed > 20);
}

TEST_CASE("soundness implies the solution inequality") {
  std::mt19937_64 rng(44);
  int sound = 0;
  for (int n = 0; n < 200; ++n) {
    auto L = random_small_lattice(rng);
    if (L->basis().size() > 4) continue;
    auto gc = join_connection(L);
    std::size_t m = 1 + rng() % 2;
    auto ec = random_system(rng, gc.concrete, m);
    std::vector<GaloisConnection> gcs(m, gc);
    auto best = best_abstraction(ec, gcs);
    // half the time an over-approximation of f#, otherwise an unrelated system
    std::vector<Equation<Element>> eqs;
    bool above = rng() & 1u;
    for (std::size_t i = 0; i < m; ++i) {
      auto extra = as_function(L, m, random_steps(*L, m, rng));
      MonotoneFunction<Element> f = extra;
      if (above) {
        auto b = best.equation(i).f.eval;
        f.eval = [b, extra, L](std::span<const Element> x) { return L->join(b(x), extra(x)); };
      }
      eqs.push_back({"x", ec.sign(i), f});
    }
    AbstractedSystem<Element, Element> abs(ec, EquationSystem(L, eqs), gcs);
    auto rep = verify_solution_relation(abs);
    if (above) CHECK(rep.soundness.holds());
    if (rep.soundness.holds()) {
      CHECK(rep.sound_inequality);
      ++sound;
    }
    CHECK(rep.ok());
  }
  CHECK(sound > 50);
}

TEST_CASE("grid abstraction of Lukasiewicz operators") {
  auto gc = grid_refinement(100, 10);
  auto C = gc.concrete;
  auto A = gc.abstract;
  auto lift = [](LatticePtr L, std::int64_t n, auto op) {
    return binary([L, n, op](const Element& x, const Element& y) {
      Rational r = op(Rational(lvl(x), n), Rational(lvl(y), n));
      return Element{{static_cast<std::int64_t>(numerator(ceil_to_grid(r, n) * n))}};
    });
  };
  auto oplus = [](const Rational& x, const Rational& y) { return luk_oplus(x, y); };
  auto sys = [&](LatticePtr L, std::int64_t n, auto op) {
    return EquationSystem(L, {{"x1", Sign::mu, lift(L, n, op)}, {"x2", Sign::nu, lift(L, n, op)}});
  };

  AbstractedSystem<Element, Element> plus(sys(C, 100, oplus), sys(A, 10, oplus), {gc, gc});
  CHECK(check_soundness(plus).holds());
  auto comp = check_completeness(plus, CompletenessSide::abstraction);
  CHECK_FALSE(comp.holds);
  REQUIRE(comp.witness);
  CHECK(comp.witness->tuple == std::vector<std::string>{"0.01", "0.01"});
  CHECK(comp.witness->lhs == "0.2");
  CHECK(comp.witness->rhs == "0.1");

  for (auto op : {+[](const Rational& x, const Rational& y) { return std::max(x, y); },
                  +[](const Rational& x, const Rational& y) { return std::min(x, y); }}) {
    AbstractedSystem<Element, Element> j(sys(C, 100, op), sys(A, 10, op), {gc, gc});
    CHECK(check_soundness(j).holds());
    CHECK(check_completeness(j, CompletenessSide::abstraction).ok());
  }

  // r·# x = α(r·x) is sound but not complete either
  auto scale = [](const Rational& x, const Rational&) { return x * Rational(9, 10); };
  AbstractedSystem<Element, Element> sc(sys(C, 100, scale), sys(A, 10, scale), {gc, gc});
  CHECK(check_soundness(sc).holds());
  CHECK_FALSE(check_completeness(sc, CompletenessSide::abstraction).holds);
}

TEST_CASE("whole-system best abstraction of the Lukasiewicz example") {
  auto gc = grid_alpha(1000);
  auto sys = ex36_real();
  auto best = best_abstraction(sys, std::vector<RealGaloisConnection>(2, gc));
  auto sol = solve(best);
  CHECK(sol == std::vector<Element>{Element{{201}}, Element{{201}}});
  AbstractedSystem<RealVector, Element> abs(sys, best, {gc, gc});
  CheckLimits lim;
  lim.tuple_limit = 20000;
  CHECK(check_soundness(abs, lim).holds());
  auto rep = verify_solution_relation(abs, std::vector<RealVector>(2, RealVector{{Rational(1, 5)}}), lim);
  CHECK(rep.sound_inequality);
  CHECK(rep.ok());
  CHECK_THROWS_AS(verify_solution_relation(abs), UnsupportedOperation);
}

TEST_CASE("abstracted systems must line up") {
  Fig3a t;
  auto sys = t.system();
  auto id = identity_connection<Element>(t.L);
  using Abs = AbstractedSystem<Element, Element>;
  CHECK_THROWS_AS(Abs(sys, sys, {id}), InvalidArgument);
  EquationSystem flipped(t.L, {{"x1", Sign::mu, sys.equation(0).f}, {"x2", Sign::mu, sys.equation(1).f}});
  CHECK_THROWS_AS(Abs(sys, flipped, {id, id}), InvalidArgument);
}
