#pragma once

#include "fixgame/eqsys.hpp"
#include "fixgame/lattice.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace fixgame {

// ⟨α, γ⟩ : C → A. Either map may be left empty when only one side is used
// (soundness through a bare concretisation, for instance).
template <class C, class A>
struct BasicGaloisConnection {
  std::shared_ptr<const BasicLattice<C>> concrete;
  std::shared_ptr<const BasicLattice<A>> abstract;
  std::function<A(const C&)> alpha;
  std::function<C(const A&)> gamma;
  std::string name;
  bool insertion = false;
};

using GaloisConnection = BasicGaloisConnection<Element, Element>;
using RealGaloisConnection = BasicGaloisConnection<RealVector, Element>;

struct CheckLimits {
  std::size_t element_limit = 4096;
  std::size_t tuple_limit = 1u << 18;
  std::size_t subset_limit = 12;  // enumerate directed subsets up to this many elements
  std::size_t samples = 48;       // elements drawn from a lattice that cannot be enumerated
  std::size_t sampled_tuples = 4096;
  std::uint64_t seed = 0x61627374u;
};

struct ConnectionReport {
  bool exhaustive = true;
  bool adjoint = true;
  bool insertion = true;
  bool alpha_strict = true;
  bool alpha_joins = true;
  bool alpha_continuous = true;
  bool gamma_costrict = true;
  bool gamma_meets = true;
  bool gamma_cocontinuous = true;
  std::size_t pairs_checked = 0;
  std::vector<std::string> violations;

  bool ok() const {
    return adjoint && alpha_strict && alpha_joins && alpha_continuous && gamma_costrict && gamma_meets &&
           gamma_cocontinuous;
  }
};

struct ConditionWitness {
  std::size_t index = 0;
  std::vector<std::string> tuple;
  std::string lhs, rhs;

  std::string describe() const;
};

struct ConditionReport {
  bool holds = true;
  bool exhaustive = true;
  std::size_t tuples_checked = 0;
  std::optional<ConditionWitness> witness;
  bool obligations = true;
  std::vector<std::string> obligation_failures;

  bool ok() const { return holds && obligations; }
};

struct SoundnessReport {
  ConditionReport alpha_form;  // α⃗ ∘ f⃗^C ≤ f⃗^A ∘ α⃗
  ConditionReport gamma_form;  // f⃗^C ∘ γ⃗ ⊑ γ⃗ ∘ f⃗^A
  bool alpha_checked = false, gamma_checked = false;

  bool holds() const { return (alpha_checked && alpha_form.ok()) || (gamma_checked && gamma_form.ok()); }
  const std::optional<ConditionWitness>& witness() const {
    return alpha_checked ? alpha_form.witness : gamma_form.witness;
  }
};

enum class CompletenessSide { abstraction, concretisation };

template <class C, class A>
class AbstractedSystem {
 public:
  AbstractedSystem(BasicEquationSystem<C> concrete, BasicEquationSystem<A> abstract,
                   std::vector<BasicGaloisConnection<C, A>> connections)
      : concrete_(std::move(concrete)), abstract_(std::move(abstract)), connections_(std::move(connections)) {
    if (concrete_.size() != abstract_.size() || connections_.size() != concrete_.size())
      throw InvalidArgument("abstracted system: concrete, abstract and connection counts differ");
    for (std::size_t i = 0; i < concrete_.size(); ++i)
      if (concrete_.sign(i) != abstract_.sign(i))
        throw InvalidArgument("abstracted system: sign mismatch at equation " + std::to_string(i + 1));
  }

  const BasicEquationSystem<C>& concrete() const { return concrete_; }
  const BasicEquationSystem<A>& abstract() const { return abstract_; }
  const std::vector<BasicGaloisConnection<C, A>>& connections() const { return connections_; }
  std::size_t size() const { return concrete_.size(); }

 private:
  BasicEquationSystem<C> concrete_;
  BasicEquationSystem<A> abstract_;
  std::vector<BasicGaloisConnection<C, A>> connections_;
};

namespace detail {

template <class E>
std::string format_tuple(const BasicLattice<E>& L, const std::vector<E>& xs) {
  std::string out = "(";
  for (std::size_t j = 0; j < xs.size(); ++j) out += (j ? ", " : "") + L.format(xs[j]);
  return out + ")";
}

// Calls fn on every m-tuple over xs, or on `limit` random ones when there are
// more. Returns whether the enumeration was exhaustive. fn returns false to stop.
template <class E, class Fn>
bool for_each_tuple(const std::vector<E>& xs, std::size_t m, std::size_t limit, std::mt19937_64& rng,
                    bool xs_complete, Fn&& fn) {
  double count = 1;
  for (std::size_t j = 0; j < m; ++j) count *= static_cast<double>(xs.size());
  std::vector<E> t(m);
  if (count <= static_cast<double>(limit)) {
    std::vector<std::size_t> idx(m, 0);
    while (true) {
      for (std::size_t j = 0; j < m; ++j) t[j] = xs[idx[j]];
      if (!fn(t)) return xs_complete;
      std::size_t j = 0;
      while (j < m && ++idx[j] == xs.size()) idx[j++] = 0;
      if (j == m) return xs_complete;
    }
  }
  std::uniform_int_distribution<std::size_t> pick(0, xs.size() - 1);
  for (std::size_t s = 0; s < limit; ++s) {
    for (std::size_t j = 0; j < m; ++j) t[j] = xs[pick(rng)];
    if (!fn(t)) break;
  }
  return false;
}

// Non-empty subsets of xs that are directed (every pair has an upper bound
// in the subset), or codirected when `down`. In a finite set this means the
// subset has a greatest (least) element.
template <class E, class Fn>
void for_each_directed(const BasicLattice<E>& L, const std::vector<E>& xs, bool down, Fn&& fn) {
  const std::size_t n = xs.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<E> d;
    for (std::size_t j = 0; j < n; ++j)
      if (mask >> j & 1u) d.push_back(xs[j]);
    bool directed = std::any_of(d.begin(), d.end(), [&](const E& top) {
      return std::all_of(d.begin(), d.end(), [&](const E& y) { return down ? L.leq(top, y) : L.leq(y, top); });
    });
    if (directed) fn(d);
  }
}

// f : X → Y preserves joins of directed subsets (meets of codirected ones when
// `down`). Exhaustive over subsets for small element lists, pairs otherwise.
template <class X, class Y>
bool preserves_directed(const BasicLattice<X>& LX, const BasicLattice<Y>& LY, const std::function<Y(const X&)>& f,
                        const std::vector<X>& xs, bool down, std::size_t subset_limit, std::size_t pair_limit,
                        std::string* failure) {
  auto check = [&](const std::vector<X>& d) {
    X lim = down ? LX.meet_all(d) : LX.join_all(d);
    std::vector<Y> img;
    for (const auto& x : d) img.push_back(f(x));
    Y want = down ? LY.meet_all(img) : LY.join_all(img);
    if (LY.eq(f(lim), want)) return true;
    if (failure) *failure = "on " + format_tuple(LX, d);
    return false;
  };
  if (xs.size() <= subset_limit) {
    bool ok = true;
    for_each_directed(LX, xs, down, [&](const std::vector<X>& d) {
      if (ok) ok = check(d);
    });
    return ok;
  }
  std::mt19937_64 rng(xs.size());
  bool ok = true;
  for_each_tuple(xs, 2, pair_limit, rng, true, [&](const std::vector<X>& p) {
    if (LX.leq(p[0], p[1]) && !check(p)) ok = false;
    return ok;
  });
  return ok;
}

template <class E>
std::vector<E> check_elements(const BasicLattice<E>& L, std::mt19937_64& rng, const CheckLimits& limits,
                              bool& complete) {
  auto all = L.elements(limits.element_limit);
  complete = all.has_value();
  return all ? *all : L.test_elements(rng, limits.samples);
}

}  // namespace detail

template <class C, class A>
ConnectionReport verify_connection(const BasicGaloisConnection<C, A>& gc, CheckLimits limits = {}) {
  if (!gc.concrete || !gc.abstract || !gc.alpha || !gc.gamma)
    throw InvalidArgument("verify_connection needs both lattices and both maps");
  const auto& LC = *gc.concrete;
  const auto& LA = *gc.abstract;
  std::mt19937_64 rng(limits.seed);
  ConnectionReport rep;
  bool cc = false, ca = false;
  auto cs = detail::check_elements(LC, rng, limits, cc);
  auto as = detail::check_elements(LA, rng, limits, ca);
  rep.exhaustive = cc && ca;

  std::vector<A> alpha_of;
  for (const auto& c : cs) alpha_of.push_back(gc.alpha(c));
  std::vector<C> gamma_of;
  for (const auto& a : as) gamma_of.push_back(gc.gamma(a));

  for (std::size_t x = 0; x < cs.size() && rep.adjoint; ++x)
    for (std::size_t y = 0; y < as.size(); ++y) {
      ++rep.pairs_checked;
      if (LA.leq(alpha_of[x], as[y]) != LC.leq(cs[x], gamma_of[y])) {
        rep.adjoint = false;
        rep.violations.push_back("adjunction fails for c = " + LC.format(cs[x]) + ", a = " + LA.format(as[y]));
        break;
      }
    }
  for (std::size_t y = 0; y < as.size(); ++y)
    if (!LA.eq(gc.alpha(gamma_of[y]), as[y])) {
      rep.insertion = false;
      if (gc.insertion)
        rep.violations.push_back("declared insertion but alpha(gamma(" + LA.format(as[y]) + ")) = " +
                                 LA.format(gc.alpha(gamma_of[y])));
      break;
    }

  if (!LA.eq(gc.alpha(LC.bot()), LA.bot())) {
    rep.alpha_strict = false;
    rep.violations.push_back("alpha is not strict");
  }
  if (!LC.eq(gc.gamma(LA.top()), LC.top())) {
    rep.gamma_costrict = false;
    rep.violations.push_back("gamma is not co-strict");
  }
  for (std::size_t x = 0; x < cs.size() && rep.alpha_joins; ++x)
    for (std::size_t z = 0; z < cs.size(); ++z)
      if (!LA.eq(gc.alpha(LC.join(cs[x], cs[z])), LA.join(alpha_of[x], alpha_of[z]))) {
        rep.alpha_joins = false;
        rep.violations.push_back("alpha does not preserve the join of " + LC.format(cs[x]) + " and " +
                                 LC.format(cs[z]));
        break;
      }
  for (std::size_t x = 0; x < as.size() && rep.gamma_meets; ++x)
    for (std::size_t z = 0; z < as.size(); ++z)
      if (!LC.eq(gc.gamma(LA.meet(as[x], as[z])), LC.meet(gamma_of[x], gamma_of[z]))) {
        rep.gamma_meets = false;
        rep.violations.push_back("gamma does not preserve the meet of " + LA.format(as[x]) + " and " +
                                 LA.format(as[z]));
        break;
      }
  std::string why;
  if (!detail::preserves_directed<C, A>(LC, LA, gc.alpha, cs, false, limits.subset_limit, limits.tuple_limit, &why)) {
    rep.alpha_continuous = false;
    rep.violations.push_back("alpha is not continuous " + why);
  }
  if (!detail::preserves_directed<A, C>(LA, LC, gc.gamma, as, true, limits.subset_limit, limits.tuple_limit, &why)) {
    rep.gamma_cocontinuous = false;
    rep.violations.push_back("gamma is not co-continuous " + why);
  }
  return rep;
}

namespace detail {

// Obligations on the i-th map at the indices of one sign.
template <class X, class Y>
void map_obligations(const BasicLattice<X>& LX, const BasicLattice<Y>& LY, const std::function<Y(const X&)>& f,
                     bool down, const std::string& label, const CheckLimits& limits, std::mt19937_64& rng,
                     ConditionReport& rep) {
  if (!f) {
    rep.obligations = false;
    rep.obligation_failures.push_back(label + " is missing");
    return;
  }
  bool strict = down ? LY.eq(f(LX.top()), LY.top()) : LY.eq(f(LX.bot()), LY.bot());
  if (!strict) {
    rep.obligations = false;
    rep.obligation_failures.push_back(label + (down ? " is not co-strict" : " is not strict"));
  }
  bool complete = false;
  auto xs = check_elements(LX, rng, limits, complete);
  std::string why;
  if (!preserves_directed<X, Y>(LX, LY, f, xs, down, limits.subset_limit, limits.tuple_limit, &why)) {
    rep.obligations = false;
    rep.obligation_failures.push_back(label + (down ? " is not co-continuous " : " is not continuous ") + why);
  }
  if (!complete) rep.exhaustive = false;
}

// Checks lhs_i(t) ≤ rhs_i(t) on tuples over X, comparing in lattice Z.
template <class X, class Z, class L, class R>
void tuple_condition(const BasicLattice<X>& LX, const BasicLattice<Z>& LZ, std::size_t m, const CheckLimits& limits,
                     std::mt19937_64& rng, L&& lhs, R&& rhs, ConditionReport& rep) {
  bool complete = false;
  auto xs = check_elements(LX, rng, limits, complete);
  bool exhaustive = for_each_tuple(xs, m, complete ? limits.tuple_limit : limits.sampled_tuples, rng, complete, [&](const std::vector<X>& t) {
    ++rep.tuples_checked;
    for (std::size_t i = 0; i < m; ++i) {
      Z l = lhs(i, t), r = rhs(i, t);
      if (!LZ.leq(l, r)) {
        rep.holds = false;
        ConditionWitness w;
        w.index = i;
        for (const auto& x : t) w.tuple.push_back(LX.format(x));
        w.lhs = LZ.format(l);
        w.rhs = LZ.format(r);
        rep.witness = std::move(w);
        return false;
      }
    }
    return true;
  });
  rep.exhaustive = rep.exhaustive && exhaustive;
}

template <class C, class A>
std::vector<A> alpha_tuple(const AbstractedSystem<C, A>& abs, const std::vector<C>& c) {
  std::vector<A> out;
  for (std::size_t j = 0; j < c.size(); ++j) out.push_back(abs.connections()[j].alpha(c[j]));
  return out;
}

template <class C, class A>
std::vector<C> gamma_tuple(const AbstractedSystem<C, A>& abs, const std::vector<A>& a) {
  std::vector<C> out;
  for (std::size_t j = 0; j < a.size(); ++j) out.push_back(abs.connections()[j].gamma(a[j]));
  return out;
}

template <class C, class A>
bool all_have(const AbstractedSystem<C, A>& abs, bool alpha) {
  for (const auto& gc : abs.connections())
    if (alpha ? !gc.alpha : !gc.gamma) return false;
  return true;
}

}  // namespace detail

template <class C, class A>
SoundnessReport check_soundness(const AbstractedSystem<C, A>& abs, CheckLimits limits = {}) {
  const auto& EC = abs.concrete();
  const auto& EA = abs.abstract();
  const auto& LC = EC.lattice();
  const auto& LA = EA.lattice();
  const std::size_t m = abs.size();
  std::mt19937_64 rng(limits.seed);
  SoundnessReport rep;
  if (detail::all_have(abs, true)) {
    rep.alpha_checked = true;
    detail::tuple_condition(
        LC, LA, m, limits, rng,
        [&](std::size_t i, const std::vector<C>& c) { return abs.connections()[i].alpha(EC.eval(i, c)); },
        [&](std::size_t i, const std::vector<C>& c) { return EA.eval(i, detail::alpha_tuple(abs, c)); },
        rep.alpha_form);
    for (std::size_t i = 0; i < m; ++i)
      if (EC.sign(i) == Sign::mu)
        detail::map_obligations<C, A>(LC, LA, abs.connections()[i].alpha, false,
                                      "alpha_" + std::to_string(i + 1), limits, rng, rep.alpha_form);
  }
  if (detail::all_have(abs, false)) {
    rep.gamma_checked = true;
    detail::tuple_condition(
        LA, LC, m, limits, rng,
        [&](std::size_t i, const std::vector<A>& a) { return EC.eval(i, detail::gamma_tuple(abs, a)); },
        [&](std::size_t i, const std::vector<A>& a) { return abs.connections()[i].gamma(EA.eval(i, a)); },
        rep.gamma_form);
    for (std::size_t i = 0; i < m; ++i)
      if (EC.sign(i) == Sign::nu)
        detail::map_obligations<A, C>(LA, LC, abs.connections()[i].gamma, true,
                                      "gamma_" + std::to_string(i + 1), limits, rng, rep.gamma_form);
  }
  if (!rep.alpha_checked && !rep.gamma_checked)
    throw InvalidArgument("check_soundness: every connection needs alpha or every connection needs gamma");
  return rep;
}

template <class C, class A>
ConditionReport check_completeness(const AbstractedSystem<C, A>& abs, CompletenessSide side, CheckLimits limits = {}) {
  const auto& EC = abs.concrete();
  const auto& EA = abs.abstract();
  const auto& LC = EC.lattice();
  const auto& LA = EA.lattice();
  const std::size_t m = abs.size();
  std::mt19937_64 rng(limits.seed);
  ConditionReport rep;
  if (side == CompletenessSide::abstraction) {
    if (!detail::all_have(abs, true)) throw InvalidArgument("check_completeness: abstraction side needs alpha");
    detail::tuple_condition(
        LC, LA, m, limits, rng,
        [&](std::size_t i, const std::vector<C>& c) { return EA.eval(i, detail::alpha_tuple(abs, c)); },
        [&](std::size_t i, const std::vector<C>& c) { return abs.connections()[i].alpha(EC.eval(i, c)); }, rep);
    for (std::size_t i = 0; i < m; ++i)
      if (EC.sign(i) == Sign::nu)
        detail::map_obligations<C, A>(LC, LA, abs.connections()[i].alpha, true, "alpha_" + std::to_string(i + 1),
                                      limits, rng, rep);
  } else {
    if (!detail::all_have(abs, false)) throw InvalidArgument("check_completeness: concretisation side needs gamma");
    detail::tuple_condition(
        LA, LC, m, limits, rng,
        [&](std::size_t i, const std::vector<A>& a) { return abs.connections()[i].gamma(EA.eval(i, a)); },
        [&](std::size_t i, const std::vector<A>& a) { return EC.eval(i, detail::gamma_tuple(abs, a)); }, rep);
    for (std::size_t i = 0; i < m; ++i)
      if (EC.sign(i) == Sign::mu)
        detail::map_obligations<A, C>(LA, LC, abs.connections()[i].gamma, false, "gamma_" + std::to_string(i + 1),
                                      limits, rng, rep);
  }
  return rep;
}

// f_i^#(a⃗) = α_i(f_i(γ_1(a_1), ..., γ_m(a_m))).
template <class C, class A>
BasicEquationSystem<A> best_abstraction(const BasicEquationSystem<C>& ec,
                                        const std::vector<BasicGaloisConnection<C, A>>& connections,
                                        ValidationOptions opts = {}) {
  const std::size_t m = ec.size();
  if (connections.size() != m) throw InvalidArgument("best_abstraction: one connection per equation is required");
  if (m == 0) throw InvalidArgument("best_abstraction: empty system");
  auto LA = connections[0].abstract;
  for (const auto& gc : connections) {
    if (!gc.alpha || !gc.gamma) throw InvalidArgument("best_abstraction: connection " + gc.name + " is incomplete");
    if (gc.abstract != LA) throw InvalidArgument("best_abstraction: connections disagree on the abstract lattice");
  }
  std::vector<Equation<A>> eqs;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& eq = ec.equation(i);
    auto f = eq.f.eval;
    eqs.push_back({eq.name, eq.sign,
                   {m,
                    [f, connections, i](std::span<const A> a) {
                      std::vector<C> c;
                      c.reserve(a.size());
                      for (std::size_t j = 0; j < a.size(); ++j) c.push_back(connections[j].gamma(a[j]));
                      return connections[i].alpha(f(c));
                    },
                    "best(" + eq.f.description + ")"}});
  }
  return BasicEquationSystem<A>(LA, std::move(eqs), opts);
}

template <class C, class A>
struct SolutionReport {
  std::vector<C> concrete;
  std::vector<A> abstract;
  std::vector<A> alpha_concrete;
  SoundnessReport soundness;
  ConditionReport abstraction_completeness, concretisation_completeness;
  bool sound_inequality = true;           // α⃗(s⃗^C) ≤ s⃗^A
  bool abstraction_inequality = true;     // s⃗^A ≤ α⃗(s⃗^C)
  bool concretisation_inequality = true;  // γ⃗(s⃗^A) ⊑ s⃗^C

  // Every inequality that the checked conditions promise does hold.
  bool ok() const {
    return (!soundness.holds() || sound_inequality) &&
           (!abstraction_completeness.ok() || abstraction_inequality) &&
           (!concretisation_completeness.ok() || concretisation_inequality);
  }
};

// Uses the given concrete solution, which is required when the concrete
// lattice is not finite.
template <class C, class A>
SolutionReport<C, A> verify_solution_relation(const AbstractedSystem<C, A>& abs,
                                              std::optional<std::vector<C>> concrete_solution = std::nullopt,
                                              CheckLimits limits = {}) {
  const auto& LC = abs.concrete().lattice();
  const auto& LA = abs.abstract().lattice();
  SolutionReport<C, A> rep;
  if (concrete_solution) {
    rep.concrete = std::move(*concrete_solution);
  } else {
    if (!LC.finite()) throw UnsupportedOperation("verify_solution_relation: supply the concrete solution");
    rep.concrete = solve(abs.concrete());
  }
  if (rep.concrete.size() != abs.size()) throw InvalidArgument("verify_solution_relation: wrong solution length");
  rep.abstract = solve(abs.abstract());
  bool has_alpha = detail::all_have(abs, true), has_gamma = detail::all_have(abs, false);
  rep.soundness = check_soundness(abs, limits);
  if (has_alpha) {
    rep.alpha_concrete = detail::alpha_tuple(abs, rep.concrete);
    rep.abstraction_completeness = check_completeness(abs, CompletenessSide::abstraction, limits);
  } else {
    rep.abstraction_completeness.holds = false;
  }
  if (has_gamma)
    rep.concretisation_completeness = check_completeness(abs, CompletenessSide::concretisation, limits);
  else
    rep.concretisation_completeness.holds = false;
  for (std::size_t i = 0; i < abs.size(); ++i) {
    if (has_alpha) {
      rep.sound_inequality = rep.sound_inequality && LA.leq(rep.alpha_concrete[i], rep.abstract[i]);
      rep.abstraction_inequality = rep.abstraction_inequality && LA.leq(rep.abstract[i], rep.alpha_concrete[i]);
    } else {
      rep.sound_inequality =
          rep.sound_inequality && LC.leq(rep.concrete[i], abs.connections()[i].gamma(rep.abstract[i]));
    }
    if (has_gamma)
      rep.concretisation_inequality =
          rep.concretisation_inequality && LC.leq(abs.connections()[i].gamma(rep.abstract[i]), rep.concrete[i]);
  }
  return rep;
}

template <class C, class A>
SolutionReport<C, A> verify_solution_relation(const AbstractedSystem<C, A>& abs, std::vector<C> concrete_solution,
                                              CheckLimits limits = {}) {
  return verify_solution_relation(abs, std::optional<std::vector<C>>(std::move(concrete_solution)), limits);
}

template <class E>
BasicGaloisConnection<E, E> identity_connection(std::shared_ptr<const BasicLattice<E>> L) {
  return {L, L, [](const E& x) { return x; }, [](const E& x) { return x; }, "id", true};
}

// ⟨α_n, γ_n⟩ : [0,1]^S → [0,1]_{/n}^S with α_n(x) = ⌈n·x⌉/n and γ_n the
// inclusion. One label gives the plain grid.
RealGaloisConnection grid_alpha(std::int64_t n, std::vector<std::string> labels = {"x"});

// The same insertion restricted to a finer grid: [0,1]_{/N}^S → [0,1]_{/n}^S.
GaloisConnection grid_refinement(std::int64_t fine, std::int64_t n, std::vector<std::string> labels = {"x"});

// ⟨⨆, ↓· ∩ B_L⟩ : 𝒫(B_L) → L.
GaloisConnection join_connection(LatticePtr L);

// ⟨♦_{R⁻¹}, ■_R⟩ : 𝒫(S_C) → 𝒫(S_A) for R ⊆ S_C × S_A.
GaloisConnection simulation_connection(ChainProductPtr concrete, ChainProductPtr abstract,
                                       const std::vector<std::pair<std::size_t, std::size_t>>& R);

}  // namespace fixgame
