#include "fixgame/applications.hpp"

#include "translate.hpp"

namespace fixgame::mucalc {

namespace {

detail::Semantics<Element> semantics(const TransitionSystem& T, ChainProductPtr L) {
  detail::Semantics<Element> sem;
  sem.leaf = [&T, L](const Expr& e) -> detail::Compiled<Element> {
    if (e.kind == Expr::Kind::ident) {
      Element v;
      if (e.text == "tt") {
        v = L->top();
      } else if (e.text == "ff") {
        v = L->bot();
      } else if (auto it = T.atoms.find(e.text); it != T.atoms.end()) {
        v = L->bot();
        for (std::size_t s = 0; s < T.size(); ++s) v.v[s] = it->second[s];
      } else {
        detail::not_supported(e, "the mu-calculus");
      }
      return [v](std::span<const Element>) { return v; };
    }
    detail::not_supported(e, "the mu-calculus");
  };
  sem.node = [&T, L](const Expr& e, std::vector<detail::Compiled<Element>> k) -> detail::Compiled<Element> {
    if (e.kind == Expr::Kind::unary && e.text == "[]")
      return [&T, L, a = k[0]](std::span<const Element> x) { return box(T, *L, a(x)); };
    if (e.kind == Expr::Kind::unary && e.text == "<>")
      return [&T, L, a = k[0]](std::span<const Element> x) { return diamond(T, *L, a(x)); };
    if (e.kind == Expr::Kind::binary && e.text == "&")
      return [L, a = k[0], b = k[1]](std::span<const Element> x) { return L->meet(a(x), b(x)); };
    if (e.kind == Expr::Kind::binary && e.text == "|")
      return [L, a = k[0], b = k[1]](std::span<const Element> x) { return L->join(a(x), b(x)); };
    detail::not_supported(e, "the mu-calculus");
  };
  return sem;
}

}  // namespace

ChainProductPtr state_lattice(const TransitionSystem& T) { return make_powerset(T.states); }

Element box(const TransitionSystem& T, const ChainProductLattice& L, const Element& Y) {
  Element out = L.bot();
  for (std::size_t x = 0; x < T.size(); ++x)
    out.v[x] = std::all_of(T.succ[x].begin(), T.succ[x].end(), [&](std::size_t y) { return Y.v[y] != 0; });
  return out;
}

Element diamond(const TransitionSystem& T, const ChainProductLattice& L, const Element& Y) {
  Element out = L.bot();
  for (std::size_t x = 0; x < T.size(); ++x)
    out.v[x] = std::any_of(T.succ[x].begin(), T.succ[x].end(), [&](std::size_t y) { return Y.v[y] != 0; });
  return out;
}

std::size_t singleton(const TransitionSystem& T, std::size_t s) {
  if (s >= T.size()) throw InvalidArgument("state index out of range");
  return state_lattice(T)->basis_index(s, 1);
}

// The returned system keeps a reference to T.
Translation to_system(const Expr& phi, const TransitionSystem& T) {
  auto L = state_lattice(T);
  auto sem = semantics(T, L);
  auto tr = detail::Translator<Element>(sem).formula(phi);
  return {EquationSystem(L, std::move(tr.equations)), tr.target};
}

EquationSystem system_from_dsl(const std::vector<DslEquation>& eqs, const TransitionSystem& T) {
  auto L = state_lattice(T);
  auto sem = semantics(T, L);
  return EquationSystem(L, detail::Translator<Element>(sem).system(eqs));
}

ModelCheckResult model_check(const TransitionSystem& T, const Expr& phi, std::size_t state, Engine engine,
                             const CheckOptions& opts) {
  auto tr = to_system(phi, T);
  ModelCheckResult out;
  if (engine == Engine::global) {
    auto sol = solve(tr.system);
    out.denotation = sol[tr.target];
    out.holds = sol[tr.target].v.at(state) != 0;
    return out;
  }
  std::size_t b = singleton(T, state);
  if (engine == Engine::local) {
    auto r = check(tr.system, b, tr.target, opts);
    out.holds = r.winner == Player::exists;
    out.stats = r.stats;
    out.explored = r.stats.exists_nodes;
    return out;
  }
  auto L = std::dynamic_pointer_cast<const ChainProductLattice>(tr.system.lattice_ptr());
  std::vector<UpToFunction> us(tr.system.size(), u_bisim(L, bisim::bisimilarity(T)));
  auto r = up_to_check(tr.system, us, b, tr.target, opts);
  out.holds = r.result.winner == Player::exists;
  out.stats = r.result.stats;
  const auto& by = r.result.stats.exists_nodes_by_index;
  for (std::size_t j = tr.system.size(); j < by.size(); ++j) out.explored += by[j];
  return out;
}

}  // namespace fixgame::mucalc
