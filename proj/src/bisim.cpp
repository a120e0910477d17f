#include "fixgame/applications.hpp"

#include "translate.hpp"

namespace fixgame::bisim {

namespace {

Element converse(const ChainProductLattice& L, std::size_t n, const Element& R) {
  Element out = L.bot();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) out.v[y * n + x] = R.v[x * n + y];
  return out;
}

Element identity(const ChainProductLattice& L, std::size_t n) {
  Element out = L.bot();
  for (std::size_t x = 0; x < n; ++x) out.v[x * n + x] = 1;
  return out;
}

}  // namespace

ChainProductPtr relation_lattice(const TransitionSystem& T) { return make_relation(T.states); }

Element to_element(const ChainProductLattice& L, const Relation& r) {
  const std::size_t n = r.size();
  Element e = L.bot();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) e.v[x * n + y] = r[x][y];
  return e;
}

Relation from_element(const ChainProductLattice&, std::size_t n, const Element& e) {
  Relation r(n, std::vector<bool>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) r[x][y] = e.v[x * n + y] != 0;
  return r;
}

Element sim_step(const TransitionSystem& T, const ChainProductLattice& L, const Element& R) {
  const std::size_t n = T.size();
  Element out = L.bot();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (!R.v[x * n + y]) continue;
      bool ok = std::all_of(T.atoms.begin(), T.atoms.end(), [&](const auto& a) { return !a.second[x] || a.second[y]; });
      for (std::size_t i = 0; ok && i < T.succ[x].size(); ++i) {
        std::size_t xp = T.succ[x][i];
        ok = std::any_of(T.succ[y].begin(), T.succ[y].end(), [&](std::size_t yp) { return R.v[xp * n + yp] != 0; });
      }
      out.v[x * n + y] = ok;
    }
  return out;
}

Element bis_step(const TransitionSystem& T, const ChainProductLattice& L, const Element& R) {
  const std::size_t n = T.size();
  return L.meet(sim_step(T, L, R), converse(L, n, sim_step(T, L, converse(L, n, R))));
}

EquationSystem system(const TransitionSystem& T, Kind kind) {
  auto L = relation_lattice(T);
  auto step = kind == Kind::similarity ? &sim_step : &bis_step;
  std::vector<Equation<Element>> eqs;
  eqs.push_back({"x", Sign::nu,
                 {1, [&T, L, step](std::span<const Element> x) { return step(T, *L, x[0]); },
                  kind == Kind::similarity ? "sim(x)" : "bis(x)"}});
  return EquationSystem(L, std::move(eqs));
}

EquationSystem system_from_dsl(const std::vector<DslEquation>& eqs, const TransitionSystem& T) {
  auto L = relation_lattice(T);
  const std::size_t n = T.size();
  detail::Semantics<Element> sem;
  const std::string language = "relation equations";
  sem.leaf = [L, n, language](const Expr& e) -> detail::Compiled<Element> {
    Element v;
    if (e.kind == Expr::Kind::ident && e.text == "tt") {
      v = L->top();
    } else if (e.kind == Expr::Kind::ident && e.text == "ff") {
      v = L->bot();
    } else if (e.kind == Expr::Kind::ident && e.text == "id") {
      v = identity(*L, n);
    } else {
      detail::not_supported(e, language);
    }
    return [v](std::span<const Element>) { return v; };
  };
  sem.node = [&T, L, language](const Expr& e, std::vector<detail::Compiled<Element>> k) -> detail::Compiled<Element> {
    if (e.kind == Expr::Kind::call && (e.text == "sim" || e.text == "bis")) {
      if (k.size() != 1) throw ParseError(e.pos, e.text + " takes one argument");
      auto step = e.text == "sim" ? &sim_step : &bis_step;
      return [&T, L, step, a = k[0]](std::span<const Element> x) { return step(T, *L, a(x)); };
    }
    if (e.kind == Expr::Kind::binary && e.text == "&")
      return [L, a = k[0], b = k[1]](std::span<const Element> x) { return L->meet(a(x), b(x)); };
    if (e.kind == Expr::Kind::binary && e.text == "|")
      return [L, a = k[0], b = k[1]](std::span<const Element> x) { return L->join(a(x), b(x)); };
    detail::not_supported(e, language);
  };
  return EquationSystem(L, detail::Translator<Element>(sem).system(eqs));
}

Relation similarity(const TransitionSystem& T) {
  auto sys = system(T, Kind::similarity);
  auto L = relation_lattice(T);
  return from_element(*L, T.size(), solve(sys)[0]);
}

Relation bisimilarity(const TransitionSystem& T) {
  auto sys = system(T, Kind::bisimilarity);
  auto L = relation_lattice(T);
  return from_element(*L, T.size(), solve(sys)[0]);
}

PairResult check_pair(const TransitionSystem& T, std::size_t s1, std::size_t s2, Kind kind, UpTo upto,
                      const CheckOptions& opts) {
  const std::size_t n = T.size();
  if (s1 >= n || s2 >= n) throw InvalidArgument("state index out of range");
  auto sys = system(T, kind);
  auto L = std::dynamic_pointer_cast<const ChainProductLattice>(sys.lattice_ptr());
  std::size_t b = L->basis_index(s1 * n + s2, 1);
  PairResult out;
  if (upto == UpTo::none) {
    auto r = check(sys, b, 0, opts);
    out.holds = r.winner == Player::exists;
    out.stats = r.stats;
  } else {
    auto r = up_to_check(sys, {u_tr(L)}, b, 0, opts);
    out.holds = r.result.winner == Player::exists;
    out.stats = r.result.stats;
  }
  return out;
}

}  // namespace fixgame::bisim
