#include "fixgame/applications.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <memory>

namespace py = pybind11;
using namespace fixgame;

namespace {

// "p/q" strings; the Python side turns them into Fractions.
std::string fraction(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

py::object element(const Lattice& L, const Element& e) {
  const auto* C = dynamic_cast<const ChainProductLattice*>(&L);
  if (!C) return py::str(L.format(e));
  using Style = ChainProductLattice::Style;
  switch (C->style()) {
    case Style::powerset:
    case Style::relation: {
      py::list out;
      for (auto j : C->members(e)) out.append(C->labels()[j]);
      return std::move(out);
    }
    case Style::grid:
      return py::str(fraction(C->value(e, 0)));
    case Style::pointwise: {
      py::dict out;
      for (std::size_t j = 0; j < C->components(); ++j) out[py::str(C->labels()[j])] = fraction(C->value(e, j));
      return std::move(out);
    }
  }
  return py::str(L.format(e));
}

// The system keeps references into the models, so they live here too.
struct Built {
  std::unique_ptr<TransitionSystem> ts;
  std::unique_ptr<Pndt> pndt;
  EquationSystem system;
  std::size_t target = 0;
};

Built build(const std::string& text, const std::optional<std::string>& ts, bool relations, std::int64_t grid,
            const std::optional<std::string>& pndt) {
  Built b;
  auto eqs = parse_system_dsl(text);
  if (grid > 0) {
    if (pndt) b.pndt = std::make_unique<Pndt>(parse_pndt(*pndt));
    b.system = lukas::grid_system_from_dsl(eqs, b.pndt.get(), grid);
  } else {
    if (!ts) throw InvalidArgument("give ts=... for state sets or relations, or grid=n for Lukasiewicz values");
    b.ts = std::make_unique<TransitionSystem>(parse_ts(*ts));
    b.system = relations ? bisim::system_from_dsl(eqs, *b.ts) : mucalc::system_from_dsl(eqs, *b.ts);
  }
  b.target = b.system.size() - 1;
  return b;
}

py::dict evaluation(const lukas::Evaluation& ev) {
  py::dict out;
  for (std::size_t i = 0; i < ev.names.size(); ++i) {
    py::dict per;
    for (std::size_t s = 0; s < ev.labels.size(); ++s) per[py::str(ev.labels[s])] = fraction(ev.values[i][s]);
    out[py::str(ev.names[i])] = per;
  }
  py::dict r;
  r["values"] = out;
  r["target"] = ev.names[ev.target];
  r["converged"] = ev.converged;
  r["exact"] = ev.exact;
  r["iterations"] = ev.iterations;
  return r;
}

std::vector<std::vector<std::string>> classes(const TransitionSystem& T, const Relation& r) {
  std::vector<std::vector<std::string>> out;
  std::vector<bool> seen(T.size());
  for (std::size_t x = 0; x < T.size(); ++x) {
    if (seen[x]) continue;
    out.emplace_back();
    for (std::size_t y = x; y < T.size(); ++y)
      if (r[x][y]) {
        seen[y] = true;
        out.back().push_back(T.states[y]);
      }
  }
  return out;
}

Rational parse_number(const std::string& text) {
  Expr e = parse_expr(text);
  if (e.kind != Expr::Kind::number) throw InvalidArgument(text + " is not a number");
  return e.number;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fixpoint equation systems solved through powerset games.";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.def(
      "solve",
      [](const std::string& text, std::optional<std::string> ts, bool relations, std::int64_t grid,
         std::optional<std::string> pndt) {
        auto b = build(text, ts, relations, grid, pndt);
        auto sol = solve(b.system);
        py::dict out;
        for (std::size_t i = 0; i < sol.size(); ++i)
          out[py::str(b.system.equation(i).name)] = element(b.system.lattice(), sol[i]);
        return out;
      },
      py::arg("system"), py::kw_only(), py::arg("ts") = py::none(), py::arg("relations") = false,
      py::arg("grid") = 0, py::arg("pndt") = py::none(), "Solve an equation system given as text.");

  m.def(
      "check",
      [](const std::string& text, const std::string& ts, const std::string& state, std::optional<std::string> index) {
        auto b = build(text, ts, false, 0, std::nullopt);
        std::size_t i = b.target;
        if (index) {
          i = b.system.size();
          for (std::size_t j = 0; j < b.system.size(); ++j)
            if (b.system.equation(j).name == *index) i = j;
          if (i == b.system.size()) throw InvalidArgument("no equation " + *index);
        }
        auto r = check(b.system, mucalc::singleton(*b.ts, b.ts->index(state)), i);
        py::dict out;
        out["winner"] = r.winner == Player::exists ? "E" : "A";
        out["explored"] = r.stats.exists_nodes;
        out["assumptions"] = r.stats.assumptions;
        out["forgets"] = r.stats.forgets;
        return out;
      },
      py::arg("system"), py::arg("ts"), py::arg("state"), py::arg("index") = py::none(),
      "Local check of the state against one equation of a state-set system.");

  m.def(
      "model_check",
      [](const std::string& ts, const std::string& formula, const std::string& state, const std::string& engine) {
        auto T = parse_ts(ts);
        auto phi = parse_expr(formula);
        mucalc::Engine e = engine == "global"       ? mucalc::Engine::global
                           : engine == "local"      ? mucalc::Engine::local
                           : engine == "local_upto" ? mucalc::Engine::local_upto
                                                    : throw InvalidArgument("unknown engine " + engine);
        auto r = mucalc::model_check(T, phi, T.index(state), e);
        py::dict out;
        out["holds"] = r.holds;
        out["explored"] = r.explored;
        return out;
      },
      py::arg("ts"), py::arg("formula"), py::arg("state"), py::arg("engine") = "local",
      "Does the state satisfy the mu-calculus formula?");

  m.def(
      "bisimilarity",
      [](const std::string& ts) {
        auto T = parse_ts(ts);
        return classes(T, bisim::bisimilarity(T));
      },
      py::arg("ts"), "Bisimilarity classes, in state order.");

  m.def(
      "similarity",
      [](const std::string& ts) {
        auto T = parse_ts(ts);
        auto r = bisim::similarity(T);
        std::vector<std::pair<std::string, std::string>> out;
        for (std::size_t x = 0; x < T.size(); ++x)
          for (std::size_t y = 0; y < T.size(); ++y)
            if (r[x][y]) out.emplace_back(T.states[x], T.states[y]);
        return out;
      },
      py::arg("ts"), "Pairs (s, t) with t simulating s.");

  m.def(
      "nfa_equiv",
      [](const std::string& nfa, const std::string& q1, const std::string& q2, bool upto) {
        auto N = parse_nfa(nfa);
        auto r = nfa::language_equiv(N, N.index(q1), N.index(q2), upto);
        py::dict out;
        out["equivalent"] = r.equivalent;
        out["explored"] = r.explored;
        return out;
      },
      py::arg("nfa"), py::arg("q1"), py::arg("q2"), py::arg("upto") = false,
      "Language equivalence of two NFA states, optionally up to congruence.");

  m.def(
      "lukas_grid",
      [](const std::string& term, std::int64_t n, std::optional<std::string> pndt) {
        std::unique_ptr<Pndt> N;
        if (pndt) N = std::make_unique<Pndt>(parse_pndt(*pndt));
        return evaluation(lukas::evaluate_grid(parse_expr(term), N.get(), n));
      },
      py::arg("term"), py::arg("n"), py::arg("pndt") = py::none(), "Evaluate a Lukasiewicz term on the grid.");

  m.def(
      "lukas_epsilon",
      [](const std::string& term, const std::string& tolerance, std::optional<std::string> pndt, std::size_t max_iter) {
        std::unique_ptr<Pndt> N;
        if (pndt) N = std::make_unique<Pndt>(parse_pndt(*pndt));
        return evaluation(lukas::evaluate_epsilon(parse_expr(term), N.get(), parse_number(tolerance), max_iter));
      },
      py::arg("term"), py::arg("tolerance"), py::arg("pndt") = py::none(), py::arg("max_iter") = 100000,
      "Evaluate a Lukasiewicz term over the reals, stopping loops within the tolerance.");
}
