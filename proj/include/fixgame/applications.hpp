#pragma once

#include "fixgame/abstraction.hpp"
#include "fixgame/adjoint.hpp"
#include "fixgame/models.hpp"
#include "fixgame/upto.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fixgame {

using Relation = std::vector<std::vector<bool>>;

// Systems built here keep references to the model they were built from.

namespace mucalc {

struct Translation {
  EquationSystem system;
  std::size_t target = 0;
};

// Atoms of T are the propositions; tt, ff, &, |, [], <> are the operators.
Translation to_system(const Expr& phi, const TransitionSystem& T);
EquationSystem system_from_dsl(const std::vector<DslEquation>& eqs, const TransitionSystem& T);

ChainProductPtr state_lattice(const TransitionSystem& T);
Element box(const TransitionSystem& T, const ChainProductLattice& L, const Element& Y);
Element diamond(const TransitionSystem& T, const ChainProductLattice& L, const Element& Y);
// Basis index of {s}.
std::size_t singleton(const TransitionSystem& T, std::size_t s);

enum class Engine { global, local, local_upto };

struct ModelCheckResult {
  bool holds = false;
  std::optional<SolverStats> stats;
  // ∃ positions of the formula's own equations; with up-to, the x-block.
  std::size_t explored = 0;
  std::optional<Element> denotation;  // global engine only
};

// local_upto uses the bisimilarity of T on every equation.
ModelCheckResult model_check(const TransitionSystem& T, const Expr& phi, std::size_t state,
                             Engine engine = Engine::local, const CheckOptions& opts = {});

}  // namespace mucalc

namespace bisim {

enum class Kind { similarity, bisimilarity };

ChainProductPtr relation_lattice(const TransitionSystem& T);
Element to_element(const ChainProductLattice& L, const Relation& r);
Relation from_element(const ChainProductLattice& L, std::size_t n, const Element& e);

// sim_T(R) = {(x,y) ∈ R | atoms of x hold at y; x→x' ⇒ ∃y→y'. (x',y') ∈ R}
Element sim_step(const TransitionSystem& T, const ChainProductLattice& L, const Element& R);
// sim_T(R) ∩ sim_T(R⁻¹)⁻¹
Element bis_step(const TransitionSystem& T, const ChainProductLattice& L, const Element& R);

// x =ν sim_T(x) or x =ν bis_T(x).
EquationSystem system(const TransitionSystem& T, Kind kind);
// DSL bodies over relations: sim(e), bis(e), id, tt, ff, &, |.
EquationSystem system_from_dsl(const std::vector<DslEquation>& eqs, const TransitionSystem& T);

Relation similarity(const TransitionSystem& T);
Relation bisimilarity(const TransitionSystem& T);

enum class UpTo { none, transitivity };

struct PairResult {
  bool holds = false;
  SolverStats stats;
};

PairResult check_pair(const TransitionSystem& T, std::size_t s1, std::size_t s2, Kind kind, UpTo upto = UpTo::none,
                      const CheckOptions& opts = {});

}  // namespace bisim

namespace nfa {

using StateSet = std::uint64_t;
using SetPair = std::pair<StateSet, StateSet>;

// Membership of p in the congruence closure of R, by normal forms.
bool congruence_member(const SetPair& p, const std::vector<SetPair>& R);
StateSet normal_form(StateSet X, const std::vector<SetPair>& R);

struct EquivResult {
  bool equivalent = false;
  std::size_t explored = 0;  // |W|
  std::size_t visited = 0;   // positions popped
  std::size_t stops = 0;
  std::optional<SetPair> counterexample;  // a pair that disagrees on acceptance
};

// Case 2 on pairs of state sets from ({q1},{q2}), f_*(R) = per-letter
// successor pairs. With `upto`, a pair in c(W) is not explored.
EquivResult language_equiv(const Nfa& N, std::size_t q1, std::size_t q2, bool upto);
EquivResult set_equiv(const Nfa& N, StateSet X1, StateSet X2, bool upto);

}  // namespace nfa

namespace lukas {

// Values of one variable, one entry per state (a single entry without a PNDT).
using Values = std::vector<Rational>;

// Over [0,1]^S with exact rationals.
RealSystem real_system(const Expr& t, const Pndt* N, std::size_t* target = nullptr);
RealSystem real_system_from_dsl(const std::vector<DslEquation>& eqs, const Pndt* N);

// Over the grid [0,1]_{/n}^S, every operator replaced by α_n ∘ op ∘ γ_n.
EquationSystem grid_system(const Expr& t, const Pndt* N, std::int64_t n, std::size_t* target = nullptr);
EquationSystem grid_system_from_dsl(const std::vector<DslEquation>& eqs, const Pndt* N, std::int64_t n);

std::shared_ptr<const UnitIntervalLattice> real_lattice(const Pndt* N);
ChainProductPtr grid_lattice(const Pndt* N, std::int64_t n);
std::vector<std::string> labels(const Pndt* N);

struct Evaluation {
  std::vector<std::string> names;   // one per equation
  std::vector<std::string> labels;  // one per state
  std::vector<Values> values;       // per equation
  std::size_t target = 0;
  bool converged = true;
  bool exact = true;
  std::size_t iterations = 0;
};

Evaluation evaluate_grid(const Expr& t, const Pndt* N, std::int64_t n);
// Stops every loop once successive iterates are within tol.
Evaluation evaluate_epsilon(const Expr& t, const Pndt* N, const Rational& tol, std::size_t max_iter = 100000);

Evaluation evaluate_grid(const std::vector<DslEquation>& eqs, const Pndt* N, std::int64_t n);
Evaluation evaluate_epsilon(const std::vector<DslEquation>& eqs, const Pndt* N, const Rational& tol,
                            std::size_t max_iter = 100000);

}  // namespace lukas

}  // namespace fixgame
