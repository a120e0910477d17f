#pragma once

#include "fixgame/abstraction.hpp"
#include "fixgame/localsolver.hpp"

#include <functional>
#include <string>
#include <vector>

namespace fixgame {

struct UpToFlags {
  bool extensive = false;
  bool idempotent = false;
  bool continuous = false;
  bool strict = false;

  friend bool operator==(const UpToFlags&, const UpToFlags&) = default;
};

class FlagViolation : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class Incompatible : public InvalidArgument {
 public:
  Incompatible(const std::string& what, ConditionReport report) : InvalidArgument(what), report_(std::move(report)) {}
  const ConditionReport& report() const { return report_; }

 private:
  ConditionReport report_;
};

// Unary monotone u : L → L. The flags that hold are measured on construction
// (exhaustively when L has at most `limits.element_limit` elements) and every
// declared flag must be among them.
class UpToFunction {
 public:
  UpToFunction(LatticePtr lattice, std::function<Element(const Element&)> eval, std::string name,
               UpToFlags declared = {}, CheckLimits limits = {});

  Element operator()(const Element& x) const { return eval_(x); }
  const Lattice& lattice() const { return *lattice_; }
  const LatticePtr& lattice_ptr() const { return lattice_; }
  const std::string& name() const { return name_; }
  const UpToFlags& declared() const { return declared_; }
  // Properties that were found to hold.
  const UpToFlags& verified() const { return verified_; }
  bool exhaustive() const { return exhaustive_; }
  const std::function<Element(const Element&)>& function() const { return eval_; }

 private:
  LatticePtr lattice_;
  std::function<Element(const Element&)> eval_;
  std::string name_;
  UpToFlags declared_, verified_;
  bool exhaustive_ = false;
};

// u(f(x)) ⊑ f(u(x)) for a unary f.
ConditionReport check_compatibility(const UpToFunction& u, const std::function<Element(const Element&)>& f,
                                    CheckLimits limits = {});

// u_i(f_i(x⃗)) ⊑ f_i(u⃗(x⃗)) for every i, and u_i continuous and strict
// wherever η_i = μ.
ConditionReport check_compatibility(const EquationSystem& sys, const std::vector<UpToFunction>& us,
                                    CheckLimits limits = {});

// ū(x) = μy. u(y) ⊔ x.
UpToFunction least_closure(const UpToFunction& u);

// E⟨u⃗⟩: y⃗ =μ (u⃗ · y⃗) ⊔ x⃗ ; x⃗ =η f⃗(y⃗), with y_1..y_m first. Refuses an
// incompatible tuple.
EquationSystem transform_system(const EquationSystem& sys, const std::vector<UpToFunction>& us,
                                CheckLimits limits = {});

// Moves of the up-to algorithm on E⟨u⃗⟩. At y_i either the up-to jump to
// positions already decided or on the playlist, or the plain jump to x_i.
class UpToMoveProvider final : public MoveProvider {
 public:
  UpToMoveProvider(const EquationSystem& original, const EquationSystem& transformed, std::vector<UpToFunction> us,
                   SelectionOptions opts = {});

  std::vector<Position> moves(const Position& pos, const Counter& k, const SolverView& view) override;
  std::size_t pruning_moves() const override { return prunes_; }

 private:
  const EquationSystem& original_;
  const EquationSystem& transformed_;
  std::vector<UpToFunction> us_;
  SelectionProvider base_;
  std::size_t prunes_ = 0;
};

struct UpToCheckResult {
  CheckResult result;
  EquationSystem transformed;
};

// Runs the up-to algorithm from the x_i position of (b, i).
UpToCheckResult up_to_check(const EquationSystem& sys, const std::vector<UpToFunction>& us, std::size_t b,
                            std::size_t i, const CheckOptions& opts = {});

// Same, skipping the compatibility check.
UpToCheckResult up_to_check_unchecked(const EquationSystem& sys, const std::vector<UpToFunction>& us,
                                      std::size_t b, std::size_t i, const CheckOptions& opts = {});

// R ↦ R ∘ R on a relation lattice over n states.
UpToFunction u_tr(ChainProductPtr relations);

// X ↦ {s | ∃s' ∈ X. s' ≾ s} for a preorder given as rel[s'][s].
UpToFunction u_sim(ChainProductPtr states, const std::vector<std::vector<bool>>& rel);

// X ↦ {s | ∃s' ∈ X. s ∼ s'} for an equivalence.
UpToFunction u_bisim(ChainProductPtr states, const std::vector<std::vector<bool>>& rel);

UpToFunction u_identity(LatticePtr L);

}  // namespace fixgame
