#pragma once

#include "fixgame/lattice.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fixgame {

enum class Sign { mu, nu };

inline const char* to_string(Sign s) { return s == Sign::mu ? "mu" : "nu"; }

template <class E>
struct MonotoneFunction {
  std::size_t arity = 0;
  std::function<E(std::span<const E>)> eval;
  std::string description;

  E operator()(std::span<const E> args) const { return eval(args); }
};

template <class E>
struct Equation {
  std::string name;
  Sign sign = Sign::mu;
  MonotoneFunction<E> f;
};

class NotMonotone : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <class E>
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(E last, const std::string& what) : std::runtime_error(what), last_(std::move(last)) {}
  const E& last() const { return last_; }

 private:
  E last_;
};

struct ValidationOptions {
  bool validate = true;
  std::size_t monotonicity_samples = 64;
  std::uint64_t seed = 0x6d6f6e6fu;
};

template <class E>
class BasicEquationSystem {
 public:
  using element_type = E;
  using LatticeHandle = std::shared_ptr<const BasicLattice<E>>;

  BasicEquationSystem() = default;

  BasicEquationSystem(LatticeHandle lattice, std::vector<Equation<E>> equations, ValidationOptions opts = {})
      : lattice_(std::move(lattice)), equations_(std::move(equations)) {
    if (!lattice_) throw InvalidArgument("equation system needs a lattice");
    for (const auto& eq : equations_) {
      if (eq.f.arity != equations_.size())
        throw InvalidArgument("function of " + eq.name + " has arity " + std::to_string(eq.f.arity) +
                              ", expected " + std::to_string(equations_.size()));
      if (!eq.f.eval) throw InvalidArgument("function of " + eq.name + " has no evaluator");
    }
    if (opts.validate) validate_monotone(opts);
  }

  const BasicLattice<E>& lattice() const { return *lattice_; }
  const LatticeHandle& lattice_ptr() const { return lattice_; }
  std::size_t size() const { return equations_.size(); }
  bool empty() const { return equations_.empty(); }
  const Equation<E>& equation(std::size_t i) const { return equations_.at(i); }
  const std::vector<Equation<E>>& equations() const { return equations_; }
  Sign sign(std::size_t i) const { return equations_.at(i).sign; }

  std::vector<Sign> signs() const {
    std::vector<Sign> out;
    for (const auto& eq : equations_) out.push_back(eq.sign);
    return out;
  }

  E eval(std::size_t i, std::span<const E> args) const { return equations_.at(i).f(args); }

  std::vector<E> eval_all(std::span<const E> args) const {
    std::vector<E> out;
    for (const auto& eq : equations_) out.push_back(eq.f(args));
    return out;
  }

 private:
  void validate_monotone(const ValidationOptions& opts) const {
    const auto& L = *lattice_;
    std::mt19937_64 rng(opts.seed);
    const std::size_t m = equations_.size();
    for (std::size_t s = 0; s < opts.monotonicity_samples && m > 0; ++s) {
      std::vector<E> x, y;
      for (std::size_t j = 0; j < m; ++j) {
        x.push_back(L.random_element(rng));
        y.push_back(L.join(x.back(), L.random_element(rng)));
      }
      for (const auto& eq : equations_) {
        if (!L.leq(eq.f(x), eq.f(y))) {
          std::string a, b;
          for (std::size_t j = 0; j < m; ++j) {
            a += (j ? ", " : "") + L.format(x[j]);
            b += (j ? ", " : "") + L.format(y[j]);
          }
          throw NotMonotone("function of " + eq.name + " is not monotone: (" + a + ") <= (" + b +
                            ") but images are " + L.format(eq.f(x)) + " and " + L.format(eq.f(y)));
        }
      }
    }
  }

  LatticeHandle lattice_;
  std::vector<Equation<E>> equations_;
};

using EquationSystem = BasicEquationSystem<Element>;
using RealSystem = BasicEquationSystem<RealVector>;

// Removes equation i and fixes x_i := l in the remaining ones.
template <class E>
BasicEquationSystem<E> substitute(const BasicEquationSystem<E>& sys, std::size_t i, const E& l) {
  const std::size_t m = sys.size();
  if (i >= m) throw InvalidArgument("substitute: index " + std::to_string(i) + " out of range");
  std::vector<Equation<E>> eqs;
  for (std::size_t j = 0; j < m; ++j) {
    if (j == i) continue;
    Equation<E> eq = sys.equation(j);
    auto inner = eq.f.eval;
    eq.f.arity = m - 1;
    eq.f.eval = [inner, i, l](std::span<const E> args) {
      std::vector<E> full(args.begin(), args.end());
      full.insert(full.begin() + static_cast<std::ptrdiff_t>(i), l);
      return inner(full);
    };
    eq.f.description += "[x" + std::to_string(i + 1) + ":=" + sys.lattice().format(l) + "]";
    eqs.push_back(std::move(eq));
  }
  return BasicEquationSystem<E>(sys.lattice_ptr(), std::move(eqs), ValidationOptions{false});
}

// Iterates from bottom (mu) or top (nu) until two consecutive values agree.
template <class E>
E kleene(const BasicLattice<E>& L, const std::function<E(const E&)>& f, Sign sign,
         std::optional<std::size_t> budget = std::nullopt) {
  if (!L.finite() && !budget)
    throw UnsupportedOperation("kleene on " + L.name() + " needs an iteration budget");
  E x = sign == Sign::mu ? L.bot() : L.top();
  for (std::size_t it = 0; !budget || it < *budget; ++it) {
    E y = f(x);
    if (y == x) return x;
    x = std::move(y);
  }
  throw NonConvergence<E>(x, "kleene iteration did not converge within " + std::to_string(*budget) + " steps");
}

namespace detail {

// Recursive scheme: solve the first k equations with the values of
// equations k..m-1 fixed to `tail`, memoized on (k, tail).
template <class E, class Loop>
class RecursiveSolver {
 public:
  RecursiveSolver(const BasicEquationSystem<E>& sys, Loop& loop) : sys_(sys), loop_(loop) {}

  std::vector<E> solve() { return prefix(sys_.size(), {}); }

 private:
  std::vector<E> prefix(std::size_t k, const std::vector<E>& tail) {
    if (k == 0) return {};
    auto key = std::make_pair(k, tail);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const std::size_t i = k - 1;
    auto with = [&](const E& x) {
      std::vector<E> t;
      t.reserve(tail.size() + 1);
      t.push_back(x);
      t.insert(t.end(), tail.begin(), tail.end());
      return t;
    };
    std::function<E(const E&)> g = [&](const E& x) {
      std::vector<E> t = with(x);
      std::vector<E> args = prefix(i, t);
      args.insert(args.end(), t.begin(), t.end());
      return sys_.eval(i, args);
    };
    E s = loop_(i, g, sys_.sign(i));
    std::vector<E> out = prefix(i, with(s));
    out.push_back(s);
    memo_.emplace(std::move(key), out);
    return out;
  }

  const BasicEquationSystem<E>& sys_;
  Loop& loop_;
  std::map<std::pair<std::size_t, std::vector<E>>, std::vector<E>> memo_;
};

}  // namespace detail

template <class E>
std::vector<E> solve(const BasicEquationSystem<E>& sys, std::optional<std::size_t> budget = std::nullopt) {
  const auto& L = sys.lattice();
  auto loop = [&](std::size_t, const std::function<E(const E&)>& g, Sign sign) {
    return kleene(L, g, sign, budget);
  };
  detail::RecursiveSolver<E, decltype(loop)> solver(sys, loop);
  return solver.solve();
}

struct LoopReport {
  Sign sign = Sign::mu;
  std::size_t invocations = 0;
  std::size_t total_iterations = 0;
  std::size_t max_iterations = 0;
  std::size_t exact_hits = 0;
  std::size_t budget_exhausted = 0;
};

struct EpsilonResult {
  std::vector<RealVector> values;
  bool converged = true;
  bool exact = true;
  std::vector<LoopReport> loops;
};

// Same recursive scheme, each loop stopping once successive iterates are
// closer than tol in every component. A loop that reaches max_iter keeps its
// last iterate and marks the result as not converged.
EpsilonResult solve_epsilon(const RealSystem& sys, const Rational& tol, std::size_t max_iter);

template <class E>
MonotoneFunction<E> constant_function(std::size_t arity, E value, std::string description) {
  return MonotoneFunction<E>{arity, [value](std::span<const E>) { return value; }, std::move(description)};
}

}  // namespace fixgame
