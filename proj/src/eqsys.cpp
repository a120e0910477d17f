#include "fixgame/eqsys.hpp"

namespace fixgame {

EpsilonResult solve_epsilon(const RealSystem& sys, const Rational& tol, std::size_t max_iter) {
  if (tol <= 0) throw InvalidArgument("tolerance must be positive");
  if (max_iter == 0) throw InvalidArgument("max_iter must be positive");
  EpsilonResult result;
  result.loops.resize(sys.size());
  for (std::size_t i = 0; i < sys.size(); ++i) result.loops[i].sign = sys.sign(i);
  const auto& L = sys.lattice();

  auto loop = [&](std::size_t i, const std::function<RealVector(const RealVector&)>& g, Sign sign) {
    auto& rep = result.loops[i];
    ++rep.invocations;
    RealVector x = sign == Sign::mu ? L.bot() : L.top();
    std::size_t it = 0;
    while (true) {
      RealVector y = g(x);
      if (y == x) {
        ++rep.exact_hits;
        break;
      }
      ++it;
      bool close = max_distance(x, y) < tol;
      x = std::move(y);
      if (close) {
        result.exact = false;
        break;
      }
      if (it >= max_iter) {
        ++rep.budget_exhausted;
        result.converged = false;
        result.exact = false;
        break;
      }
    }
    rep.total_iterations += it;
    rep.max_iterations = std::max(rep.max_iterations, it);
    return x;
  };
  detail::RecursiveSolver<RealVector, decltype(loop)> solver(sys, loop);
  result.values = solver.solve();
  return result;
}

}  // namespace fixgame
