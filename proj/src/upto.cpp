#include "fixgame/upto.hpp"

#include <algorithm>

namespace fixgame {

namespace {

constexpr std::size_t kPairwiseLimit = 256;

std::string flag_list(const UpToFlags& f) {
  std::string out;
  auto add = [&](bool on, const char* name) {
    if (on) out += std::string(out.empty() ? "" : ", ") + name;
  };
  add(f.extensive, "extensive");
  add(f.idempotent, "idempotent");
  add(f.continuous, "continuous");
  add(f.strict, "strict");
  return out.empty() ? "none" : out;
}

}  // namespace

UpToFunction::UpToFunction(LatticePtr lattice, std::function<Element(const Element&)> eval, std::string name,
                           UpToFlags declared, CheckLimits limits)
    : lattice_(std::move(lattice)), eval_(std::move(eval)), name_(std::move(name)), declared_(declared) {
  if (!lattice_ || !eval_) throw InvalidArgument("up-to function " + name_ + " needs a lattice and an evaluator");
  const auto& L = *lattice_;
  std::mt19937_64 rng(limits.seed);
  auto all = L.elements(kPairwiseLimit);
  exhaustive_ = all.has_value();
  std::vector<Element> xs = all ? *all : L.test_elements(rng, limits.samples * 4);

  std::vector<Element> img;
  for (const auto& x : xs) img.push_back(eval_(x));
  auto monotone_fail = [&](const Element& a, const Element& b) {
    throw NotMonotone("up-to function " + name_ + " is not monotone: " + L.format(a) + " <= " + L.format(b) +
                      " but images are " + L.format(eval_(a)) + " and " + L.format(eval_(b)));
  };
  if (exhaustive_) {
    for (std::size_t a = 0; a < xs.size(); ++a)
      for (std::size_t b = 0; b < xs.size(); ++b)
        if (L.leq(xs[a], xs[b]) && !L.leq(img[a], img[b])) monotone_fail(xs[a], xs[b]);
  } else {
    for (const auto& x : xs) {
      Element y = L.join(x, L.random_element(rng));
      if (!L.leq(eval_(x), eval_(y))) monotone_fail(x, y);
    }
  }

  verified_.strict = L.eq(eval_(L.bot()), L.bot());
  verified_.extensive = true;
  verified_.idempotent = true;
  for (std::size_t a = 0; a < xs.size(); ++a) {
    if (!L.leq(xs[a], img[a])) verified_.extensive = false;
    if (!L.eq(eval_(img[a]), img[a])) verified_.idempotent = false;
  }
  verified_.continuous = detail::preserves_directed<Element, Element>(L, L, eval_, xs, false, limits.subset_limit,
                                                                      limits.tuple_limit, nullptr);

  auto missing = [](bool d, bool v) { return d && !v; };
  if (missing(declared_.extensive, verified_.extensive) || missing(declared_.idempotent, verified_.idempotent) ||
      missing(declared_.continuous, verified_.continuous) || missing(declared_.strict, verified_.strict))
    throw FlagViolation("up-to function " + name_ + " declares " + flag_list(declared_) + " but only " +
                        flag_list(verified_) + " hold");
}

ConditionReport check_compatibility(const UpToFunction& u, const std::function<Element(const Element&)>& f,
                                    CheckLimits limits) {
  const auto& L = u.lattice();
  std::mt19937_64 rng(limits.seed);
  ConditionReport rep;
  detail::tuple_condition(
      L, L, 1, limits, rng, [&](std::size_t, const std::vector<Element>& x) { return u(f(x[0])); },
      [&](std::size_t, const std::vector<Element>& x) { return f(u(x[0])); }, rep);
  return rep;
}

ConditionReport check_compatibility(const EquationSystem& sys, const std::vector<UpToFunction>& us,
                                    CheckLimits limits) {
  const std::size_t m = sys.size();
  if (us.size() != m) throw InvalidArgument("check_compatibility: one up-to function per equation is required");
  const auto& L = sys.lattice();
  for (const auto& u : us)
    if (u.lattice_ptr() != sys.lattice_ptr() && u.lattice().name() != L.name())
      throw InvalidArgument("check_compatibility: up-to function " + u.name() + " lives on another lattice");
  std::mt19937_64 rng(limits.seed);
  ConditionReport rep;
  auto apply = [&](const std::vector<Element>& x) {
    std::vector<Element> out;
    for (std::size_t j = 0; j < m; ++j) out.push_back(us[j](x[j]));
    return out;
  };
  detail::tuple_condition(
      L, L, m, limits, rng, [&](std::size_t i, const std::vector<Element>& x) { return us[i](sys.eval(i, x)); },
      [&](std::size_t i, const std::vector<Element>& x) { return sys.eval(i, apply(x)); }, rep);
  for (std::size_t i = 0; i < m; ++i) {
    if (sys.sign(i) != Sign::mu) continue;
    const auto& v = us[i].verified();
    if (!v.continuous || !v.strict) {
      rep.obligations = false;
      rep.obligation_failures.push_back("u_" + std::to_string(i + 1) + " (" + us[i].name() +
                                        ") must be continuous and strict at a least fixpoint equation");
    }
  }
  return rep;
}

UpToFunction least_closure(const UpToFunction& u) {
  auto L = u.lattice_ptr();
  if (!L->finite()) throw UnsupportedOperation("least_closure needs a finite lattice");
  auto f = u.function();
  std::function<Element(const Element&)> bar = [L, f](const Element& x) {
    std::function<Element(const Element&)> step = [&](const Element& y) { return L->join(f(y), x); };
    return kleene(*L, step, Sign::mu);
  };
  UpToFlags flags;
  flags.extensive = true;
  flags.idempotent = true;
  flags.strict = u.verified().strict && u.verified().continuous;
  return UpToFunction(L, bar, "closure(" + u.name() + ")", flags);
}

namespace {

EquationSystem upto_system(const EquationSystem& sys, const std::vector<UpToFunction>& us) {
  const std::size_t m = sys.size();
  if (us.size() != m) throw InvalidArgument("one up-to function per equation is required");
  auto L = sys.lattice_ptr();
  std::vector<Equation<Element>> eqs;
  for (std::size_t i = 0; i < m; ++i) {
    auto u = us[i].function();
    eqs.push_back({"y" + std::to_string(i + 1), Sign::mu,
                   {2 * m, [L, u, i, m](std::span<const Element> z) { return L->join(u(z[i]), z[m + i]); },
                    us[i].name() + "(y" + std::to_string(i + 1) + ") | x" + std::to_string(i + 1)}});
  }
  for (std::size_t i = 0; i < m; ++i) {
    const auto& eq = sys.equation(i);
    auto f = eq.f.eval;
    eqs.push_back({eq.name.empty() ? "x" + std::to_string(i + 1) : eq.name, eq.sign,
                   {2 * m, [f, m](std::span<const Element> z) { return f(z.subspan(0, m)); }, eq.f.description}});
  }
  return EquationSystem(L, std::move(eqs), ValidationOptions{false});
}

}  // namespace

EquationSystem transform_system(const EquationSystem& sys, const std::vector<UpToFunction>& us, CheckLimits limits) {
  auto rep = check_compatibility(sys, us, limits);
  if (!rep.ok()) {
    std::string why = rep.witness ? rep.witness->describe()
                                  : (rep.obligation_failures.empty() ? "" : rep.obligation_failures.front());
    throw Incompatible("up-to functions are not compatible: " + why, rep);
  }
  return upto_system(sys, us);
}

UpToMoveProvider::UpToMoveProvider(const EquationSystem& original, const EquationSystem& transformed,
                                   std::vector<UpToFunction> us, SelectionOptions opts)
    : original_(original), transformed_(transformed), us_(std::move(us)), base_(original, opts) {
  if (transformed_.size() != 2 * original_.size() || us_.size() != original_.size())
    throw InvalidArgument("UpToMoveProvider: sizes do not match");
}

std::vector<Position> UpToMoveProvider::moves(const Position& pos, const Counter& k, const SolverView& view) {
  const std::size_t m = original_.size();
  if (!pos.is_exists()) return forall_moves(pos);
  if (pos.index >= m) {
    auto inner = base_.moves(Position::exists_at(pos.basis, pos.index - m), k, view);
    std::vector<Position> out;
    for (auto& p : inner) {
      p.tuple.resize(2 * m);
      out.push_back(std::move(p));
    }
    return out;
  }

  const std::size_t i = pos.index;
  const auto& L = transformed_.lattice();
  const auto& basis = L.basis();
  std::vector<Position> out;

  Counter bound = next_counter(k, pos.priority());
  BasisSubset eligible;
  for (std::size_t b = 0; b < basis.size(); ++b) {
    Position q = Position::exists_at(b, i);
    if (view.usable_decision(Player::exists, q, bound)) {
      eligible.push_back(b);
      continue;
    }
    auto pk = view.playlist_counter(q);
    if (pk && counter_lt(Player::exists, *pk, bound, view.signs())) eligible.push_back(b);
  }
  const Element& target = basis[pos.basis];
  if (!eligible.empty() && L.leq(target, us_[i](L.join_of(eligible)))) {
    BasisSubset y = eligible;
    for (std::size_t r = y.size(); r-- > 0;) {
      BasisSubset without = y;
      without.erase(without.begin() + static_cast<std::ptrdiff_t>(r));
      if (L.leq(target, us_[i](L.join_of(without)))) y = std::move(without);
    }
    std::vector<BasisSubset> t(2 * m);
    t[i] = y;
    out.push_back(Position::forall_at(std::move(t)));
    ++prunes_;
  }
  std::vector<BasisSubset> jump(2 * m);
  jump[m + i] = {pos.basis};
  out.push_back(Position::forall_at(std::move(jump)));
  return out;
}

UpToCheckResult up_to_check_unchecked(const EquationSystem& sys, const std::vector<UpToFunction>& us,
                                      std::size_t b, std::size_t i, const CheckOptions& opts) {
  if (i >= sys.size()) throw InvalidArgument("up_to_check: index out of range");
  UpToCheckResult out{CheckResult{}, upto_system(sys, us)};
  UpToMoveProvider provider(sys, out.transformed, us, opts.selection);
  LocalSolver solver(out.transformed, provider, opts);
  out.result = solver.run(Position::exists_at(b, sys.size() + i));
  return out;
}

UpToCheckResult up_to_check(const EquationSystem& sys, const std::vector<UpToFunction>& us, std::size_t b,
                            std::size_t i, const CheckOptions& opts) {
  auto rep = check_compatibility(sys, us);
  if (!rep.ok()) throw Incompatible("up-to functions are not compatible", rep);
  return up_to_check_unchecked(sys, us, b, i, opts);
}

UpToFunction u_identity(LatticePtr L) {
  return UpToFunction(L, [](const Element& x) { return x; }, "id", UpToFlags{true, true, true, true});
}

UpToFunction u_tr(ChainProductPtr relations) {
  const std::size_t cells = relations->components();
  std::size_t n = 0;
  while (n * n < cells) ++n;
  if (n * n != cells) throw InvalidArgument("u_tr needs a relation lattice");
  return UpToFunction(
      relations,
      [n, relations](const Element& r) {
        Element out = relations->bot();
        for (std::size_t x = 0; x < n; ++x)
          for (std::size_t y = 0; y < n; ++y) {
            if (!r.v[x * n + y]) continue;
            for (std::size_t z = 0; z < n; ++z)
              if (r.v[y * n + z]) out.v[x * n + z] = 1;
          }
        return out;
      },
      "tr", UpToFlags{false, false, true, true});
}

namespace {

UpToFunction relational_image(ChainProductPtr states, const std::vector<std::vector<bool>>& rel, bool forward,
                              std::string name) {
  const std::size_t n = states->components();
  if (rel.size() != n) throw InvalidArgument(name + ": relation size does not match the state space");
  for (const auto& row : rel)
    if (row.size() != n) throw InvalidArgument(name + ": relation size does not match the state space");
  return UpToFunction(
      states,
      [states, rel, forward, n](const Element& x) {
        Element out = states->bot();
        for (std::size_t s = 0; s < n; ++s)
          for (std::size_t t = 0; t < n; ++t)
            if (x.v[t] && (forward ? rel[t][s] : rel[s][t])) {
              out.v[s] = 1;
              break;
            }
        return out;
      },
      std::move(name), UpToFlags{true, true, true, true});
}

}  // namespace

UpToFunction u_sim(ChainProductPtr states, const std::vector<std::vector<bool>>& rel) {
  return relational_image(std::move(states), rel, true, "sim");
}

UpToFunction u_bisim(ChainProductPtr states, const std::vector<std::vector<bool>>& rel) {
  return relational_image(std::move(states), rel, false, "bisim");
}

}  // namespace fixgame
