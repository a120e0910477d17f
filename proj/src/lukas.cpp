#include "fixgame/applications.hpp"

#include "translate.hpp"

namespace fixgame::lukas {

namespace {

const char* const kLanguage = "Lukasiewicz terms";

std::int64_t ceil_level(const Rational& r) {
  using boost::multiprecision::cpp_int;
  cpp_int num = boost::multiprecision::numerator(r), den = boost::multiprecision::denominator(r);
  cpp_int q = num / den;
  if (q * den < num) ++q;
  return q.convert_to<std::int64_t>();
}

Rational unit(const Expr& e, const Rational& r, const char* what) {
  if (r < 0 || r > 1) throw ParseError(e.pos, std::string(what) + " " + format_rational(r) + " is outside [0,1]");
  return r;
}

const Values& prop(const Expr& e, const Pndt* N) {
  if (!N) throw ParseError(e.pos, "proposition " + e.text + " needs a PNDT");
  auto it = N->props.find(e.text);
  if (it == N->props.end()) detail::not_supported(e, kLanguage);
  return it->second;
}

void need_pndt(const Expr& e, const Pndt* N) {
  if (!N) throw ParseError(e.pos, "modality " + e.text + " needs a PNDT");
}

// Shared shape of both semantics; V converts between lattice elements and
// per-state values, `round` is α after every operator.
template <class E, class Codec>
detail::Semantics<E> semantics(const Pndt* N, Codec codec) {
  detail::Semantics<E> sem;
  sem.leaf = [N, codec](const Expr& e) -> detail::Compiled<E> {
    Values v;
    if (e.kind == Expr::Kind::number) {
      v.assign(codec.width, unit(e, e.number, "constant"));
    } else if (e.kind == Expr::Kind::ident) {
      v = prop(e, N);
    } else {
      detail::not_supported(e, kLanguage);
    }
    E c = codec.encode(v);
    return [c](std::span<const E>) { return c; };
  };
  sem.node = [N, codec](const Expr& e, std::vector<detail::Compiled<E>> k) -> detail::Compiled<E> {
    using C = detail::Compiled<E>;
    auto pointwise = [codec](C a, C b, auto op) -> C {
      return [codec, a, b, op](std::span<const E> x) {
        Values u = codec.decode(a(x)), w = codec.decode(b(x));
        for (std::size_t s = 0; s < u.size(); ++s) u[s] = op(u[s], w[s]);
        return codec.encode(u);
      };
    };
    if (e.kind == Expr::Kind::binary) {
      if (e.text == "\\/") return pointwise(k[0], k[1], [](const Rational& a, const Rational& b) { return std::max(a, b); });
      if (e.text == "/\\") return pointwise(k[0], k[1], [](const Rational& a, const Rational& b) { return std::min(a, b); });
      if (e.text == "(+)")
        return pointwise(k[0], k[1], [](const Rational& a, const Rational& b) { return std::min<Rational>(a + b, 1); });
      if (e.text == "(.)")
        return pointwise(k[0], k[1],
                         [](const Rational& a, const Rational& b) { return std::max<Rational>(a + b - 1, 0); });
    }
    if (e.kind == Expr::Kind::unary && e.text == "*") {
      Rational r = unit(e, e.number, "scalar");
      return [codec, r, a = k[0]](std::span<const E> x) {
        Values u = codec.decode(a(x));
        for (auto& v : u) v *= r;
        return codec.encode(u);
      };
    }
    if (e.kind == Expr::Kind::unary && e.text == "~") {
      const Expr& p = e.kids[0];
      if (p.kind != Expr::Kind::ident) throw ParseError(e.pos, "~ applies to propositions only");
      Values v = prop(p, N);
      for (auto& r : v) r = 1 - r;
      E c = codec.encode(v);
      return [c](std::span<const E>) { return c; };
    }
    if (e.kind == Expr::Kind::unary && (e.text == "<>" || e.text == "[]")) {
      need_pndt(e, N);
      bool angelic = e.text == "<>";
      return [codec, N, angelic, a = k[0]](std::span<const E> x) {
        Values u = codec.decode(a(x));
        Values out(u.size());
        for (std::size_t s = 0; s < u.size(); ++s) {
          bool first = true;
          for (const auto& d : N->dists[s]) {
            Rational acc = 0;
            for (std::size_t y = 0; y < u.size(); ++y) acc += d[y] * u[y];
            if (first || (angelic ? acc > out[s] : acc < out[s])) out[s] = acc;
            first = false;
          }
        }
        return codec.encode(out);
      };
    }
    detail::not_supported(e, kLanguage);
  };
  return sem;
}

struct RealCodec {
  std::size_t width;
  Values decode(const RealVector& v) const { return v.v; }
  RealVector encode(const Values& v) const { return RealVector{v}; }
};

// encode rounds up to the grid, so every operator is followed by α_n.
struct GridCodec {
  std::size_t width;
  std::int64_t n;
  Values decode(const Element& e) const {
    Values out;
    out.reserve(e.v.size());
    for (auto k : e.v) out.emplace_back(k, n);
    return out;
  }
  Element encode(const Values& v) const {
    Element e;
    e.v.reserve(v.size());
    for (const auto& r : v) e.v.push_back(ceil_level(r * n));
    return e;
  }
};

Evaluation from_real(const RealSystem& sys, std::size_t target, const Rational& tol, std::size_t max_iter,
                     std::vector<std::string> labels) {
  auto r = solve_epsilon(sys, tol, max_iter);
  Evaluation out;
  out.labels = std::move(labels);
  for (const auto& eq : sys.equations()) out.names.push_back(eq.name);
  for (const auto& v : r.values) out.values.push_back(v.v);
  out.target = target;
  out.converged = r.converged;
  out.exact = r.exact;
  for (const auto& l : r.loops) out.iterations += l.total_iterations;
  return out;
}

Evaluation from_grid(const EquationSystem& sys, std::size_t target, std::int64_t n, std::vector<std::string> labels) {
  auto sol = solve(sys);
  Evaluation out;
  out.labels = std::move(labels);
  for (const auto& eq : sys.equations()) out.names.push_back(eq.name);
  GridCodec codec{out.labels.size(), n};
  for (const auto& e : sol) out.values.push_back(codec.decode(e));
  out.target = target;
  return out;
}

}  // namespace

std::vector<std::string> labels(const Pndt* N) { return N ? N->states : std::vector<std::string>{"x"}; }

std::shared_ptr<const UnitIntervalLattice> real_lattice(const Pndt* N) { return make_unit_interval(labels(N)); }

ChainProductPtr grid_lattice(const Pndt* N, std::int64_t n) {
  return N ? make_pointwise_grid(N->states, n) : make_grid(n);
}

RealSystem real_system(const Expr& t, const Pndt* N, std::size_t* target) {
  auto sem = semantics<RealVector>(N, RealCodec{labels(N).size()});
  auto tr = detail::Translator<RealVector>(sem).formula(t);
  if (target) *target = tr.target;
  return RealSystem(real_lattice(N), std::move(tr.equations));
}

RealSystem real_system_from_dsl(const std::vector<DslEquation>& eqs, const Pndt* N) {
  auto sem = semantics<RealVector>(N, RealCodec{labels(N).size()});
  return RealSystem(real_lattice(N), detail::Translator<RealVector>(sem).system(eqs));
}

EquationSystem grid_system(const Expr& t, const Pndt* N, std::int64_t n, std::size_t* target) {
  auto L = grid_lattice(N, n);
  auto sem = semantics<Element>(N, GridCodec{labels(N).size(), n});
  auto tr = detail::Translator<Element>(sem).formula(t);
  if (target) *target = tr.target;
  return EquationSystem(L, std::move(tr.equations));
}

EquationSystem grid_system_from_dsl(const std::vector<DslEquation>& eqs, const Pndt* N, std::int64_t n) {
  auto L = grid_lattice(N, n);
  auto sem = semantics<Element>(N, GridCodec{labels(N).size(), n});
  return EquationSystem(L, detail::Translator<Element>(sem).system(eqs));
}

Evaluation evaluate_grid(const Expr& t, const Pndt* N, std::int64_t n) {
  std::size_t target = 0;
  auto sys = grid_system(t, N, n, &target);
  return from_grid(sys, target, n, labels(N));
}

Evaluation evaluate_epsilon(const Expr& t, const Pndt* N, const Rational& tol, std::size_t max_iter) {
  std::size_t target = 0;
  auto sys = real_system(t, N, &target);
  return from_real(sys, target, tol, max_iter, labels(N));
}

Evaluation evaluate_grid(const std::vector<DslEquation>& eqs, const Pndt* N, std::int64_t n) {
  auto sys = grid_system_from_dsl(eqs, N, n);
  return from_grid(sys, sys.size() - 1, n, labels(N));
}

Evaluation evaluate_epsilon(const std::vector<DslEquation>& eqs, const Pndt* N, const Rational& tol,
                            std::size_t max_iter) {
  auto sys = real_system_from_dsl(eqs, N);
  return from_real(sys, sys.size() - 1, tol, max_iter, labels(N));
}

}  // namespace fixgame::lukas
