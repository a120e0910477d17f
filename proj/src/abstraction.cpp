#include "fixgame/abstraction.hpp"

namespace fixgame {

std::string ConditionWitness::describe() const {
  std::string t;
  for (std::size_t j = 0; j < tuple.size(); ++j) t += (j ? ", " : "") + tuple[j];
  return "equation " + std::to_string(index + 1) + " at (" + t + "): " + lhs + " is not below " + rhs;
}

namespace {

ChainProductPtr grid_for(const std::vector<std::string>& labels, std::int64_t n) {
  return labels.size() == 1 ? make_grid(n) : make_pointwise_grid(labels, n);
}

}  // namespace

RealGaloisConnection grid_alpha(std::int64_t n, std::vector<std::string> labels) {
  if (n < 1) throw InvalidArgument("grid_alpha: n must be positive");
  if (labels.empty()) throw InvalidArgument("grid_alpha: no components");
  auto A = grid_for(labels, n);
  auto C = make_unit_interval(labels);
  RealGaloisConnection gc;
  gc.concrete = C;
  gc.abstract = A;
  gc.alpha = [n](const RealVector& x) {
    Element e;
    for (const auto& r : x.v) {
      Rational c = ceil_to_grid(r, n) * n;
      e.v.push_back(static_cast<std::int64_t>(numerator(c)));
    }
    return e;
  };
  gc.gamma = [n](const Element& a) {
    RealVector out;
    for (auto k : a.v) out.v.emplace_back(k, n);
    return out;
  };
  gc.name = "grid-alpha:" + std::to_string(n);
  gc.insertion = true;
  return gc;
}

GaloisConnection grid_refinement(std::int64_t fine, std::int64_t n, std::vector<std::string> labels) {
  if (n < 1 || fine < 1 || fine % n != 0) throw InvalidArgument("grid_refinement: n must divide the fine grid size");
  if (labels.empty()) throw InvalidArgument("grid_refinement: no components");
  const std::int64_t r = fine / n;
  GaloisConnection gc;
  gc.concrete = grid_for(labels, fine);
  gc.abstract = grid_for(labels, n);
  gc.alpha = [r](const Element& x) {
    Element e;
    for (auto k : x.v) e.v.push_back((k + r - 1) / r);
    return e;
  };
  gc.gamma = [r](const Element& a) {
    Element e;
    for (auto k : a.v) e.v.push_back(k * r);
    return e;
  };
  gc.name = "grid-refinement:" + std::to_string(fine) + "->" + std::to_string(n);
  gc.insertion = true;
  return gc;
}

GaloisConnection join_connection(LatticePtr L) {
  std::vector<std::string> names;
  for (std::size_t b = 0; b < L->basis().size(); ++b) names.push_back(L->format_basis(b));
  auto P = make_powerset(names);
  GaloisConnection gc;
  gc.concrete = P;
  gc.abstract = L;
  gc.alpha = [L, P](const Element& x) {
    auto ms = P->members(x);
    return L->join_of(BasisSubset(ms.begin(), ms.end()));
  };
  gc.gamma = [L, P](const Element& l) {
    auto d = L->decompose(l);
    return P->from_members(d);
  };
  gc.name = "join";
  gc.insertion = true;
  return gc;
}

GaloisConnection simulation_connection(ChainProductPtr concrete, ChainProductPtr abstract,
                                       const std::vector<std::pair<std::size_t, std::size_t>>& R) {
  const std::size_t nc = concrete->components(), na = abstract->components();
  std::vector<std::vector<std::size_t>> image(nc);
  for (auto [c, a] : R) {
    if (c >= nc || a >= na) throw InvalidArgument("simulation_connection: pair out of range");
    image[c].push_back(a);
  }
  GaloisConnection gc;
  gc.concrete = concrete;
  gc.abstract = abstract;
  gc.alpha = [image, abstract](const Element& x) {
    Element out = abstract->bot();
    for (std::size_t c = 0; c < image.size(); ++c)
      if (x.v[c])
        for (auto a : image[c]) out.v[a] = 1;
    return out;
  };
  gc.gamma = [image, concrete](const Element& y) {
    Element out = concrete->bot();
    for (std::size_t c = 0; c < image.size(); ++c)
      out.v[c] = std::all_of(image[c].begin(), image[c].end(), [&](std::size_t a) { return y.v[a] != 0; });
    return out;
  };
  gc.name = "sim";
  return gc;
}

}  // namespace fixgame
