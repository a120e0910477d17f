#include "fixgame/adjoint.hpp"

#include <unordered_map>

namespace fixgame {

namespace {

std::vector<Element> all_elements(const Lattice& L, std::size_t limit, const char* who) {
  if (!L.finite()) throw UnsupportedOperation(std::string(who) + ": " + L.name() + " is infinite");
  auto els = L.elements(limit);
  if (!els) throw UnsupportedOperation(std::string(who) + ": " + L.name() + " has more than " +
                                       std::to_string(limit) + " elements");
  return *els;
}

// Pairwise meets plus the empty meet; on a finite lattice that is all of them.
void require_meets(const Lattice& L, const std::vector<Element>& els, const UnaryMap& g, const std::string& what,
                   bool empty_meet) {
  if (empty_meet && g(L.top()) != L.top())
    throw NotMeetPreserving(what + " does not preserve the empty meet: image of top is " + L.format(g(L.top())),
                            {});
  for (std::size_t i = 0; i < els.size(); ++i)
    for (std::size_t j = i + 1; j < els.size(); ++j) {
      const auto& x = els[i];
      const auto& y = els[j];
      if (g(L.meet(x, y)) != L.meet(g(x), g(y)))
        throw NotMeetPreserving(what + " does not preserve the meet of " + L.format(x) + " and " + L.format(y),
                                {L.format(x), L.format(y)});
    }
}

class FullBasisLattice final : public Lattice {
 public:
  FullBasisLattice(LatticePtr inner, std::vector<Element> basis) : inner_(std::move(inner)), basis_(std::move(basis)) {}

  std::string name() const override { return inner_->name(); }
  bool finite() const override { return true; }
  bool leq(const Element& a, const Element& b) const override { return inner_->leq(a, b); }
  Element join(const Element& a, const Element& b) const override { return inner_->join(a, b); }
  Element meet(const Element& a, const Element& b) const override { return inner_->meet(a, b); }
  Element bot() const override { return inner_->bot(); }
  Element top() const override { return inner_->top(); }
  std::string format(const Element& e) const override { return inner_->format(e); }
  Element random_element(std::mt19937_64& rng) const override { return inner_->random_element(rng); }
  const std::vector<Element>& basis() const override { return basis_; }
  std::optional<std::vector<Element>> elements(std::size_t limit) const override { return inner_->elements(limit); }

 private:
  LatticePtr inner_;
  std::vector<Element> basis_;
};

bool in_basis(const Lattice& L, const Element& b) {
  const auto& B = L.basis();
  return std::find(B.begin(), B.end(), b) != B.end();
}

}  // namespace

UnaryMap derive_left_adjoint(LatticePtr L, const UnaryMap& f_star, CheckLimits limits) {
  auto els = all_elements(*L, limits.element_limit, "derive_left_adjoint");
  require_meets(*L, els, f_star, "f*", true);
  auto table = std::make_shared<std::unordered_map<Element, Element, ElementHash>>();
  std::vector<Element> images;
  images.reserve(els.size());
  for (const auto& l : els) images.push_back(f_star(l));
  for (const auto& b : els) {
    Element acc = L->top();
    for (std::size_t k = 0; k < els.size(); ++k)
      if (L->leq(b, images[k])) acc = L->meet(acc, els[k]);
    table->emplace(b, acc);
  }
  for (const auto& b : els)
    for (std::size_t k = 0; k < els.size(); ++k)
      if (L->leq(table->at(b), els[k]) != L->leq(b, images[k]))
        throw InvalidArgument("derive_left_adjoint: adjunction fails at " + L->format(b) + ", " +
                              L->format(els[k]));
  return [table, L](const Element& b) {
    auto it = table->find(b);
    if (it == table->end()) throw InvalidArgument("f_*: " + L->format(b) + " is not an element of " + L->name());
    return it->second;
  };
}

MeetPreservingEquation make_meet_preserving(LatticePtr L, UnaryMap f_star, Element c, std::string name,
                                            CheckLimits limits) {
  UnaryMap lower = derive_left_adjoint(L, f_star, limits);
  return {std::move(L), std::move(f_star), std::move(c), std::move(lower), std::move(name)};
}

MeetPreservingEquation from_function(LatticePtr L, const UnaryMap& f, std::string name, CheckLimits limits) {
  auto els = all_elements(*L, limits.element_limit, "from_function");
  require_meets(*L, els, f, "f", false);
  Element top = L->top();
  UnaryMap f_star = [f, top](const Element& x) { return x == top ? top : f(x); };
  return make_meet_preserving(L, f_star, f(top), std::move(name), limits);
}

AdjunctionReport verify_adjunction(const MeetPreservingEquation& eq, CheckLimits limits) {
  const auto& L = *eq.lattice;
  auto els = all_elements(L, limits.element_limit, "verify_adjunction");
  AdjunctionReport rep;
  for (const auto& b : els) {
    Element lb = eq.f_lower(b);
    for (const auto& l : els) {
      ++rep.pairs_checked;
      if (L.leq(lb, l) != L.leq(b, eq.f_star(l)) && rep.holds) {
        rep.holds = false;
        rep.witness = {L.format(b), L.format(l)};
      }
    }
  }
  return rep;
}

LatticePtr with_full_basis(LatticePtr L, std::size_t element_limit) {
  auto els = all_elements(*L, element_limit, "with_full_basis");
  Element bot = L->bot();
  std::vector<Element> basis;
  for (auto& e : els)
    if (e != bot) basis.push_back(std::move(e));
  return std::make_shared<FullBasisLattice>(std::move(L), std::move(basis));
}

Case1Result case1_check(const MeetPreservingEquation& eq, const Element& b, const UpToFunction* u,
                        CheckLimits limits) {
  const auto& L = *eq.lattice;
  auto els = all_elements(L, limits.element_limit, "case1_check");
  if (L.basis().size() + 1 != els.size())
    throw InvalidArgument("case1_check: the basis of " + L.name() +
                          " is not every non-bottom element; use case2_check");
  if (b == L.bot() || !in_basis(L, b)) throw InvalidArgument("case1_check: " + L.format(b) + " is not in the basis");
  if (u) {
    auto rep = check_compatibility(*u, [&](const Element& x) { return eq.f(x); }, limits);
    if (!rep.ok()) throw Incompatible("case1_check: " + u->name() + " is not compatible with f", rep);
  }

  Case1Result out;
  Element joined = L.bot();
  Element bi = b;
  while (true) {
    out.chain.push_back(bi);
    if (!L.leq(bi, eq.c)) {
      out.winner = Player::forall;
      return out;
    }
    if (out.chain.size() > 1 && L.leq(bi, u ? (*u)(joined) : joined)) return out;
    joined = L.join(joined, bi);
    bi = eq.f_lower(bi);
  }
}

Case2Result case2_check(const MeetPreservingEquation& eq, const Element& b, const UpToFunction* u,
                        CheckLimits limits) {
  const auto& L = *eq.lattice;
  if (!in_basis(L, b)) throw InvalidArgument("case2_check: " + L.format(b) + " is not in the basis");
  if (b == L.bot()) throw InvalidArgument("case2_check: the basis may not contain bottom");
  if (u) {
    auto rep = check_compatibility(*u, [&](const Element& x) { return eq.f(x); }, limits);
    if (!rep.ok()) throw Incompatible("case2_check: " + u->name() + " is not compatible with f", rep);
  }

  const auto& B = L.basis();
  Element joined = L.bot();
  Element bound = u ? (*u)(joined) : joined;
  std::size_t seen = 0;
  auto covered = [&](const Element& p, const std::vector<Element>& W) {
    if (W.size() != seen) {
      for (; seen < W.size(); ++seen) joined = L.join(joined, W[seen]);
      bound = u ? (*u)(joined) : joined;
    }
    return L.leq(p, bound);
  };
  auto successors = [&](const Element& p) {
    std::vector<Element> next;
    for (std::size_t k : L.minimal_join_cover(eq.f_lower(p))) next.push_back(B[k]);
    return next;
  };
  auto below_c = [&](const Element& p) { return L.leq(p, eq.c); };
  return explore_case2(b, below_c, successors, covered);
}

}  // namespace fixgame
