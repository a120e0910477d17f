#include "fixgame/game.hpp"

#include <algorithm>

namespace fixgame {

std::size_t PositionHash::operator()(const Position& p) const noexcept {
  std::size_t h = p.is_exists() ? 0x51ed270b27e2a3c1ull : 0x2545f4914f6cdd1dull;
  auto mix = [&](std::size_t x) { h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2); };
  if (p.is_exists()) {
    mix(p.basis);
    mix(p.index);
  } else {
    for (const auto& slot : p.tuple) {
      mix(slot.size());
      for (auto b : slot) mix(b);
    }
  }
  return h;
}

namespace {

using ItemSet = std::vector<std::uint32_t>;

bool intersects(const ItemSet& a, const ItemSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i;
    else ++j;
  }
  return false;
}

bool subset_of(const ItemSet& a, const ItemSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

void keep_minimal(std::vector<ItemSet>& sets) {
  std::sort(sets.begin(), sets.end(), [](const ItemSet& a, const ItemSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<ItemSet> kept;
  for (auto& s : sets) {
    bool dominated = std::any_of(kept.begin(), kept.end(), [&](const ItemSet& k) { return subset_of(k, s); });
    if (!dominated) kept.push_back(std::move(s));
  }
  sets = std::move(kept);
}

// Minimal hitting sets of a family (Berge's incremental construction).
std::vector<ItemSet> transversals(const std::vector<ItemSet>& family, std::size_t budget) {
  std::vector<ItemSet> tr{ItemSet{}};
  for (const auto& m : family) {
    std::vector<ItemSet> next;
    for (const auto& h : tr) {
      if (intersects(h, m)) {
        next.push_back(h);
        continue;
      }
      for (auto e : m) {
        ItemSet h2 = h;
        h2.insert(std::upper_bound(h2.begin(), h2.end(), e), e);
        next.push_back(std::move(h2));
      }
    }
    keep_minimal(next);
    if (next.size() > budget) throw MoveBudgetExceeded("move enumeration exceeded the transversal budget");
    tr = std::move(next);
  }
  return tr;
}

class Enumerator {
 public:
  Enumerator(const Lattice& L, std::size_t m, const std::function<bool(std::span<const Element>)>& holds,
             const SelectionOptions& opts)
      : L_(L), basis_(L.basis()), m_(m), holds_(holds), opts_(opts) {}

  std::vector<ItemSet> run() {
    const auto n = static_cast<std::uint32_t>(m_ * basis_.size());
    ItemSet full(n);
    for (std::uint32_t t = 0; t < n; ++t) full[t] = t;
    if (!test(full)) return {};
    if (test({})) return {ItemSet{}};
    std::vector<ItemSet> minimal{shrink(full)};
    std::vector<ItemSet> known_false;
    while (true) {
      bool found = false;
      for (const auto& h : transversals(minimal, opts_.transversal_budget)) {
        if (std::any_of(known_false.begin(), known_false.end(), [&](const ItemSet& f) { return subset_of(f, h); }))
          continue;
        ItemSet rest;
        std::set_difference(full.begin(), full.end(), h.begin(), h.end(), std::back_inserter(rest));
        if (test(rest)) {
          minimal.push_back(shrink(std::move(rest)));
          found = true;
          break;
        }
        known_false.push_back(h);
      }
      if (!found) break;
    }
    return minimal;
  }

  std::vector<Element> joins(const ItemSet& s) const {
    std::vector<Element> l(m_, L_.bot());
    const std::size_t nb = basis_.size();
    for (auto t : s) l[t / nb] = L_.join(l[t / nb], basis_[t % nb]);
    return l;
  }

  std::size_t evaluations() const { return evaluations_; }

 private:
  bool test(const ItemSet& s) {
    if (++evaluations_ > opts_.evaluation_budget)
      throw MoveBudgetExceeded("move enumeration exceeded the budget of " +
                               std::to_string(opts_.evaluation_budget) + " evaluations");
    auto l = joins(s);
    return holds_(l);
  }

  ItemSet shrink(ItemSet s) {
    for (std::size_t pos = s.size(); pos-- > 0;) {
      ItemSet t = s;
      t.erase(t.begin() + static_cast<std::ptrdiff_t>(pos));
      if (test(t)) s = std::move(t);
    }
    return s;
  }

  const Lattice& L_;
  const std::vector<Element>& basis_;
  std::size_t m_;
  const std::function<bool(std::span<const Element>)>& holds_;
  SelectionOptions opts_;
  std::size_t evaluations_ = 0;
};

std::vector<std::pair<std::size_t, std::size_t>> flatten(const Position& p) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t j = 0; j < p.tuple.size(); ++j)
    for (auto b : p.tuple[j]) out.emplace_back(j, b);
  return out;
}

}  // namespace

bool move_less(const Position& a, const Position& b) {
  auto fa = flatten(a);
  auto fb = flatten(b);
  if (fa.size() != fb.size()) return fa.size() < fb.size();
  return fa < fb;
}

std::vector<Position> minimal_moves(const Lattice& L, std::size_t m,
                                    const std::function<bool(std::span<const Element>)>& holds,
                                    const SelectionOptions& opts, SelectionStats* stats) {
  Enumerator en(L, m, holds, opts);
  auto minimal = en.run();
  std::vector<std::vector<Element>> ls;
  for (const auto& s : minimal) ls.push_back(en.joins(s));
  std::sort(ls.begin(), ls.end());
  ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
  auto below = [&](const std::vector<Element>& x, const std::vector<Element>& y) {
    for (std::size_t j = 0; j < m; ++j)
      if (!L.leq(x[j], y[j])) return false;
    return true;
  };
  std::vector<Position> moves;
  for (const auto& l : ls) {
    bool dominated = std::any_of(ls.begin(), ls.end(), [&](const auto& o) { return o != l && below(o, l); });
    if (dominated) continue;
    std::vector<BasisSubset> tuple;
    for (const auto& x : l) tuple.push_back(L.minimal_join_cover(x));
    moves.push_back(Position::forall_at(std::move(tuple)));
  }
  std::sort(moves.begin(), moves.end(), move_less);
  if (stats) {
    stats->evaluations += en.evaluations();
    stats->minimal_sets += minimal.size();
  }
  return moves;
}

std::vector<Position> selection(const EquationSystem& sys, std::size_t b, std::size_t i,
                                const SelectionOptions& opts, SelectionStats* stats) {
  const auto& L = sys.lattice();
  if (!L.finite()) throw UnsupportedOperation("selection needs a finite lattice");
  if (i >= sys.size() || b >= L.basis().size()) throw InvalidArgument("position out of range");
  const Element& target = L.basis()[b];
  std::function<bool(std::span<const Element>)> holds = [&](std::span<const Element> l) {
    return L.leq(target, sys.eval(i, l));
  };
  return minimal_moves(L, sys.size(), holds, opts, stats);
}

std::vector<Position> exists_moves(const EquationSystem& sys, std::size_t b, std::size_t i,
                                   std::size_t max_tuple_basis) {
  const auto& L = sys.lattice();
  if (!L.finite()) throw UnsupportedOperation("exists_moves needs a finite lattice");
  if (i >= sys.size() || b >= L.basis().size()) throw InvalidArgument("position out of range");
  const std::size_t m = sys.size();
  const std::size_t nb = L.basis().size();
  const std::size_t n = m * nb;
  if (n > max_tuple_basis || n >= 63)
    throw MoveBudgetExceeded("exists_moves enumerates 2^" + std::to_string(n) +
                             " tuples; use selection() or raise max_tuple_basis");
  std::vector<Position> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<BasisSubset> tuple(m);
    for (std::size_t t = 0; t < n; ++t)
      if (mask >> t & 1u) tuple[t / nb].push_back(t % nb);
    std::vector<Element> l;
    for (const auto& slot : tuple) l.push_back(L.join_of(slot));
    if (L.leq(L.basis()[b], sys.eval(i, l))) out.push_back(Position::forall_at(std::move(tuple)));
  }
  std::sort(out.begin(), out.end(), move_less);
  return out;
}

std::vector<Position> forall_moves(const Position& pos) {
  if (pos.is_exists()) throw InvalidArgument("forall_moves expects a universal position");
  std::vector<Position> out;
  for (std::size_t j = 0; j < pos.tuple.size(); ++j)
    for (auto b : pos.tuple[j]) out.push_back(Position::exists_at(b, j));
  return out;
}

Player winner_of_play(const Play& play, const std::vector<Sign>& signs) {
  std::vector<Position> all = play.prefix;
  all.insert(all.end(), play.cycle.begin(), play.cycle.end());
  if (all.empty()) throw MalformedPlay("empty play");
  for (const auto& p : all)
    if (p.is_exists() && p.index >= signs.size()) throw MalformedPlay("position index exceeds the system size");
  for (std::size_t k = 1; k < all.size(); ++k)
    if (all[k].owner() == all[k - 1].owner()) throw MalformedPlay("players do not alternate");
  if (play.cycle.empty()) return opponent(all.back().owner());
  if (play.cycle.back().owner() == play.cycle.front().owner())
    throw MalformedPlay("cycle does not close with an alternating move");
  std::size_t h = 0;
  for (const auto& p : play.cycle) h = std::max(h, p.priority());
  if (h == 0) throw MalformedPlay("cycle contains no existential position");
  return signs[h - 1] == Sign::nu ? Player::exists : Player::forall;
}

std::string format_position(const Lattice& L, const Position& p) {
  if (p.is_exists()) return "(" + L.format_basis(p.basis) + "," + std::to_string(p.index + 1) + ")";
  std::string s = "(";
  for (std::size_t j = 0; j < p.tuple.size(); ++j) {
    if (j) s += ",";
    if (p.tuple[j].empty()) {
      s += "\xE2\x88\x85";
      continue;
    }
    s += "{";
    for (std::size_t k = 0; k < p.tuple[j].size(); ++k) {
      if (k) s += ",";
      s += L.format_basis(p.tuple[j][k]);
    }
    s += "}";
  }
  return s + ")";
}

nlohmann::json position_json(const Lattice& L, const Position& p) {
  if (p.is_exists()) return {{"player", "E"}, {"b", L.format_basis(p.basis)}, {"i", p.index + 1}};
  nlohmann::json slots = nlohmann::json::array();
  for (const auto& slot : p.tuple) {
    nlohmann::json xs = nlohmann::json::array();
    for (auto b : slot) xs.push_back(L.format_basis(b));
    slots.push_back(xs);
  }
  return {{"player", "A"}, {"X", slots}};
}

}  // namespace fixgame
