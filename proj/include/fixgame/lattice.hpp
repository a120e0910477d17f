#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fixgame {

using Rational = boost::multiprecision::cpp_rational;

class UnsupportedOperation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Element of a finite lattice. For product-of-chains lattices v holds one
// level per component; table lattices store a single element index.
struct Element {
  std::vector<std::int64_t> v;

  friend bool operator==(const Element&, const Element&) = default;
  friend auto operator<=>(const Element&, const Element&) = default;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept;
};

// Element of [0,1]^k with exact rational components.
struct RealVector {
  std::vector<Rational> v;

  friend bool operator==(const RealVector& a, const RealVector& b) { return a.v == b.v; }
  friend bool operator<(const RealVector& a, const RealVector& b) { return a.v < b.v; }
};

// Sorted indices into Lattice::basis().
using BasisSubset = std::vector<std::size_t>;

std::string format_rational(const Rational& r);
Rational parse_rational(const std::string& text);
Rational ceil_to_grid(const Rational& x, std::int64_t n);

template <class E>
class BasicLattice {
 public:
  using value_type = E;

  virtual ~BasicLattice() = default;

  virtual std::string name() const = 0;
  virtual bool finite() const = 0;
  virtual bool leq(const E& a, const E& b) const = 0;
  virtual E join(const E& a, const E& b) const = 0;
  virtual E meet(const E& a, const E& b) const = 0;
  virtual E bot() const = 0;
  virtual E top() const = 0;
  virtual std::string format(const E& e) const = 0;
  virtual E random_element(std::mt19937_64& rng) const = 0;

  virtual const std::vector<E>& basis() const {
    throw UnsupportedOperation(name() + ": lattice has no finite basis");
  }

  // Short label of a basis element, used when printing positions.
  virtual std::string format_basis(std::size_t idx) const { return format(basis().at(idx)); }

  // Every element, when there are at most `limit` of them.
  virtual std::optional<std::vector<E>> elements(std::size_t limit) const {
    (void)limit;
    return std::nullopt;
  }

  // Canonical X with join(X) = l. Default: maximal elements of decompose(l).
  virtual BasisSubset minimal_join_cover(const E& l) const {
    BasisSubset all = decompose(l);
    const auto& b = basis();
    BasisSubset out;
    for (std::size_t x : all) {
      bool dominated = false;
      for (std::size_t y : all) {
        if (x != y && leq(b[x], b[y])) {
          dominated = true;
          break;
        }
      }
      if (!dominated) out.push_back(x);
    }
    return out;
  }

  E join_all(std::span<const E> xs) const {
    E acc = bot();
    for (const auto& x : xs) acc = join(acc, x);
    return acc;
  }

  E meet_all(std::span<const E> xs) const {
    E acc = top();
    for (const auto& x : xs) acc = meet(acc, x);
    return acc;
  }

  bool eq(const E& a, const E& b) const { return leq(a, b) && leq(b, a); }

  BasisSubset decompose(const E& l) const {
    const auto& b = basis();
    BasisSubset out;
    for (std::size_t i = 0; i < b.size(); ++i)
      if (leq(b[i], l)) out.push_back(i);
    return out;
  }

  E join_of(const BasisSubset& xs) const {
    const auto& b = basis();
    E acc = bot();
    for (std::size_t i : xs) acc = join(acc, b.at(i));
    return acc;
  }

  bool hoare_leq(const BasisSubset& x, const BasisSubset& y) const {
    return leq(join_of(x), join_of(y));
  }

  // All elements if at most `max` exist, otherwise ⊥, ⊤ and random samples.
  std::vector<E> test_elements(std::mt19937_64& rng, std::size_t max) const {
    if (auto all = elements(max)) return *all;
    std::vector<E> out{bot(), top()};
    while (out.size() < max) out.push_back(random_element(rng));
    return out;
  }
};

using Lattice = BasicLattice<Element>;
using LatticePtr = std::shared_ptr<const Lattice>;
using RealLattice = BasicLattice<RealVector>;
using RealLatticePtr = std::shared_ptr<const RealLattice>;

// Finite product of chains 0..h_j. Covers powersets (all heights 1), relation
// lattices, the grid [0,1]_{/n} and pointwise grids S -> [0,1]_{/n}.
class ChainProductLattice final : public Lattice {
 public:
  enum class Style { powerset, relation, grid, pointwise };

  ChainProductLattice(std::vector<std::int64_t> heights, std::vector<std::string> labels,
                      Style style, std::string name);

  std::string name() const override { return name_; }
  bool finite() const override { return true; }
  bool leq(const Element& a, const Element& b) const override;
  Element join(const Element& a, const Element& b) const override;
  Element meet(const Element& a, const Element& b) const override;
  Element bot() const override { return bot_; }
  Element top() const override { return top_; }
  std::string format(const Element& e) const override;
  std::string format_basis(std::size_t idx) const override;
  Element random_element(std::mt19937_64& rng) const override;
  const std::vector<Element>& basis() const override { return basis_; }
  std::optional<std::vector<Element>> elements(std::size_t limit) const override;
  BasisSubset minimal_join_cover(const Element& l) const override;

  Style style() const { return style_; }
  std::size_t components() const { return heights_.size(); }
  std::int64_t height(std::size_t j) const { return heights_.at(j); }
  const std::vector<std::string>& labels() const { return labels_; }

  // Basis element with level k >= 1 on component j.
  std::size_t basis_index(std::size_t j, std::int64_t k) const;
  std::pair<std::size_t, std::int64_t> basis_coords(std::size_t idx) const;

  // Level of component j as a fraction of its height.
  Rational value(const Element& e, std::size_t j) const;

  // Members of a powerset/relation element as component indices.
  std::vector<std::size_t> members(const Element& e) const;
  Element from_members(std::span<const std::size_t> js) const;

 private:
  std::vector<std::int64_t> heights_;
  std::vector<std::string> labels_;
  Style style_;
  std::string name_;
  std::vector<std::size_t> offsets_;
  std::vector<Element> basis_;
  Element bot_, top_;
};

using ChainProductPtr = std::shared_ptr<const ChainProductLattice>;

// Finite lattice given by its order relation; basis = join-irreducibles.
class TableLattice final : public Lattice {
 public:
  // leq[i][j] is true iff element i is below element j.
  TableLattice(std::vector<std::vector<bool>> leq, std::vector<std::string> names, std::string name);

  std::string name() const override { return name_; }
  bool finite() const override { return true; }
  bool leq(const Element& a, const Element& b) const override;
  Element join(const Element& a, const Element& b) const override;
  Element meet(const Element& a, const Element& b) const override;
  Element bot() const override { return Element{{bot_}}; }
  Element top() const override { return Element{{top_}}; }
  std::string format(const Element& e) const override;
  Element random_element(std::mt19937_64& rng) const override;
  const std::vector<Element>& basis() const override { return basis_; }
  std::optional<std::vector<Element>> elements(std::size_t limit) const override;

  std::size_t size() const { return leq_.size(); }

 private:
  std::size_t index(const Element& e) const;

  std::vector<std::vector<bool>> leq_;
  std::vector<std::vector<std::int64_t>> join_, meet_;
  std::vector<std::string> names_;
  std::string name_;
  std::int64_t bot_ = 0, top_ = 0;
  std::vector<Element> basis_;
};

// [0,1]^k over exact rationals. Not finite: only for epsilon iteration.
class UnitIntervalLattice final : public RealLattice {
 public:
  explicit UnitIntervalLattice(std::vector<std::string> labels);

  std::string name() const override;
  bool finite() const override { return false; }
  bool leq(const RealVector& a, const RealVector& b) const override;
  RealVector join(const RealVector& a, const RealVector& b) const override;
  RealVector meet(const RealVector& a, const RealVector& b) const override;
  RealVector bot() const override;
  RealVector top() const override;
  std::string format(const RealVector& e) const override;
  RealVector random_element(std::mt19937_64& rng) const override;

  std::size_t dimension() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<std::string> labels_;
};

Rational max_distance(const RealVector& a, const RealVector& b);

ChainProductPtr make_powerset(std::vector<std::string> universe);
ChainProductPtr make_relation(const std::vector<std::string>& states);
ChainProductPtr make_grid(std::int64_t n);
ChainProductPtr make_pointwise_grid(std::vector<std::string> states, std::int64_t n);
std::shared_ptr<const UnitIntervalLattice> make_unit_interval(std::vector<std::string> labels = {"x"});

// Small named lattices used by tests and random generators.
std::shared_ptr<const TableLattice> make_chain(std::size_t n);
std::shared_ptr<const TableLattice> make_m3();
std::shared_ptr<const TableLattice> make_n5();
std::shared_ptr<const TableLattice> make_product_table(const TableLattice& a, const TableLattice& b);

}  // namespace fixgame
