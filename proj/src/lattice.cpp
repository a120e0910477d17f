#include "fixgame/lattice.hpp"

#include <algorithm>
#include <sstream>

namespace fixgame {

std::size_t ElementHash::operator()(const Element& e) const noexcept {
  std::size_t h = 0xcbf29ce484222325ull;
  for (auto x : e.v) {
    h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

std::string format_rational(const Rational& r) {
  using boost::multiprecision::cpp_int;
  cpp_int num = boost::multiprecision::numerator(r);
  cpp_int den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  cpp_int d = den;
  int twos = 0, fives = 0;
  while (d % 2 == 0) { d /= 2; ++twos; }
  while (d % 5 == 0) { d /= 5; ++fives; }
  if (d != 1) return num.str() + "/" + den.str();
  int digits = std::max(twos, fives);
  cpp_int scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  cpp_int scaled = num * scale / den;
  bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  std::string s = scaled.str();
  if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
  s.insert(s.size() - digits, ".");
  return (neg ? "-" : "") + s;
}

Rational parse_rational(const std::string& text) {
  auto bad = [&] { return InvalidArgument("not a rational number: '" + text + "'"); };
  if (text.empty()) throw bad();
  auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      auto num = Rational(parse_rational(text.substr(0, slash)));
      auto den = Rational(parse_rational(text.substr(slash + 1)));
      if (den == 0) throw bad();
      return num / den;
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) {
      if (text.find_first_not_of("-0123456789") != std::string::npos) throw bad();
      std::string digits = text;
      bool neg = digits[0] == '-';
      if (neg) digits.erase(0, 1);
      if (digits.empty()) throw bad();
      digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
      return Rational(boost::multiprecision::cpp_int((neg ? "-" : "") + digits));
    }
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    bool neg = !digits.empty() && digits[0] == '-';
    if (neg) digits.erase(0, 1);
    // cpp_int reads a leading zero as an octal prefix
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
    if (digits.empty()) throw bad();
    if (neg) digits.insert(0, "-");
    boost::multiprecision::cpp_int den = 1;
    for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
    return Rational(boost::multiprecision::cpp_int(digits), den);
  } catch (const std::runtime_error&) {
    throw bad();
  }
}

Rational ceil_to_grid(const Rational& x, std::int64_t n) {
  using boost::multiprecision::cpp_int;
  Rational scaled = x * n;
  cpp_int num = boost::multiprecision::numerator(scaled);
  cpp_int den = boost::multiprecision::denominator(scaled);
  cpp_int q = num / den;
  if (q * den < num) q += 1;
  return Rational(q, cpp_int(n));
}

// ---------------------------------------------------------------------------

ChainProductLattice::ChainProductLattice(std::vector<std::int64_t> heights,
                                         std::vector<std::string> labels, Style style,
                                         std::string name)
    : heights_(std::move(heights)), labels_(std::move(labels)), style_(style), name_(std::move(name)) {
  if (labels_.size() != heights_.size()) throw InvalidArgument("label count differs from component count");
  std::size_t offset = 0;
  for (std::size_t j = 0; j < heights_.size(); ++j) {
    if (heights_[j] < 1) throw InvalidArgument("chain height must be positive");
    offsets_.push_back(offset);
    for (std::int64_t k = 1; k <= heights_[j]; ++k) {
      Element e{std::vector<std::int64_t>(heights_.size(), 0)};
      e.v[j] = k;
      basis_.push_back(std::move(e));
    }
    offset += static_cast<std::size_t>(heights_[j]);
  }
  bot_ = Element{std::vector<std::int64_t>(heights_.size(), 0)};
  top_ = Element{heights_};
}

bool ChainProductLattice::leq(const Element& a, const Element& b) const {
  for (std::size_t j = 0; j < a.v.size(); ++j)
    if (a.v[j] > b.v[j]) return false;
  return true;
}

Element ChainProductLattice::join(const Element& a, const Element& b) const {
  Element out = a;
  for (std::size_t j = 0; j < out.v.size(); ++j) out.v[j] = std::max(out.v[j], b.v[j]);
  return out;
}

Element ChainProductLattice::meet(const Element& a, const Element& b) const {
  Element out = a;
  for (std::size_t j = 0; j < out.v.size(); ++j) out.v[j] = std::min(out.v[j], b.v[j]);
  return out;
}

Rational ChainProductLattice::value(const Element& e, std::size_t j) const {
  return Rational(e.v.at(j), heights_.at(j));
}

std::string ChainProductLattice::format(const Element& e) const {
  std::ostringstream os;
  switch (style_) {
    case Style::powerset:
    case Style::relation: {
      os << '{';
      bool first = true;
      for (std::size_t j = 0; j < e.v.size(); ++j) {
        if (!e.v[j]) continue;
        if (!first) os << ',';
        os << labels_[j];
        first = false;
      }
      os << '}';
      break;
    }
    case Style::grid:
      os << format_rational(value(e, 0));
      break;
    case Style::pointwise:
      os << '[';
      for (std::size_t j = 0; j < e.v.size(); ++j) {
        if (j) os << ", ";
        os << labels_[j] << '=' << format_rational(value(e, j));
      }
      os << ']';
      break;
  }
  return os.str();
}

std::string ChainProductLattice::format_basis(std::size_t idx) const {
  auto [j, k] = basis_coords(idx);
  switch (style_) {
    case Style::powerset:
    case Style::relation:
      return labels_[j];
    case Style::grid:
      return format_rational(Rational(k, heights_[j]));
    case Style::pointwise:
      return labels_[j] + "=" + format_rational(Rational(k, heights_[j]));
  }
  return {};
}

Element ChainProductLattice::random_element(std::mt19937_64& rng) const {
  Element e = bot_;
  for (std::size_t j = 0; j < heights_.size(); ++j) {
    std::uniform_int_distribution<std::int64_t> d(0, heights_[j]);
    e.v[j] = d(rng);
  }
  return e;
}

std::optional<std::vector<Element>> ChainProductLattice::elements(std::size_t limit) const {
  std::size_t count = 1;
  for (auto h : heights_) {
    if (count > limit / static_cast<std::size_t>(h + 1)) return std::nullopt;
    count *= static_cast<std::size_t>(h + 1);
  }
  if (count > limit) return std::nullopt;
  std::vector<Element> out;
  out.reserve(count);
  Element cur = bot_;
  while (true) {
    out.push_back(cur);
    std::size_t j = 0;
    while (j < cur.v.size() && cur.v[j] == heights_[j]) cur.v[j++] = 0;
    if (j == cur.v.size()) break;
    ++cur.v[j];
  }
  return out;
}

BasisSubset ChainProductLattice::minimal_join_cover(const Element& l) const {
  BasisSubset out;
  for (std::size_t j = 0; j < l.v.size(); ++j)
    if (l.v[j] > 0) out.push_back(basis_index(j, l.v[j]));
  return out;
}

std::size_t ChainProductLattice::basis_index(std::size_t j, std::int64_t k) const {
  if (j >= heights_.size() || k < 1 || k > heights_[j]) throw InvalidArgument("basis coordinates out of range");
  return offsets_[j] + static_cast<std::size_t>(k - 1);
}

std::pair<std::size_t, std::int64_t> ChainProductLattice::basis_coords(std::size_t idx) const {
  if (idx >= basis_.size()) throw InvalidArgument("basis index out of range");
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), idx);
  std::size_t j = static_cast<std::size_t>(it - offsets_.begin()) - 1;
  return {j, static_cast<std::int64_t>(idx - offsets_[j]) + 1};
}

std::vector<std::size_t> ChainProductLattice::members(const Element& e) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < e.v.size(); ++j)
    if (e.v[j]) out.push_back(j);
  return out;
}

Element ChainProductLattice::from_members(std::span<const std::size_t> js) const {
  Element e = bot_;
  for (auto j : js) e.v.at(j) = heights_.at(j);
  return e;
}

// ---------------------------------------------------------------------------

TableLattice::TableLattice(std::vector<std::vector<bool>> leq, std::vector<std::string> names,
                           std::string name)
    : leq_(std::move(leq)), names_(std::move(names)), name_(std::move(name)) {
  const std::size_t n = leq_.size();
  if (n == 0) throw InvalidArgument("table lattice needs at least one element");
  if (names_.empty())
    for (std::size_t i = 0; i < n; ++i) names_.push_back(std::to_string(i));
  if (names_.size() != n) throw InvalidArgument("name count differs from element count");
  for (const auto& row : leq_)
    if (row.size() != n) throw InvalidArgument("order matrix is not square");
  for (std::size_t i = 0; i < n; ++i) {
    if (!leq_[i][i]) throw InvalidArgument("order is not reflexive");
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && leq_[i][j] && leq_[j][i]) throw InvalidArgument("order is not antisymmetric");
      for (std::size_t k = 0; k < n; ++k)
        if (leq_[i][j] && leq_[j][k] && !leq_[i][k]) throw InvalidArgument("order is not transitive");
    }
  }
  auto bound = [&](std::size_t a, std::size_t b, bool upper) -> std::int64_t {
    std::vector<std::size_t> cands;
    for (std::size_t c = 0; c < n; ++c) {
      bool ok = upper ? (leq_[a][c] && leq_[b][c]) : (leq_[c][a] && leq_[c][b]);
      if (ok) cands.push_back(c);
    }
    for (auto c : cands) {
      bool best = true;
      for (auto d : cands)
        if (upper ? !leq_[c][d] : !leq_[d][c]) best = false;
      if (best) return static_cast<std::int64_t>(c);
    }
    throw InvalidArgument("order is not a lattice: elements " + names_[a] + " and " + names_[b] +
                          " lack a " + (upper ? "join" : "meet"));
  };
  join_.assign(n, std::vector<std::int64_t>(n));
  meet_.assign(n, std::vector<std::int64_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      join_[a][b] = bound(a, b, true);
      meet_[a][b] = bound(a, b, false);
    }
  for (std::size_t i = 0; i < n; ++i) {
    bool is_bot = true, is_top = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (!leq_[i][j]) is_bot = false;
      if (!leq_[j][i]) is_top = false;
    }
    if (is_bot) bot_ = static_cast<std::int64_t>(i);
    if (is_top) top_ = static_cast<std::int64_t>(i);
  }
  // join-irreducible: not bottom and not the join of the elements strictly below it
  for (std::size_t i = 0; i < n; ++i) {
    if (static_cast<std::int64_t>(i) == bot_) continue;
    std::int64_t acc = bot_;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && leq_[j][i]) acc = join_[static_cast<std::size_t>(acc)][j];
    if (acc != static_cast<std::int64_t>(i)) basis_.push_back(Element{{static_cast<std::int64_t>(i)}});
  }
}

std::size_t TableLattice::index(const Element& e) const {
  if (e.v.size() != 1 || e.v[0] < 0 || static_cast<std::size_t>(e.v[0]) >= leq_.size())
    throw InvalidArgument("element does not belong to " + name_);
  return static_cast<std::size_t>(e.v[0]);
}

bool TableLattice::leq(const Element& a, const Element& b) const { return leq_[index(a)][index(b)]; }

Element TableLattice::join(const Element& a, const Element& b) const {
  return Element{{join_[index(a)][index(b)]}};
}

Element TableLattice::meet(const Element& a, const Element& b) const {
  return Element{{meet_[index(a)][index(b)]}};
}

std::string TableLattice::format(const Element& e) const { return names_[index(e)]; }

Element TableLattice::random_element(std::mt19937_64& rng) const {
  std::uniform_int_distribution<std::int64_t> d(0, static_cast<std::int64_t>(leq_.size()) - 1);
  return Element{{d(rng)}};
}

std::optional<std::vector<Element>> TableLattice::elements(std::size_t limit) const {
  if (leq_.size() > limit) return std::nullopt;
  std::vector<Element> out;
  for (std::size_t i = 0; i < leq_.size(); ++i) out.push_back(Element{{static_cast<std::int64_t>(i)}});
  return out;
}

// ---------------------------------------------------------------------------

UnitIntervalLattice::UnitIntervalLattice(std::vector<std::string> labels) : labels_(std::move(labels)) {}

std::string UnitIntervalLattice::name() const {
  return labels_.size() == 1 ? "[0,1]" : "[0,1]^" + std::to_string(labels_.size());
}

bool UnitIntervalLattice::leq(const RealVector& a, const RealVector& b) const {
  for (std::size_t j = 0; j < a.v.size(); ++j)
    if (a.v[j] > b.v[j]) return false;
  return true;
}

RealVector UnitIntervalLattice::join(const RealVector& a, const RealVector& b) const {
  RealVector out = a;
  for (std::size_t j = 0; j < out.v.size(); ++j)
    if (b.v[j] > out.v[j]) out.v[j] = b.v[j];
  return out;
}

RealVector UnitIntervalLattice::meet(const RealVector& a, const RealVector& b) const {
  RealVector out = a;
  for (std::size_t j = 0; j < out.v.size(); ++j)
    if (b.v[j] < out.v[j]) out.v[j] = b.v[j];
  return out;
}

RealVector UnitIntervalLattice::bot() const { return RealVector{std::vector<Rational>(labels_.size(), 0)}; }
RealVector UnitIntervalLattice::top() const { return RealVector{std::vector<Rational>(labels_.size(), 1)}; }

std::string UnitIntervalLattice::format(const RealVector& e) const {
  if (labels_.size() == 1) return format_rational(e.v[0]);
  std::string s = "[";
  for (std::size_t j = 0; j < e.v.size(); ++j) {
    if (j) s += ", ";
    s += labels_[j] + "=" + format_rational(e.v[j]);
  }
  return s + "]";
}

RealVector UnitIntervalLattice::random_element(std::mt19937_64& rng) const {
  std::uniform_int_distribution<int> den(1, 24);
  RealVector out;
  for (std::size_t j = 0; j < labels_.size(); ++j) {
    int d = den(rng);
    std::uniform_int_distribution<int> num(0, d);
    out.v.emplace_back(num(rng), d);
  }
  return out;
}

Rational max_distance(const RealVector& a, const RealVector& b) {
  Rational best = 0;
  for (std::size_t j = 0; j < a.v.size(); ++j) {
    Rational d = a.v[j] > b.v[j] ? Rational(a.v[j] - b.v[j]) : Rational(b.v[j] - a.v[j]);
    if (d > best) best = d;
  }
  return best;
}

// ---------------------------------------------------------------------------

ChainProductPtr make_powerset(std::vector<std::string> universe) {
  std::vector<std::int64_t> heights(universe.size(), 1);
  return std::make_shared<ChainProductLattice>(std::move(heights), std::move(universe),
                                               ChainProductLattice::Style::powerset, "powerset");
}

ChainProductPtr make_relation(const std::vector<std::string>& states) {
  std::vector<std::string> labels;
  for (const auto& x : states)
    for (const auto& y : states) labels.push_back("(" + x + "," + y + ")");
  std::vector<std::int64_t> heights(labels.size(), 1);
  return std::make_shared<ChainProductLattice>(std::move(heights), std::move(labels),
                                               ChainProductLattice::Style::relation, "relation");
}

ChainProductPtr make_grid(std::int64_t n) {
  if (n < 1) throw InvalidArgument("grid resolution must be at least 1");
  return std::make_shared<ChainProductLattice>(std::vector<std::int64_t>{n}, std::vector<std::string>{"x"},
                                               ChainProductLattice::Style::grid,
                                               "grid/" + std::to_string(n));
}

ChainProductPtr make_pointwise_grid(std::vector<std::string> states, std::int64_t n) {
  if (n < 1) throw InvalidArgument("grid resolution must be at least 1");
  std::vector<std::int64_t> heights(states.size(), n);
  return std::make_shared<ChainProductLattice>(std::move(heights), std::move(states),
                                               ChainProductLattice::Style::pointwise,
                                               "pointwise-grid/" + std::to_string(n));
}

std::shared_ptr<const UnitIntervalLattice> make_unit_interval(std::vector<std::string> labels) {
  return std::make_shared<UnitIntervalLattice>(std::move(labels));
}

std::shared_ptr<const TableLattice> make_chain(std::size_t n) {
  if (n == 0) throw InvalidArgument("chain needs at least one element");
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) leq[i][j] = true;
  return std::make_shared<TableLattice>(std::move(leq), std::vector<std::string>{},
                                        "chain" + std::to_string(n));
}

namespace {

std::shared_ptr<const TableLattice> from_covers(std::size_t n, const std::vector<std::pair<int, int>>& covers,
                                                std::vector<std::string> names, std::string name) {
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i) leq[i][i] = true;
  for (auto [a, b] : covers) leq[a][b] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (leq[i][k] && leq[k][j]) leq[i][j] = true;
  return std::make_shared<TableLattice>(std::move(leq), std::move(names), std::move(name));
}

}  // namespace

std::shared_ptr<const TableLattice> make_m3() {
  return from_covers(5, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}}, {"0", "a", "b", "c", "1"}, "M3");
}

std::shared_ptr<const TableLattice> make_n5() {
  return from_covers(5, {{0, 1}, {1, 2}, {0, 3}, {2, 4}, {3, 4}}, {"0", "a", "b", "c", "1"}, "N5");
}

std::shared_ptr<const TableLattice> make_product_table(const TableLattice& a, const TableLattice& b) {
  const std::size_t na = a.size(), nb = b.size();
  std::vector<std::vector<bool>> leq(na * nb, std::vector<bool>(na * nb));
  std::vector<std::string> names;
  for (std::size_t i = 0; i < na * nb; ++i) {
    Element ai{{static_cast<std::int64_t>(i / nb)}}, bi{{static_cast<std::int64_t>(i % nb)}};
    names.push_back("<" + a.format(ai) + "," + b.format(bi) + ">");
    for (std::size_t j = 0; j < na * nb; ++j) {
      Element aj{{static_cast<std::int64_t>(j / nb)}}, bj{{static_cast<std::int64_t>(j % nb)}};
      leq[i][j] = a.leq(ai, aj) && b.leq(bi, bj);
    }
  }
  return std::make_shared<TableLattice>(std::move(leq), std::move(names), a.name() + "x" + b.name());
}

}  // namespace fixgame
