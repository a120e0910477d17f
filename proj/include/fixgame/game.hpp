#pragma once

#include "fixgame/eqsys.hpp"

#include "json.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace fixgame {

enum class Player { exists, forall };

inline Player opponent(Player p) { return p == Player::exists ? Player::forall : Player::exists; }
inline const char* to_string(Player p) { return p == Player::exists ? "E" : "A"; }

// (b, i) for the existential player, an m-tuple of basis subsets for the
// universal one. Indices are 0-based; priorities are 1-based.
struct Position {
  enum class Kind : std::uint8_t { exists, forall };

  Kind kind = Kind::exists;
  std::size_t basis = 0;
  std::size_t index = 0;
  std::vector<BasisSubset> tuple;

  static Position exists_at(std::size_t b, std::size_t i) { return Position{Kind::exists, b, i, {}}; }
  static Position forall_at(std::vector<BasisSubset> xs) { return Position{Kind::forall, 0, 0, std::move(xs)}; }

  bool is_exists() const { return kind == Kind::exists; }
  Player owner() const { return is_exists() ? Player::exists : Player::forall; }
  std::size_t priority() const { return is_exists() ? index + 1 : 0; }

  friend bool operator==(const Position&, const Position&) = default;
  friend auto operator<=>(const Position&, const Position&) = default;
};

struct PositionHash {
  std::size_t operator()(const Position& p) const noexcept;
};

class MoveBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SelectionOptions {
  // Maximum number of f_i evaluations spent on one position.
  std::size_t evaluation_budget = 200000;
  // Maximum number of candidate transversals kept during enumeration.
  std::size_t transversal_budget = 200000;
};

struct SelectionStats {
  std::size_t evaluations = 0;
  std::size_t minimal_sets = 0;
};

// Every X⃗ in (P(B))^m with b ⊑ f_i(⨆X⃗). Exponential: refuses when m·|B|
// exceeds max_tuple_basis.
std::vector<Position> exists_moves(const EquationSystem& sys, std::size_t b, std::size_t i,
                                   std::size_t max_tuple_basis = 16);

std::vector<Position> forall_moves(const Position& pos);

// Hoare-minimal moves: pointwise-minimal l⃗ with b ⊑ f_i(l⃗), each mapped
// through minimal_join_cover, ordered by size then lexicographically.
std::vector<Position> selection(const EquationSystem& sys, std::size_t b, std::size_t i,
                                const SelectionOptions& opts = {}, SelectionStats* stats = nullptr);

// Same enumeration for an arbitrary monotone predicate on m-tuples.
std::vector<Position> minimal_moves(const Lattice& L, std::size_t m,
                                    const std::function<bool(std::span<const Element>)>& holds,
                                    const SelectionOptions& opts = {}, SelectionStats* stats = nullptr);

// Move order used by selection.
bool move_less(const Position& a, const Position& b);

// Lasso-shaped or finite play. A finite play has an empty cycle.
struct Play {
  std::vector<Position> prefix;
  std::vector<Position> cycle;
};

class MalformedPlay : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Player winner_of_play(const Play& play, const std::vector<Sign>& signs);

std::string format_position(const Lattice& L, const Position& p);
nlohmann::json position_json(const Lattice& L, const Position& p);

}  // namespace fixgame
