#include "doctest.h"

#include "fixgame/localsolver.hpp"
#include "fixtures.hpp"
#include "support.hpp"

using namespace fixgame;
using namespace fixgame::testing;

namespace {

Counter C(std::vector<std::uint32_t> k) { return Counter{std::move(k)}; }

Counter random_counter(std::mt19937_64& rng, std::size_t m) {
  Counter c = zero_counter(m);
  for (auto& x : c.k) x = static_cast<std::uint32_t>(rng() % 4);
  return c;
}

}  // namespace

TEST_CASE("next counter") {
  CHECK(next_counter(C({0, 0}), 2) == C({0, 1}));
  CHECK(next_counter(C({1, 2}), 1) == C({2, 2}));
  CHECK(next_counter(C({3, 1, 4}), 0) == C({3, 1, 4}));
  CHECK(next_counter(C({3, 1, 4}), 3) == C({0, 0, 5}));
  CHECK_THROWS_AS(next_counter(C({0}), 2), InvalidArgument);
}

TEST_CASE("counter orders") {
  std::vector<Sign> nm{Sign::nu, Sign::mu};
  CHECK(counter_lt(Player::exists, C({1, 2}), C({2, 2}), nm));
  CHECK(counter_lt(Player::forall, C({2, 2}), C({1, 2}), nm));
  CHECK_FALSE(counter_lt(Player::exists, C({1, 2}), C({1, 2}), nm));
  // highest differing index is a μ-index: fewer visits is better for ∃
  CHECK(counter_lt(Player::exists, C({0, 3}), C({5, 1}), nm));
  CHECK_THROWS_AS(counter_lt(Player::exists, C({1}), C({1, 2}), nm), InvalidArgument);
}

TEST_CASE("counter laws on random counters") {
  std::mt19937_64 rng(31);
  for (int n = 0; n < 2000; ++n) {
    std::size_t m = 1 + rng() % 4;
    std::vector<Sign> signs;
    for (std::size_t j = 0; j < m; ++j) signs.push_back(rng() & 1u ? Sign::nu : Sign::mu);
    auto a = random_counter(rng, m), b = random_counter(rng, m);
    std::size_t i = rng() % (m + 1);
    for (Player p : {Player::exists, Player::forall}) {
      CHECK_FALSE(counter_lt(p, a, a, signs));
      CHECK(counter_lt(p, a, b, signs) == counter_lt(opponent(p), b, a, signs));
      if (a != b) CHECK(counter_lt(p, a, b, signs) != counter_lt(p, b, a, signs));
      if (counter_le(p, a, b, signs)) CHECK(counter_le(p, next_counter(a, i), next_counter(b, i), signs));
    }
  }
}

TEST_CASE("local check on the five-state system") {
  Fig3a t;
  auto sys = t.system();
  auto r = check(sys, 0, 1);
  CHECK(r.winner == Player::exists);
  auto assumed = [&](const std::string& pos, Counter k) {
    return std::any_of(r.assumption_log.begin(), r.assumption_log.end(), [&](const AssumptionEvent& e) {
      return e.player == Player::exists && format_position(*t.L, e.pos) == pos && e.k == k;
    });
  };
  CHECK(assumed("(d,1)", C({1, 2})));
  CHECK(assumed("(e,1)", C({1, 2})));
  CHECK(check(sys, 2, 0).winner == Player::forall);
  CHECK(check(sys, 1, 0).winner == Player::exists);

  auto sol = solve(sys);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t b = 0; b < 5; ++b)
      CHECK((check(sys, b, i).winner == Player::exists) == (sol[i].v[b] == 1));
}

TEST_CASE("local check agrees with the global solution") {
  std::mt19937_64 rng(32);
  CheckOptions opts;
  opts.validate = true;
  std::size_t positions = 0;
  for (int n = 0; n < 250; ++n) {
    auto sys = random_system(rng);
    auto sol = solve(sys);
    const auto& L = sys.lattice();
    for (std::size_t i = 0; i < sys.size(); ++i)
      for (std::size_t b = 0; b < L.basis().size(); ++b) {
        auto r = check(sys, b, i, opts);
        CHECK((r.winner == Player::exists) == L.leq(L.basis()[b], sol[i]));
        CHECK(r.stats.invariant_violations == 0);
        CHECK(r.stats.forget_predicate_violations == 0);
        ++positions;
      }
  }
  CHECK(positions > 500);
}

TEST_CASE("heuristic move order gives the same verdicts") {
  std::mt19937_64 rng(33);
  CheckOptions h;
  h.heuristic = true;
  for (int n = 0; n < 100; ++n) {
    auto sys = random_system(rng);
    for (std::size_t i = 0; i < sys.size(); ++i)
      for (std::size_t b = 0; b < sys.lattice().basis().size(); ++b)
        CHECK(check(sys, b, i, h).winner == check(sys, b, i).winner);
  }
}

TEST_CASE("runs are deterministic") {
  Fig3a t;
  CheckOptions opts;
  opts.trace = true;
  auto a = check(t.system(), 0, 1, opts);
  auto b = check(t.system(), 0, 1, opts);
  CHECK(a.trace.dump() == b.trace.dump());
  CHECK(stats_json(a.stats) == stats_json(b.stats));
}

TEST_CASE("forget") {
  std::vector<Sign> signs{Sign::nu};
  auto p0 = Position::exists_at(0, 0), p1 = Position::exists_at(1, 0);
  Assumption failed{p0, C({1}), 5};
  DecisionSet before{{p1, C({1}), {}, 2}, {p1, C({2}), {}, 4}};
  CHECK(forget(before, {failed}, failed, Player::exists, signs).size() == 2);
  DecisionSet mixed = before;
  mixed.push_back({p1, C({3}), {}, 6});
  mixed.push_back({p1, C({4}), {}, 9});
  auto kept = forget(mixed, {failed}, failed, Player::exists, signs);
  CHECK(kept.size() == 2);
  CHECK(sound_forget(kept, {failed}, failed, Player::exists, signs));

  // a kept decision justified only by the failed assumption is not sound
  DecisionSet leaning{{p1, C({0}), {p0}, 3}};
  CHECK_FALSE(sound_forget(leaning, {failed}, failed, Player::exists, signs));
  ForgetReport rep;
  CHECK(forget(leaning, {failed}, failed, Player::exists, signs, &rep).empty());
  CHECK(rep.by_justification == 1);
}
