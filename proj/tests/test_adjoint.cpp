#include "doctest.h"

#include "fixgame/adjoint.hpp"
#include "support.hpp"

using namespace fixgame;
using namespace fixgame::testing;

namespace {

Element g10(std::int64_t k) { return Element{{k}}; }

std::vector<Element> everything(const Lattice& L) { return *L.elements(4096); }

bool join_preserving(const Lattice& L, const UnaryMap& h) {
  auto els = everything(L);
  if (h(L.bot()) != L.bot()) return false;
  for (const auto& x : els)
    for (const auto& y : els)
      if (h(L.join(x, y)) != L.join(h(x), h(y))) return false;
  return true;
}

// h(x) = ⨆{img(j) | j basis, j ⊑ x}. Join-preserving on distributive
// lattices; kept only after the exhaustive check.
std::optional<UnaryMap> random_join_map(LatticePtr L, std::mt19937_64& rng) {
  const auto& B = L->basis();
  std::vector<Element> img;
  for (std::size_t k = 0; k < B.size(); ++k) img.push_back(rng() % 3 == 0 ? L->bot() : L->random_element(rng));
  UnaryMap h = [L, img](const Element& x) {
    Element acc = L->bot();
    const auto& B = L->basis();
    for (std::size_t k = 0; k < B.size(); ++k)
      if (L->leq(B[k], x)) acc = L->join(acc, img[k]);
    return acc;
  };
  if (!join_preserving(*L, h)) return std::nullopt;
  return h;
}

// Upper adjoint of h by enumeration.
UnaryMap upper_adjoint(LatticePtr L, const UnaryMap& h) {
  auto els = everything(*L);
  return [L, h, els](const Element& x) {
    Element acc = L->bot();
    for (const auto& l : els)
      if (L->leq(h(l), x)) acc = L->join(acc, l);
    return acc;
  };
}

struct RandomInstance {
  LatticePtr L;
  UnaryMap lower, upper;
  Element c;
};

RandomInstance random_instance(std::mt19937_64& rng) {
  while (true) {
    auto L = random_small_lattice(rng);
    auto h = random_join_map(L, rng);
    if (!h) continue;
    return {L, *h, upper_adjoint(L, *h), rng() % 4 == 0 ? L->top() : L->random_element(rng)};
  }
}

}  // namespace

TEST_CASE("left adjoint of identity and of a shifted grid") {
  auto L = make_grid(10);
  auto id = derive_left_adjoint(L, [](const Element& x) { return x; });
  for (const auto& e : everything(*L)) CHECK(id(e) == e);

  UnaryMap shift = [](const Element& x) { return g10(std::min<std::int64_t>(x.v[0] + 2, 10)); };
  auto lower = derive_left_adjoint(L, shift);
  for (std::int64_t k = 0; k <= 10; ++k) {
    std::int64_t want = 10;
    for (std::int64_t l = 0; l <= 10; ++l)
      if (k <= std::min<std::int64_t>(l + 2, 10)) want = std::min(want, l);
    CHECK(lower(g10(k)) == g10(want));
    CHECK(lower(g10(k)) == g10(std::max<std::int64_t>(k - 2, 0)));
  }
}

TEST_CASE("meet preservation is required") {
  auto L = make_powerset({"p", "q"});
  // constant p is monotone but misses the empty meet
  UnaryMap constant = [L](const Element&) { return L->from_members(std::vector<std::size_t>{0}); };
  CHECK_THROWS_AS(derive_left_adjoint(L, constant), NotMeetPreserving);

  auto M3 = make_m3();
  auto els = everything(*M3);
  // sends every atom to top, keeps bottom: atoms meet to bottom, images do not
  UnaryMap lift = [M3](const Element& x) { return x == M3->bot() ? x : M3->top(); };
  try {
    derive_left_adjoint(M3, lift);
    FAIL("expected a refusal");
  } catch (const NotMeetPreserving& e) {
    CHECK(e.witness().size() == 2);
  }
  CHECK_THROWS_AS(from_function(M3, lift), NotMeetPreserving);
}

TEST_CASE("splitting f as f* meet c") {
  auto L = make_grid(10);
  UnaryMap f = [](const Element& x) { return g10(std::min<std::int64_t>(x.v[0], 5)); };
  auto eq = from_function(L, f);
  CHECK(eq.c == g10(5));
  for (const auto& x : everything(*L)) CHECK(eq.f(x) == f(x));
  CHECK(verify_adjunction(eq).holds);
  auto nu = brute_fixpoint(*L, f, Sign::nu);
  CHECK(nu == g10(5));
}

TEST_CASE("case 1 on the grid") {
  auto L = make_grid(10);
  UnaryMap f = [](const Element& x) { return g10(std::min<std::int64_t>(x.v[0], 5)); };
  auto eq = from_function(L, f);
  auto r3 = case1_check(eq, g10(3));
  CHECK(r3.winner == Player::exists);
  CHECK(r3.chain == std::vector<Element>{g10(3), g10(3)});
  auto r6 = case1_check(eq, g10(6));
  CHECK(r6.winner == Player::forall);
  CHECK(r6.chain.size() == 1);

  auto c2 = case2_check(eq, g10(3));
  CHECK(c2.winner == Player::exists);
  CHECK(case2_check(eq, g10(6)).winner == Player::forall);

  // f = shift-down ⊓ c: the chain hits bottom
  UnaryMap down = [](const Element& x) {
    return x.v[0] == 10 ? g10(10) : g10(std::min<std::int64_t>(x.v[0] + 2, 10));
  };
  auto eq2 = make_meet_preserving(L, down, g10(7));
  auto r = case1_check(eq2, g10(2));
  CHECK(r.winner == Player::exists);
  CHECK(r.chain == std::vector<Element>{g10(2), L->bot()});
  CHECK(case1_check(eq2, g10(7)).chain.size() == 2);
  CHECK(case1_check(eq2, g10(8)).winner == Player::forall);
}

TEST_CASE("case 1 needs every element in the basis") {
  auto L = make_powerset({"p", "q"});
  auto eq = from_function(L, [](const Element& x) { return x; });
  auto p = L->from_members(std::vector<std::size_t>{0});
  CHECK_THROWS_AS(case1_check(eq, p), InvalidArgument);

  auto full = with_full_basis(L);
  CHECK(full->basis().size() == 3);
  auto eqf = from_function(full, [](const Element& x) { return x; });
  CHECK(case1_check(eqf, L->top()).winner == Player::exists);
  CHECK_THROWS_AS(case2_check(eq, L->bot()), InvalidArgument);
}

TEST_CASE("case 1, case 2 and Kleene agree on random meet-preserving equations") {
  std::mt19937_64 rng(0xad701);
  std::size_t checked = 0, losses = 0;
  for (int round = 0; round < 150; ++round) {
    auto inst = random_instance(rng);
    auto eq = make_meet_preserving(inst.L, inst.upper, inst.c);
    REQUIRE(verify_adjunction(eq).holds);
    for (const auto& x : everything(*inst.L)) {
      CHECK(eq.f_lower(x) == inst.lower(x));
      CHECK(inst.L->leq(x, eq.f_star(eq.f_lower(x))));
      CHECK(inst.L->leq(eq.f_lower(eq.f_star(x)), x));
    }
    auto full = with_full_basis(inst.L);
    MeetPreservingEquation eq1{full, eq.f_star, eq.c, eq.f_lower, "x"};
    Element nu = brute_fixpoint(*inst.L, [&](const Element& x) { return eq.f(x); }, Sign::nu);
    CHECK(kleene<Element>(*inst.L, [&](const Element& x) { return eq.f(x); }, Sign::nu) == nu);
    for (const auto& b : full->basis()) {
      bool want = inst.L->leq(b, nu);
      CHECK((case1_check(eq1, b).winner == Player::exists) == want);
      CHECK((case2_check(eq1, b).winner == Player::exists) == want);
      ++checked;
      losses += !want;
    }
    for (const auto& b : inst.L->basis())
      CHECK((case2_check(eq, b).winner == Player::exists) == inst.L->leq(b, nu));
  }
  CHECK(checked > 500);
  CHECK(losses > 50);
}

TEST_CASE("up-to variants keep the verdict and explore less") {
  std::mt19937_64 rng(0xad702);
  std::size_t strict = 0;
  for (int round = 0; round < 150; ++round) {
    auto inst = random_instance(rng);
    auto L = inst.L;
    auto eq = make_meet_preserving(L, inst.upper, inst.c);
    Element nu = brute_fixpoint(*L, [&](const Element& x) { return eq.f(x); }, Sign::nu);
    std::vector<UpToFunction> us{
        u_identity(L),
        UpToFunction(L, [eq, L](const Element& x) { return L->join(x, eq.f(x)); }, "x|f(x)", {.extensive = true}),
        UpToFunction(L, [nu, L](const Element& x) { return L->join(x, nu); }, "x|nu", {.extensive = true})};
    auto full = with_full_basis(L);
    MeetPreservingEquation eq1{full, eq.f_star, eq.c, eq.f_lower, "x"};
    for (const auto& u : us) {
      for (const auto& b : L->basis()) {
        auto plain = case2_check(eq, b);
        auto up = case2_check(eq, b, &u);
        CHECK(up.winner == plain.winner);
        CHECK(up.explored.size() <= plain.explored.size());
        strict += up.explored.size() < plain.explored.size();
      }
      for (const auto& b : full->basis()) {
        auto plain = case1_check(eq1, b);
        auto up = case1_check(eq1, b, &u);
        CHECK(up.winner == plain.winner);
        CHECK(up.chain.size() <= plain.chain.size());
      }
    }
  }
  CHECK(strict > 0);
}

TEST_CASE("incompatible up-to functions are refused") {
  auto L = make_grid(10);
  auto eq = from_function(L, [](const Element& x) { return g10(std::min<std::int64_t>(x.v[0], 5)); });
  UpToFunction top(L, [L](const Element&) { return L->top(); }, "top");
  CHECK_THROWS_AS(case2_check(eq, g10(3), &top), Incompatible);
  CHECK_THROWS_AS(case1_check(eq, g10(3), &top), Incompatible);
}

TEST_CASE("generic exploration on lazily generated positions") {
  // positions are integers, successor n ↦ n/2 and 3n, c = below 50
  auto out = explore_case2<int>(
      7, [](int n) { return n < 50; }, [](int n) { return std::vector<int>{n / 2, 3 * n}; },
      [](int n, const std::vector<int>& W) { return n == 0 || std::find(W.begin(), W.end(), n) != W.end(); });
  CHECK(out.winner == Player::forall);
  REQUIRE(out.losing.has_value());
  CHECK(*out.losing >= 50);
  CHECK(out.explored.front() == 7);
}
