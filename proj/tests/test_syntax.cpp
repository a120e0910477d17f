#include "doctest.h"

#include "fixgame/models.hpp"

#include <random>

using namespace fixgame;

namespace {

SourcePos where(const std::function<void()>& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.pos();
  }
  FAIL("no parse error");
  return {};
}

std::string data(const std::string& name) { return read_file(std::string(FIXGAME_DATA_DIR) + "/" + name); }

}  // namespace

TEST_CASE("expression precedence") {
  CHECK(to_string(parse_expr("p | q & r")) == "p | q & r");
  CHECK(to_string(parse_expr("(p | q) & r")) == "(p | q) & r");
  CHECK(to_string(parse_expr("[] p & <> q")) == "[] p & <> q");
  CHECK(to_string(parse_expr("a \\/ b /\\ c (+) d (.) e")) == "a \\/ b /\\ c (+) d (.) e");
  CHECK(to_string(parse_expr("((a (.) b) (+) c)")) == "a (.) b (+) c");
  CHECK(to_string(parse_expr("a (.) (b (+) c)")) == "a (.) (b (+) c)");
  CHECK(to_string(parse_expr("0.375*y")) == "0.375*y");
  CHECK(to_string(parse_expr("1/3*~p")) == "1/3*~p");

  auto e = parse_expr("mu x. p | <> x & q");
  REQUIRE(e.kind == Expr::Kind::binder);
  CHECK(e.sign == Sign::mu);
  CHECK(e.text == "x");
  CHECK(e.kids[0].kind == Expr::Kind::binary);
  CHECK(e.kids[0].text == "|");

  // the binder extends to the right
  auto f = parse_expr("p | nu y. q | y");
  CHECK(f.kind == Expr::Kind::binary);
  CHECK(f.kids[1].kind == Expr::Kind::binder);
  CHECK(to_string(f.kids[1].kids[0]) == "q | y");

  auto call = parse_expr("sim(x1) & bis(id)");
  CHECK(call.kids[0].kind == Expr::Kind::call);
  CHECK(call.kids[0].text == "sim");
}

TEST_CASE("printing round-trips") {
  std::mt19937_64 rng(5);
  const std::vector<std::string> bin{"|", "&", "\\/", "/\\", "(+)", "(.)"};
  std::function<std::string(int)> gen = [&](int d) -> std::string {
    switch (d == 0 ? rng() % 3 : rng() % 8) {
      case 0:
        return "p";
      case 1:
        return "x";
      case 2:
        return "1/2";
      case 3:
        return "<> " + gen(d - 1);
      case 4:
        return "1/4*" + gen(d - 1);
      case 5:
        return "nu x. " + gen(d - 1);
      default:
        return "(" + gen(d - 1) + " " + bin[rng() % bin.size()] + " " + gen(d - 1) + ")";
    }
  };
  for (int n = 0; n < 300; ++n) {
    auto s = gen(4);
    auto once = to_string(parse_expr(s));
    CHECK(to_string(parse_expr(once)) == once);
  }
}

TEST_CASE("expression errors carry positions") {
  auto p = where([] { parse_expr("p &\n  & q"); });
  CHECK(p.line == 2);
  CHECK(p.column == 3);
  p = where([] { parse_expr("mu . x"); });
  CHECK(p.column == 1);
  p = where([] { parse_expr("(p | q"); });
  CHECK(p.column == 7);
  p = where([] { parse_expr("p $ q"); });
  CHECK(p.column == 3);
  p = where([] { parse_expr("p q"); });
  CHECK(p.column == 3);
}

TEST_CASE("equation files") {
  auto eqs = parse_system_dsl(data("fig3a.sys"));
  REQUIRE(eqs.size() == 2);
  CHECK(eqs[0].name == "x1");
  CHECK(eqs[0].sign == Sign::nu);
  CHECK(to_string(eqs[1].body) == "x1 | <> x2");
  auto p = where([] { parse_system_dsl("x =mu p\ny = p\n"); });
  CHECK(p.line == 2);
  CHECK(p.column == 3);
  p = where([] { parse_system_dsl("x =mu p\nx =nu q & \n"); });
  CHECK(p.line == 2);
  p = where([] { parse_system_dsl("x =mu p &\n"); });
  CHECK(p.line == 1);
  CHECK(p.column == 10);
  CHECK_THROWS_AS(parse_system_dsl("# nothing\n"), ParseError);
}

TEST_CASE("transition systems") {
  auto T = parse_ts(data("fig3a.ts"));
  CHECK(T.states == std::vector<std::string>{"a", "b", "c", "d", "e"});
  CHECK(T.succ[0] == std::vector<std::size_t>{0, 1, 2});
  CHECK(T.succ[1] == std::vector<std::size_t>{3, 4});
  CHECK(T.atoms.at("p") == std::vector<bool>{false, true, false, true, true});
  CHECK(T.index("d") == 3);
  CHECK_THROWS_AS(T.index("z"), InvalidArgument);

  auto p = where([] { parse_ts("states: a b\nedges: a->b b->c\n"); });
  CHECK(p.line == 2);
  CHECK(p.column == 16);
  p = where([] { parse_ts("edges: a->b\n"); });
  CHECK(p.line == 1);
  p = where([] { parse_ts("states: a a\n"); });
  CHECK(p.column == 11);
  p = where([] { parse_ts("states: a\nedges: a-b\n"); });
  CHECK(p.line == 2);
  p = where([] { parse_ts("states: a\nlabels: a\n"); });
  CHECK(p.line == 2);
  CHECK(parse_ts("states:\n").size() == 0);
}

TEST_CASE("automata") {
  auto N = parse_nfa("states: q0 q1 q2\nalphabet: a b\nfinal: q2\ntrans: q0 -a-> q0 q1\ntrans: q1 -b-> q2\n");
  CHECK(N.size() == 3);
  CHECK(N.delta[0][0] == 0b011u);
  CHECK(N.delta[1][1] == 0b100u);
  CHECK(N.step(0b011u, 1) == 0b100u);
  CHECK(N.finals == 0b100u);
  CHECK(N.format_set(0b101u) == "{q0,q2}");
  auto p = where([] { parse_nfa("states: q\nalphabet: a\ntrans: q -b-> q\n"); });
  CHECK(p.line == 3);
  CHECK(p.column == 11);
  p = where([] { parse_nfa("states: q\nalphabet: a\ntrans: q a q\n"); });
  CHECK(p.column == 10);
  CHECK_THROWS_AS(parse_nfa("states: q\n"), ParseError);
}

TEST_CASE("probabilistic systems") {
  auto N = parse_pndt(data("fig4a.pndt"));
  CHECK(N.states == std::vector<std::string>{"a", "b", "c"});
  REQUIRE(N.dists[0].size() == 2);
  CHECK(N.dists[0][1] == std::vector<Rational>{Rational(1, 3), Rational(1, 6), Rational(1, 2)});
  CHECK(N.dists[1].size() == 1);
  CHECK(N.props.at("p") == std::vector<Rational>{0, 1, 0});

  auto p = where([] { parse_pndt("state a: (1/2 a)\n"); });
  CHECK(p.column == 10);
  p = where([] { parse_pndt("state a:\n"); });
  CHECK(p.line == 1);
  p = where([] { parse_pndt("state a: (1 b)\n"); });
  CHECK(p.column == 13);
  p = where([] { parse_pndt("state a: (1 a)\nprop p: a=2\n"); });
  CHECK(p.line == 2);
  CHECK(p.column == 11);
  p = where([] { parse_pndt("state a: (1 a) (x a)\n"); });
  CHECK(p.column == 17);
}

TEST_CASE("relations between state lists") {
  auto R = parse_relation(data("fig3a_quotient.rel"), {"a", "b", "c", "d", "e"}, {"A", "B", "C"});
  CHECK(R[3][1]);
  CHECK_FALSE(R[3][0]);
  auto p = where([] { parse_relation("pairs: a->Z\n", {"a"}, {"A"}); });
  CHECK(p.column == 11);
}

TEST_CASE("missing files") { CHECK_THROWS_AS(read_file("/nonexistent/file.ts"), InputError); }
