#include <doctest.h>

#include <random>

#include "fpv/errors.hpp"
#include "fpv/expr.hpp"
#include "fpv/presentation.hpp"

using namespace fpv;

namespace {

const std::set<std::string> xt{"x", "t"};
const std::map<std::string, int> xt_ids{{"x", 0}, {"t", 1}};
const std::map<std::string, WordExpr> no_defs;

Word xw(std::initializer_list<std::pair<int, int>> ls) {
  Word out;
  for (auto [g, s] : ls)
    out.letters.push_back(Letter{static_cast<std::uint16_t>(g),
                                 static_cast<std::int8_t>(s)});
  return out;
}

}  // namespace

TEST_CASE("commutator parses and expands to a^-1 b^-1 a b") {
  WordExpr e = parse_expr("[x,t]", xt);
  CHECK(e.kind == WordExpr::Kind::Commutator);
  CHECK(expand(e, xt_ids, no_defs) ==
        xw({{0, -1}, {1, -1}, {0, 1}, {1, 1}}));
}

TEST_CASE("power of a product") {
  WordExpr e = parse_expr("(x t)^6", xt);
  CHECK(e.kind == WordExpr::Kind::Power);
  CHECK(e.exponent == 6);
  CHECK(expand(e, xt_ids, no_defs).size() == 12);
}

TEST_CASE("conjugation and negative powers mix") {
  std::set<std::string> bx{"b", "x"};
  std::map<std::string, int> ids{{"b", 0}, {"x", 1}};
  WordExpr e = parse_expr("b^x b^-4", bx);
  CHECK(e.kind == WordExpr::Kind::Product);
  CHECK(e.args.size() == 2);
  CHECK(e.args[0].kind == WordExpr::Kind::Conjugate);
  CHECK(e.args[1].kind == WordExpr::Kind::Power);
  CHECK(e.args[1].exponent == -4);
  // x^-1 b x b^-4
  Word expect = xw({{1, -1}, {0, 1}, {1, 1}, {0, -1}, {0, -1}, {0, -1}, {0, -1}});
  CHECK(expand(e, ids, no_defs) == expect);
}

TEST_CASE("dangling operator is a syntax error") {
  CHECK_THROWS_AS(parse_expr("q^", {"q"}), SyntaxError);
  CHECK_THROWS_AS(parse_expr("", xt), SyntaxError);
  CHECK_THROWS_AS(parse_expr("(x t", xt), SyntaxError);
  CHECK_THROWS_AS(parse_expr("[x t]", xt), SyntaxError);
}

TEST_CASE("unknown identifiers are rejected") {
  CHECK_THROWS_AS(parse_expr("x y", xt), UnknownSymbol);
}

TEST_CASE("'*' is accepted as an explicit product") {
  CHECK(expand(parse_expr("x * t", xt), xt_ids, no_defs) ==
        expand(parse_expr("x t", xt), xt_ids, no_defs));
}

TEST_CASE("chained '^' is left-associative") {
  // (x^t)^2
  WordExpr e = parse_expr("x^t^2", xt);
  CHECK(e.kind == WordExpr::Kind::Power);
  CHECK(e.args[0].kind == WordExpr::Kind::Conjugate);
}

TEST_CASE("named definitions expand and cycles are caught") {
  std::set<std::string> syms{"x", "z", "b"};
  std::map<std::string, int> ids{{"x", 0}, {"z", 1}};
  std::map<std::string, WordExpr> defs;
  defs.emplace("b", parse_expr("z^x z", syms));
  // b = x^-1 z x z
  CHECK(expand(parse_expr("b", syms), ids, defs) ==
        xw({{0, -1}, {1, 1}, {0, 1}, {1, 1}}));

  std::map<std::string, WordExpr> cyclic;
  cyclic.emplace("b", parse_expr("c", {"c"}));
  cyclic.emplace("c", parse_expr("b", {"b"}));
  CHECK_THROWS_AS(expand(parse_expr("b", {"b"}), {}, cyclic), CyclicDefinition);
}

TEST_CASE("zeroth power and self-commutator vanish") {
  CHECK(expand(parse_expr("x^0", xt), xt_ids, no_defs) == Word{});
  CHECK(expand(parse_expr("[x,x]", xt), xt_ids, no_defs) == Word{});
}

TEST_CASE("conjugate expands as b^-1 a b") {
  CHECK(expand(parse_expr("x^t", xt), xt_ids, no_defs) ==
        xw({{1, -1}, {0, 1}, {1, 1}}));
  // a^(b c) with compound conjugator
  CHECK(expand(parse_expr("x^(t t)", xt), xt_ids, no_defs) ==
        xw({{1, -1}, {1, -1}, {0, 1}, {1, 1}, {1, 1}}));
}

TEST_CASE("expansion length cap") {
  CHECK_THROWS_AS(expand(parse_expr("(x t)^40000", xt), xt_ids, no_defs),
                  WordTooLong);
  CHECK_THROWS_AS(parse_expr("x^99999999999", xt), SyntaxError);
}

TEST_CASE("symbolic exponents require a parameter set") {
  WordExpr e = parse_expr("(x t)^k", xt, {"k"});
  CHECK(e.kind == WordExpr::Kind::Power);
  CHECK(e.exponent_param == "k");
  std::set<std::string> used;
  collect_params(e, used);
  CHECK(used == std::set<std::string>{"k"});
  // Without the parameter set, ^k is a conjugation and k is unknown.
  CHECK_THROWS_AS(parse_expr("(x t)^k", xt), UnknownSymbol);
}

TEST_CASE("render/parse round trip on random words") {
  std::mt19937 rng(4242);
  std::vector<std::string> names{"x", "t", "u1"};
  std::set<std::string> syms{"x", "t", "u1"};
  std::map<std::string, int> ids{{"x", 0}, {"t", 1}, {"u1", 2}};
  for (int i = 0; i < 300; ++i) {
    Word v;
    int len = static_cast<int>(rng() % 40);
    for (int k = 0; k < len; ++k)
      v.letters.push_back(Letter{static_cast<std::uint16_t>(rng() % 3),
                                 static_cast<std::int8_t>((rng() & 1) ? 1 : -1)});
    v = free_reduce(v);
    if (v.empty()) continue;
    CHECK(expand(parse_expr(render(v, names), syms), ids, no_defs) == v);
  }
}

TEST_CASE("expr printer round-trips through the parser") {
  for (const char* text : {"[x,t]", "(x t)^6", "x^t^2", "x^-3 (t x)^2 [x, t]^2"}) {
    WordExpr e = parse_expr(text, xt);
    CHECK(expand(parse_expr(to_string(e), xt), xt_ids, no_defs) ==
          expand(e, xt_ids, no_defs));
  }
}
