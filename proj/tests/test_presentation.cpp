#include <doctest.h>

#include "fpv/errors.hpp"
#include "fpv/presentation.hpp"

using namespace fpv;

namespace {

const char* kF42 = R"(
# order-42 Frobenius group
group F42
gens x z
def b = z^x z
rel x^3
rel z^2
rel (x z)^6
rel b^7
rel b^x b^-4
)";

const char* kKl = R"(
group K
gens a x
param l in {5, 6, 7}
rel a^2
rel x^3
rel (a x)^l
rel [a,x]^6
)";

}  // namespace

TEST_CASE("presentation text format parses") {
  Presentation p = parse_presentation_text(kF42);
  CHECK(p.name == "F42");
  CHECK(p.generators == std::vector<std::string>{"x", "z"});
  CHECK(p.defs.size() == 1);
  CHECK(p.relators.size() == 5);
  // Relators are sorted by length: z^2 first.
  CHECK(p.relators.front().size() == 2);
  CHECK(p.gen_index("z") == 1);
  CHECK_THROWS_AS(p.gen_index("b"), UnknownSymbol);
}

TEST_CASE("relator preprocessing reduces, dedups, sorts") {
  Presentation p = parse_presentation_text(R"(
group T
gens a b
rel a a^-1 b
rel b
rel b^-1
rel a b a^-1 a b b^-1 a^-1
rel a^2
)");
  // "a a^-1 b" reduces to b; "b^-1" matches it up to inversion; the long
  // relator freely reduces to a b a^-1 and cyclically to b. Unique set:
  // {b, a^2}, sorted by length.
  CHECK(p.relators.size() == 2);
  CHECK(p.relators[0].size() == 1);
  CHECK(p.relators[1].size() == 2);
}

TEST_CASE("family instantiation substitutes exponents") {
  FamilySpec f = parse_family_text(kKl);
  Presentation k5 = instantiate(f, {{"l", 5}});
  CHECK(k5.name == "K(5)");
  CHECK(k5.relators.size() == 4);
  CHECK_THROWS_AS(instantiate(f, {{"l", 4}}), ParameterOutOfRange);
  CHECK_THROWS_AS(instantiate(f, {}), MissingParameter);
  CHECK_THROWS_AS(instantiate(f, {{"l", 5}, {"zz", 1}}), ParameterOutOfRange);
}

TEST_CASE("expand_family walks ranges lexicographically") {
  FamilySpec f = parse_family_text(R"(
group W
gens a
param p in {5, 7}
param i in {5, 6, 7}
rel a^p
rel (a a)^i
)");
  auto all = expand_family(f);
  REQUIRE(all.size() == 6);
  CHECK(all[0].first == std::vector<long long>{5, 5});
  CHECK(all[1].first == std::vector<long long>{5, 6});
  CHECK(all[5].first == std::vector<long long>{7, 7});
  CHECK(all[3].second.name == "W(7,5)");

  FamilySpec empty_params = parse_family_text("group E\ngens a\nrel a^3\n");
  CHECK(expand_family(empty_params).size() == 1);

  CHECK_THROWS_AS(expand_family(f, 3), FamilyTooLarge);
}

TEST_CASE("instantiate matches expand_family pointwise") {
  FamilySpec f = parse_family_text(kKl);
  auto all = expand_family(f);
  for (const auto& [tuple, inst] : all) {
    Presentation direct = instantiate(f, {{"l", tuple[0]}});
    CHECK(direct == inst);
  }
}

TEST_CASE("quotient_by appends relators and keeps generators") {
  Presentation p = parse_presentation_text(kF42);
  CHECK(quotient_by(p, {}) == p);
  Word z = parse_word(p, "z");
  Presentation q = quotient_by(p, {z});
  CHECK(q.generators == p.generators);
  CHECK(q.relators.size() == p.relators.size() + 1);
}

TEST_CASE("parse_word resolves definitions") {
  Presentation p = parse_presentation_text(kF42);
  Word b = parse_word(p, "b");
  CHECK(b.size() == 4);  // x^-1 z x z
  CHECK_THROWS_AS(parse_word(p, "nope"), UnknownSymbol);
}

TEST_CASE("format errors carry a line hint") {
  CHECK_THROWS_AS(parse_presentation_text("gens a\nrel a^2\n"), SyntaxError);
  CHECK_THROWS_AS(parse_presentation_text("group X\n"), SyntaxError);
  CHECK_THROWS_AS(parse_presentation_text("group X\nrel a\n"), UnknownSymbol);
  CHECK_THROWS_AS(parse_presentation_text("group X\ngens a\nbogus a\n"),
                  SyntaxError);
  CHECK_THROWS_AS(parse_presentation_text("group X\ngens a a\n"), SyntaxError);
  CHECK_THROWS_AS(
      parse_presentation_text("group X\ngens a\nparam p in {}\nrel a^p\n"),
      SyntaxError);
  // Parameterized file is not a plain presentation.
  CHECK_THROWS_AS(parse_presentation_text(kKl), SyntaxError);
}

TEST_CASE("definitions may not use parameters") {
  CHECK_THROWS_AS(parse_family_text(R"(
group X
gens a
param p in {2}
def b = a^p
rel b
)"),
                  SyntaxError);
}

TEST_CASE("to_text round trips") {
  Presentation p = parse_presentation_text(kF42);
  Presentation q = parse_presentation_text(to_text(p));
  CHECK(q.generators == p.generators);
  CHECK(q.relators == p.relators);
}
