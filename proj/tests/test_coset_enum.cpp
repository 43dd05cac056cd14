#include <doctest.h>

#include "fpv/coset_enum.hpp"
#include "fpv/errors.hpp"
#include "fpv/presentation.hpp"

using namespace fpv;

namespace {

Presentation pres(const std::string& text) {
  return parse_presentation_text(text);
}

std::int64_t order_of(const Presentation& p, Strategy s = Strategy::HLT) {
  EnumOutcome out = enumerate(p, SubgroupSpec{}, s);
  REQUIRE(out.complete);
  REQUIRE(verify_table(*out.table, p, SubgroupSpec{}));
  return index(*out.table);
}

const char* kF42 = R"(
group F42
gens x z
def b = z^x z
rel x^3
rel z^2
rel (x z)^6
rel b^7
rel b^x b^-4
)";

const char* kS3 = R"(
group S3
gens a b
rel a^2
rel b^3
rel (a b)^2
)";

}  // namespace

TEST_CASE("cyclic group of order 2") {
  Presentation p = pres("group C2\ngens a\nrel a^2\n");
  for (Strategy s : {Strategy::HLT, Strategy::Felsch, Strategy::HLTLookahead})
    CHECK(order_of(p, s) == 2);
}

TEST_CASE("symmetric group S3 under every strategy, all subgroups") {
  Presentation p = pres(kS3);
  CHECK(order_of(p) == 6);
  SubgroupSpec h = parse_subgroup(p, {"b"});
  for (Strategy s : {Strategy::HLT, Strategy::Felsch, Strategy::HLTLookahead}) {
    EnumOutcome out = enumerate(p, h, s);
    REQUIRE(out.complete);
    CHECK(index(*out.table) == 2);
    CHECK(verify_table(*out.table, p, h));
  }
}

TEST_CASE("F42 has order 42 and index 14 over <x>") {
  Presentation p = pres(kF42);
  for (Strategy s : {Strategy::HLT, Strategy::Felsch, Strategy::HLTLookahead})
    CHECK(order_of(p, s) == 42);
  EnumOutcome out = enumerate(p, parse_subgroup(p, {"x"}), Strategy::Felsch);
  REQUIRE(out.complete);
  CHECK(index(*out.table) == 14);
}

TEST_CASE("K(5) collapses to the trivial group") {
  Presentation p = pres(R"(
group K5
gens a x
rel a^2
rel x^3
rel (a x)^5
rel [a,x]^6
)");
  CHECK(order_of(p, Strategy::HLT) == 1);
  CHECK(order_of(p, Strategy::Felsch) == 1);
}

TEST_CASE("standardized tables agree across strategies") {
  for (const char* text : {kF42, kS3}) {
    Presentation p = pres(text);
    EnumOutcome a = enumerate(p, SubgroupSpec{}, Strategy::HLT);
    EnumOutcome b = enumerate(p, SubgroupSpec{}, Strategy::Felsch);
    EnumOutcome c = enumerate(p, SubgroupSpec{}, Strategy::HLTLookahead);
    REQUIRE(a.complete);
    REQUIRE(b.complete);
    REQUIRE(c.complete);
    CHECK(a.table->rows == b.table->rows);
    CHECK(a.table->rows == c.table->rows);
  }
}

TEST_CASE("standardize is idempotent and canonical") {
  Presentation p = pres(kS3);
  EnumOutcome out = enumerate(p, SubgroupSpec{}, Strategy::HLT);
  REQUIRE(out.complete);
  CosetTable t = *out.table;
  CHECK(standardize(t).rows == t.rows);  // enumerate() already standardizes
  // Scrambling coset names and re-standardizing recovers the same table.
  CosetTable scrambled = t;
  // swap labels 2 and 3
  auto relabel = [&](std::int32_t v) {
    return v == 2 ? 3 : (v == 3 ? 2 : v);
  };
  for (std::int32_t c = 1; c <= t.n_live; ++c)
    for (int x = 0; x < t.n_cols(); ++x)
      scrambled.rows[static_cast<std::size_t>(relabel(c)) * t.n_cols() + x] =
          relabel(t.at(c, x));
  CHECK(standardize(scrambled).rows == t.rows);
}

TEST_CASE("single-coset table standardizes to itself") {
  Presentation p = pres("group T\ngens a\nrel a\n");
  EnumOutcome out = enumerate(p, SubgroupSpec{}, Strategy::Felsch);
  REQUIRE(out.complete);
  CHECK(index(*out.table) == 1);
  CHECK(standardize(*out.table).rows == out.table->rows);
  CHECK(verify_table(*out.table, p, SubgroupSpec{}));
}

TEST_CASE("resource bound yields an incomplete outcome") {
  Presentation p = pres(kF42);
  EnumLimits tiny;
  tiny.max_cosets = 10;
  EnumOutcome out = enumerate(p, SubgroupSpec{}, Strategy::HLT, tiny);
  CHECK_FALSE(out.complete);
  CHECK_FALSE(out.table.has_value());
  CHECK_THROWS_AS(out.require_table(), IncompleteTable);
}

TEST_CASE("verify_table rejects a transposed entry") {
  Presentation p = pres(kS3);
  EnumOutcome out = enumerate(p, SubgroupSpec{}, Strategy::HLT);
  REQUIRE(out.complete);
  CosetTable bad = *out.table;
  REQUIRE(verify_table(bad, p, SubgroupSpec{}));
  std::swap(bad.rows[1 * bad.n_cols() + 0], bad.rows[2 * bad.n_cols() + 0]);
  CHECK_FALSE(verify_table(bad, p, SubgroupSpec{}));
}

TEST_CASE("verify_table rejects a word that moves coset 1") {
  Presentation p = pres(kS3);
  SubgroupSpec h = parse_subgroup(p, {"b"});
  EnumOutcome out = enumerate(p, h, Strategy::HLT);
  REQUIRE(out.complete);
  CHECK(verify_table(*out.table, p, h));
  SubgroupSpec wrong = parse_subgroup(p, {"a b"});
  CHECK_FALSE(verify_table(*out.table, p, wrong));
}

TEST_CASE("subgroup words with unknown generators are rejected") {
  Presentation p = pres(kS3);
  SubgroupSpec h;
  h.generator_words.push_back(Word({Letter{7, 1}}));
  CHECK_THROWS_AS(enumerate(p, h, Strategy::HLT), InvalidWord);
}

TEST_CASE("table dump golden value for C3") {
  Presentation p = pres("group C3\ngens a\nrel a^3\n");
  EnumOutcome out = enumerate(p, SubgroupSpec{}, Strategy::HLT);
  REQUIRE(out.complete);
  CHECK(dump_table(*out.table) ==
        "cosets 3 gens 1\n"
        "2 3\n"
        "3 1\n"
        "1 2\n");
  CosetTable parsed = parse_table_dump(dump_table(*out.table));
  CHECK(parsed.rows == out.table->rows);
}

TEST_CASE("quotient index divides the original index") {
  Presentation p = pres(kF42);
  Presentation q = quotient_by(p, {parse_word(p, "z")});
  std::int64_t orig = order_of(p);
  std::int64_t quot = order_of(q);
  CHECK(orig % quot == 0);
  CHECK(quot <= orig);
}

TEST_CASE("index over a subgroup divides the group order") {
  Presentation p = pres(kF42);
  for (const char* w : {"x", "z", "b"}) {
    EnumOutcome out = enumerate(p, parse_subgroup(p, {w}), Strategy::HLT);
    REQUIRE(out.complete);
    CHECK(42 % index(*out.table) == 0);
  }
}

TEST_CASE("deterministic stats for a fixed strategy") {
  Presentation p = pres(kF42);
  EnumOutcome a = enumerate(p, SubgroupSpec{}, Strategy::HLT);
  EnumOutcome b = enumerate(p, SubgroupSpec{}, Strategy::HLT);
  CHECK(a.stats.cosets_defined == b.stats.cosets_defined);
  CHECK(a.stats.cosets_dead == b.stats.cosets_dead);
  CHECK(a.stats.coincidences_processed == b.stats.coincidences_processed);
}
