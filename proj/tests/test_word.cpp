#include <doctest.h>

#include <random>

#include "fpv/word.hpp"

using namespace fpv;

namespace {

Word w(std::initializer_list<std::pair<int, int>> ls) {
  Word out;
  for (auto [g, s] : ls)
    out.letters.push_back(Letter{static_cast<std::uint16_t>(g),
                                 static_cast<std::int8_t>(s)});
  return out;
}

Word random_word(std::mt19937& rng, int max_len, int n_gens = 3) {
  int len = static_cast<int>(rng() % (max_len + 1));
  Word out;
  for (int i = 0; i < len; ++i)
    out.letters.push_back(Letter{static_cast<std::uint16_t>(rng() % n_gens),
                                 static_cast<std::int8_t>((rng() & 1) ? 1 : -1)});
  return out;
}

}  // namespace

TEST_CASE("free reduction cancels adjacent inverse pairs") {
  // x x^-1 t -> t
  CHECK(free_reduce(w({{0, 1}, {0, -1}, {1, 1}})) == w({{1, 1}}));
  CHECK(free_reduce(Word{}) == Word{});
  // x t t^-1 x x -> x x x
  CHECK(free_reduce(w({{0, 1}, {1, 1}, {1, -1}, {0, 1}, {0, 1}})) ==
        w({{0, 1}, {0, 1}, {0, 1}}));
}

TEST_CASE("free reduction is idempotent on random words") {
  std::mt19937 rng(12345);
  for (int i = 0; i < 500; ++i) {
    Word v = random_word(rng, 64);
    Word r = free_reduce(v);
    CHECK(free_reduce(r) == r);
  }
}

TEST_CASE("invert reverses and flips") {
  CHECK(invert(w({{0, 1}, {1, -1}})) == w({{1, 1}, {0, -1}}));
  CHECK(invert(Word{}) == Word{});
}

TEST_CASE("invert is an involution and an anti-homomorphism") {
  std::mt19937 rng(999);
  for (int i = 0; i < 500; ++i) {
    Word u = random_word(rng, 64);
    Word v = random_word(rng, 64);
    CHECK(invert(invert(u)) == u);
    CHECK(free_reduce(concat(u, invert(u))) == Word{});
    CHECK(concat(invert(v), invert(u)) == invert(concat(u, v)));
  }
}

TEST_CASE("cyclic reduction peels conjugating prefixes") {
  // x^-1 t x -> t
  CHECK(cyclic_reduce(w({{0, -1}, {1, 1}, {0, 1}})) == w({{1, 1}}));
  // already reduced
  CHECK(cyclic_reduce(w({{0, 1}, {1, 1}})) == w({{0, 1}, {1, 1}}));
  // x^-1 x^-1 t x x -> t
  CHECK(cyclic_reduce(w({{0, -1}, {0, -1}, {1, 1}, {0, 1}, {0, 1}})) == w({{1, 1}}));
}

TEST_CASE("cyclic reduction result is a conjugate (brute-force search)") {
  std::mt19937 rng(777);
  for (int i = 0; i < 300; ++i) {
    Word v = free_reduce(random_word(rng, 24));
    Word c = cyclic_reduce(v);
    // First and last letters no longer cancel.
    if (c.size() >= 2)
      CHECK(c.letters.front() != inverse(c.letters.back()));
    // Some prefix p of v satisfies p^-1 v p ... actually q v q^-1 = c where
    // q is the inverse of the peeled prefix; search all prefixes.
    bool conjugate = false;
    for (std::size_t k = 0; k <= v.size(); ++k) {
      Word prefix(std::vector<Letter>(v.letters.begin(), v.letters.begin() + k));
      Word q = invert(prefix);
      if (free_reduce(concat(concat(q, v), invert(q))) == c) {
        conjugate = true;
        break;
      }
    }
    CHECK(conjugate);
  }
}

TEST_CASE("power expands with sign") {
  Word xt = w({{0, 1}, {1, 1}});
  CHECK(power(xt, 0) == Word{});
  CHECK(power(xt, 2) == w({{0, 1}, {1, 1}, {0, 1}, {1, 1}}));
  CHECK(power(xt, -1) == invert(xt));
}

TEST_CASE("render uses run-length powers") {
  std::vector<std::string> names{"x", "t"};
  CHECK(render(w({{0, 1}, {1, -1}, {1, -1}}), names) == "x t^-2");
  CHECK(render(Word{}, names).empty());
}

TEST_CASE("cyclic canonical form identifies rotations and inverses") {
  Word a = w({{0, 1}, {1, 1}, {0, -1}});
  Word rotated = w({{1, 1}, {0, -1}, {0, 1}});  // reduces cyclically
  CHECK(cyclic_canonical(a) == cyclic_canonical(invert(a)));
  CHECK(cyclic_canonical(free_reduce(rotated)) ==
        cyclic_canonical(free_reduce(a)));
}
