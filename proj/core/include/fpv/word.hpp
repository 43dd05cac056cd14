#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace fpv {

// One generator occurrence inside a word: generator index plus a sign.
struct Letter {
  std::uint16_t gen = 0;
  std::int8_t sign = 1;  // +1 or -1

  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

inline Letter inverse(Letter l) { return {l.gen, static_cast<std::int8_t>(-l.sign)}; }

// A word over the generator alphabet. The empty word is the identity.
// Most operations expect (and produce) freely reduced words.
struct Word {
  std::vector<Letter> letters;

  Word() = default;
  explicit Word(std::vector<Letter> ls) : letters(std::move(ls)) {}

  bool empty() const { return letters.empty(); }
  std::size_t size() const { return letters.size(); }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;
};

// Removes adjacent cancelling pairs until none remain.
Word free_reduce(const Word& w);

// Reversed letters with flipped signs; w * invert(w) reduces to the identity.
Word invert(const Word& w);

// Concatenation followed by free reduction.
Word concat(const Word& a, const Word& b);

// w conjugated: invert(by) * w * by, freely reduced.
Word conjugate(const Word& w, const Word& by);

// Peels mutually inverse first/last letters; input must be freely reduced.
Word cyclic_reduce(const Word& w);

// w raised to an integer power (negative allowed), freely reduced.
Word power(const Word& w, long long e);

// Renders a word using generator names, e.g. "x t^-1 x^2". Parsing the
// result back with the same generator list yields an equal word.
std::string render(const Word& w, const std::vector<std::string>& names);

// Canonical representative of a relator up to rotation and inversion; used
// to deduplicate relator sets.
Word cyclic_canonical(const Word& w);

}  // namespace fpv
