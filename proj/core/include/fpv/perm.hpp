#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fpv/coset_enum.hpp"
#include "fpv/word.hpp"

namespace fpv {

// A permutation of {0, ..., degree-1}, stored as its image table.
// Rendered in cycle notation on 1-based points, e.g. "(1,2)(3,4,5)".
struct Permutation {
  std::vector<std::int32_t> img;

  Permutation() = default;
  explicit Permutation(int degree) : img(degree) {
    for (int i = 0; i < degree; ++i) img[i] = i;
  }

  int degree() const { return static_cast<int>(img.size()); }
  std::int32_t operator[](std::int32_t p) const { return img[p]; }
  bool is_identity() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
};

Permutation compose(const Permutation& a, const Permutation& b);  // apply a, then b
Permutation inverse(const Permutation& a);
bool commute(const Permutation& a, const Permutation& b);

// Least common multiple of the cycle lengths.
unsigned long long element_order(const Permutation& p);

std::string cycle_notation(const Permutation& p);

// The action of the presentation's generators on the cosets of a complete
// table; one permutation per generator, in presentation order.
struct PermGroup {
  int degree = 1;
  std::vector<Permutation> generators;
  std::vector<std::string> generator_names;
};

PermGroup coset_action(const CosetTable& t);

// Image of a word under the generator assignment.
Permutation evaluate_word(const PermGroup& g, const Word& w);

}  // namespace fpv
