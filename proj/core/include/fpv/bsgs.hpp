#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fpv/perm.hpp"
#include "fpv/presentation.hpp"

namespace fpv {

// Base and strong generating set with Schreier-vector transversals.
// Construction is fully deterministic: base points are the smallest moved
// points, orbits grow in breadth-first discovery order.
struct BSGS {
  struct Level {
    std::int32_t base = 0;
    std::vector<std::int32_t> orbit;      // discovery order; orbit[0] == base
    std::vector<std::int32_t> position;   // degree-sized; pos+1 in orbit, 0 = absent
    std::vector<std::int32_t> sv_gen;     // per orbit slot: strong gen index, -1 at root
    std::vector<std::int32_t> sv_parent;  // per orbit slot: predecessor point
    std::vector<int> gens;                // strong generators active at this level
  };

  int degree = 1;
  std::vector<Permutation> strong_gens;
  std::vector<Level> levels;
  unsigned long long order = 1;

  // Transversal representative mapping the level's base to `point`.
  Permutation transversal(int level, std::int32_t point) const;

  // True iff p is generated by the strong generators.
  bool contains(const Permutation& p) const;
};

BSGS schreier_sims(const PermGroup& g);

unsigned long long group_order(const PermGroup& g);

// The set of element orders, obtained by walking every group element
// through the stabilizer chain.
struct Spectrum {
  std::vector<unsigned long long> orders;  // sorted ascending, contains 1
  bool exact = false;

  bool contains(unsigned long long n) const;
};

constexpr unsigned long long kDefaultOrderBound = 2'000'000;

// Exact spectrum by full traversal; raises OrderBoundExceeded when the
// group is larger than `order_bound`.
Spectrum spectrum_exact(const PermGroup& g,
                        unsigned long long order_bound = kDefaultOrderBound);

bool divisor_closed(const Spectrum& s);

// Randomized word search for an element of order n. `no_evidence` is not a
// proof of absence. Deterministic for a fixed seed.
struct OrderWitness {
  bool found = false;
  std::string word;    // witness word in the generators
  std::string cycles;  // its cycle form
};

OrderWitness has_element_of_order(const PermGroup& g,
                                  const std::vector<std::string>& names,
                                  unsigned long long n, int trials,
                                  std::uint64_t seed);

// Smallest-degree faithful coset action found among cyclic subgroups <g>
// and pairs <g,h>, certified faithful by BSGS order equality with
// `known_order`; falls back to the regular action. nullopt when every
// candidate enumeration blows the limits.
std::optional<PermGroup> reduced_faithful_action(const Presentation& p,
                                                 unsigned long long known_order,
                                                 const EnumLimits& limits,
                                                 Strategy strategy = Strategy::HLTLookahead);

}  // namespace fpv
