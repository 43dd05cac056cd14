#include "fpv/bsgs.hpp"

#include <algorithm>
#include <random>

#include "fpv/errors.hpp"

namespace fpv {

namespace {

// Points moved by none of the listed generators do not occur in any base.
std::int32_t smallest_moved(const std::vector<Permutation>& gens,
                            const std::vector<int>& which, int degree) {
  for (std::int32_t p = 0; p < degree; ++p)
    for (int gi : which)
      if (gens[gi].img[p] != p) return p;
  return -1;
}

class Builder {
 public:
  Builder(const PermGroup& g) : degree_(g.degree) {
    for (const Permutation& p : g.generators) {
      if (p.degree() != degree_) throw Error("mixed degrees in generator list");
      if (!p.is_identity() &&
          std::find(sgens_.begin(), sgens_.end(), p) == sgens_.end())
        sgens_.push_back(p);
    }
  }

  BSGS build() {
    BSGS b;
    b.degree = degree_;
    if (sgens_.empty()) {
      b.order = 1;
      return b;
    }
    std::vector<int> all(sgens_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    new_level(smallest_moved(sgens_, all, degree_), all);

    int i = 0;
    while (i >= 0) {
      rebuild_orbit(i);
      auto witness = verify_level(i);
      if (!witness) {
        --i;
        continue;
      }
      auto [residue, j] = *witness;
      int gi = static_cast<int>(sgens_.size());
      sgens_.push_back(residue);
      if (j == static_cast<int>(levels_.size())) {
        std::int32_t base = smallest_moved(sgens_, {gi}, degree_);
        new_level(base, {});
      }
      for (int l = i + 1; l <= j; ++l) levels_[l].gens.push_back(gi);
      i = j;
    }

    b.strong_gens = std::move(sgens_);
    b.levels = std::move(levels_);
    b.order = 1;
    for (const BSGS::Level& lv : b.levels) {
      unsigned long long sz = lv.orbit.size();
      if (b.order > ~0ULL / sz) throw Error("group order overflows 64 bits");
      b.order *= sz;
    }
    return b;
  }

 private:
  using Level = BSGS::Level;

  void new_level(std::int32_t base, std::vector<int> gens) {
    Level lv;
    lv.base = base;
    lv.gens = std::move(gens);
    levels_.push_back(std::move(lv));
  }

  void rebuild_orbit(int li) {
    Level& lv = levels_[li];
    lv.orbit.clear();
    lv.position.assign(degree_, 0);
    lv.sv_gen.clear();
    lv.sv_parent.clear();
    lv.orbit.push_back(lv.base);
    lv.position[lv.base] = 1;
    lv.sv_gen.push_back(-1);
    lv.sv_parent.push_back(lv.base);
    for (std::size_t head = 0; head < lv.orbit.size(); ++head) {
      std::int32_t p = lv.orbit[head];
      for (int gi : lv.gens) {
        std::int32_t q = sgens_[gi].img[p];
        if (lv.position[q] == 0) {
          lv.orbit.push_back(q);
          lv.position[q] = static_cast<std::int32_t>(lv.orbit.size());
          lv.sv_gen.push_back(gi);
          lv.sv_parent.push_back(p);
        }
      }
    }
  }

  Permutation transversal(const Level& lv, std::int32_t point) const {
    // Multiply the generators along the Schreier-vector path root -> point.
    std::vector<int> path;
    std::int32_t q = point;
    while (true) {
      std::int32_t slot = lv.position[q] - 1;
      if (lv.sv_gen[slot] < 0) break;
      path.push_back(lv.sv_gen[slot]);
      q = lv.sv_parent[slot];
    }
    Permutation u(degree_);
    for (auto it = path.rbegin(); it != path.rend(); ++it)
      u = compose(u, sgens_[*it]);
    return u;
  }

  // Strips p through levels `from`..end. Returns the residue and the level
  // at which stripping stopped (== levels_.size() when p reduced to a
  // permutation fixing every base, possibly non-identity).
  std::pair<Permutation, int> strip(Permutation p, int from) const {
    for (int l = from; l < static_cast<int>(levels_.size()); ++l) {
      const Level& lv = levels_[l];
      std::int32_t d = p.img[lv.base];
      if (d == lv.base) continue;
      if (lv.position[d] == 0) return {std::move(p), l};
      p = compose(p, inverse(transversal(lv, d)));
    }
    return {std::move(p), static_cast<int>(levels_.size())};
  }

  // Checks every Schreier generator of level li sifts to the identity
  // through the deeper levels; returns a nontrivial residue otherwise.
  std::optional<std::pair<Permutation, int>> verify_level(int li) {
    Level& lv = levels_[li];
    bool deepest = li + 1 == static_cast<int>(levels_.size());
    if (deepest && trivial_stabilizer_fast(lv)) return std::nullopt;

    for (std::size_t slot = 0; slot < lv.orbit.size(); ++slot) {
      std::int32_t beta = lv.orbit[slot];
      Permutation u_beta = transversal(lv, beta);
      for (int gi : lv.gens) {
        std::int32_t target = sgens_[gi].img[beta];
        Permutation s = compose(compose(u_beta, sgens_[gi]),
                                inverse(transversal(lv, target)));
        if (s.is_identity()) continue;
        auto [residue, j] = strip(std::move(s), li + 1);
        if (!residue.is_identity())
          return std::make_pair(std::move(residue), j);
      }
    }
    return std::nullopt;
  }

  // Batched triviality test for the deepest level: all Schreier generators
  // are the identity iff g(u_b(p)) == u_{b g}(p) for every point p and every
  // non-tree edge (b, g). The per-point images of all transversal elements
  // propagate along the Schreier tree in one sweep, so the whole test costs
  // O(|orbit| * |gens| * degree) instead of materializing each generator.
  bool trivial_stabilizer_fast(const Level& lv) {
    std::vector<std::int32_t> v(lv.orbit.size());
    for (std::int32_t p = 0; p < degree_; ++p) {
      v[0] = p;
      for (std::size_t slot = 1; slot < lv.orbit.size(); ++slot) {
        std::int32_t parent_slot = lv.position[lv.sv_parent[slot]] - 1;
        v[slot] = sgens_[lv.sv_gen[slot]].img[v[parent_slot]];
      }
      for (std::size_t slot = 0; slot < lv.orbit.size(); ++slot) {
        std::int32_t beta = lv.orbit[slot];
        for (int gi : lv.gens) {
          std::int32_t target_slot = lv.position[sgens_[gi].img[beta]] - 1;
          if (sgens_[gi].img[v[slot]] != v[target_slot]) return false;
        }
      }
    }
    return true;
  }

  int degree_;
  std::vector<Permutation> sgens_;
  std::vector<Level> levels_;
};

}  // namespace

Permutation BSGS::transversal(int level, std::int32_t point) const {
  const Level& lv = levels.at(level);
  std::vector<int> path;
  std::int32_t q = point;
  while (true) {
    std::int32_t slot = lv.position[q] - 1;
    if (slot < 0) throw Error("point outside the orbit");
    if (lv.sv_gen[slot] < 0) break;
    path.push_back(lv.sv_gen[slot]);
    q = lv.sv_parent[slot];
  }
  Permutation u(degree);
  for (auto it = path.rbegin(); it != path.rend(); ++it)
    u = compose(u, strong_gens[*it]);
  return u;
}

bool BSGS::contains(const Permutation& p) const {
  if (p.degree() != degree) return false;
  Permutation r = p;
  for (std::size_t l = 0; l < levels.size(); ++l) {
    const Level& lv = levels[l];
    std::int32_t d = r.img[lv.base];
    if (d == lv.base) continue;
    if (lv.position[d] == 0) return false;
    r = compose(r, inverse(transversal(static_cast<int>(l), d)));
  }
  return r.is_identity();
}

BSGS schreier_sims(const PermGroup& g) { return Builder(g).build(); }

unsigned long long group_order(const PermGroup& g) {
  return schreier_sims(g).order;
}

bool Spectrum::contains(unsigned long long n) const {
  return std::binary_search(orders.begin(), orders.end(), n);
}

Spectrum spectrum_exact(const PermGroup& g, unsigned long long order_bound) {
  BSGS b = schreier_sims(g);
  if (b.order > order_bound) throw OrderBoundExceeded(b.order, order_bound);

  // Materialize the transversals once; the traversal below touches each of
  // them |G| / |orbit| times.
  std::vector<std::vector<Permutation>> trans(b.levels.size());
  for (std::size_t l = 0; l < b.levels.size(); ++l)
    for (std::int32_t pt : b.levels[l].orbit)
      trans[l].push_back(b.transversal(static_cast<int>(l), pt));

  std::vector<bool> seen(b.order + 1, false);
  seen[1] = true;

  // Every element factors uniquely as a product of one transversal
  // representative per level; walk all combinations with an odometer,
  // keeping partial products so that stepping the innermost level costs a
  // single composition.
  const int L = static_cast<int>(b.levels.size());
  std::vector<std::size_t> idx(L, 0);
  std::vector<Permutation> acc(L + 1);
  acc[L] = Permutation(b.degree);
  for (int l = L - 1; l >= 0; --l) acc[l] = compose(acc[l + 1], trans[l][0]);
  for (;;) {
    seen[element_order(acc[0])] = true;
    int l = 0;
    while (l < L && idx[l] + 1 == trans[l].size()) ++l;
    if (l == L) break;
    ++idx[l];
    for (int m = l; m >= 0; --m) {
      if (m < l) idx[m] = 0;
      acc[m] = compose(acc[m + 1], trans[m][idx[m]]);
    }
  }

  Spectrum s;
  s.exact = true;
  for (unsigned long long n = 1; n < seen.size(); ++n)
    if (seen[n]) s.orders.push_back(n);
  return s;
}

bool divisor_closed(const Spectrum& s) {
  if (s.orders.empty() || s.orders.front() != 1) return false;
  for (unsigned long long n : s.orders)
    for (unsigned long long d = 1; d * d <= n; ++d)
      if (n % d == 0 && (!s.contains(d) || !s.contains(n / d))) return false;
  return true;
}

OrderWitness has_element_of_order(const PermGroup& g,
                                  const std::vector<std::string>& names,
                                  unsigned long long n, int trials,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  int k = static_cast<int>(g.generators.size());
  if (k == 0 || n == 0) return {};
  if (n == 1) return {true, "", "()"};
  for (int t = 0; t < trials; ++t) {
    int len = 2 + static_cast<int>(rng() % 24);
    Word w;
    Permutation p(g.degree);
    for (int i = 0; i < len; ++i) {
      int gi = static_cast<int>(rng() % k);
      int sign = (rng() & 1) ? 1 : -1;
      w.letters.push_back(Letter{static_cast<std::uint16_t>(gi),
                                 static_cast<std::int8_t>(sign)});
      p = compose(p, sign > 0 ? g.generators[gi] : inverse(g.generators[gi]));
    }
    unsigned long long m = element_order(p);
    if (m % n != 0) continue;
    unsigned long long e = m / n;
    Permutation q(g.degree);
    for (unsigned long long i = 0; i < e; ++i) q = compose(q, p);
    OrderWitness out;
    out.found = true;
    out.word = render(free_reduce(w), names);
    if (e > 1) out.word = "(" + out.word + ")^" + std::to_string(e);
    out.cycles = cycle_notation(q);
    return out;
  }
  return {};
}

std::optional<PermGroup> reduced_faithful_action(const Presentation& p,
                                                 unsigned long long known_order,
                                                 const EnumLimits& limits,
                                                 Strategy strategy) {
  int k = static_cast<int>(p.generators.size());
  std::vector<SubgroupSpec> candidates;
  for (int i = 0; i < k; ++i)
    candidates.push_back(SubgroupSpec{
        {Word({Letter{static_cast<std::uint16_t>(i), 1}})}});
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      candidates.push_back(
          SubgroupSpec{{Word({Letter{static_cast<std::uint16_t>(i), 1}}),
                        Word({Letter{static_cast<std::uint16_t>(j), 1}})}});

  std::optional<PermGroup> best;
  for (const SubgroupSpec& h : candidates) {
    EnumOutcome out = enumerate(p, h, strategy, limits);
    if (!out.complete) continue;
    if (best && best->degree <= out.table->n_live) continue;
    PermGroup action = coset_action(*out.table);
    if (group_order(action) == known_order) best = std::move(action);
  }
  if (best) return best;

  EnumOutcome regular = enumerate(p, SubgroupSpec{}, strategy, limits);
  if (!regular.complete) return std::nullopt;
  PermGroup action = coset_action(*regular.table);
  if (group_order(action) != known_order) return std::nullopt;
  return action;
}

}  // namespace fpv
