#include "fpv/perm.hpp"

#include <numeric>

#include "fpv/errors.hpp"

namespace fpv {

bool Permutation::is_identity() const {
  for (std::int32_t i = 0; i < degree(); ++i)
    if (img[i] != i) return false;
  return true;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation c;
  c.img.resize(a.img.size());
  for (std::size_t i = 0; i < a.img.size(); ++i) c.img[i] = b.img[a.img[i]];
  return c;
}

Permutation inverse(const Permutation& a) {
  Permutation c;
  c.img.resize(a.img.size());
  for (std::size_t i = 0; i < a.img.size(); ++i)
    c.img[a.img[i]] = static_cast<std::int32_t>(i);
  return c;
}

bool commute(const Permutation& a, const Permutation& b) {
  for (std::int32_t i = 0; i < a.degree(); ++i)
    if (b.img[a.img[i]] != a.img[b.img[i]]) return false;
  return true;
}

unsigned long long element_order(const Permutation& p) {
  std::vector<bool> seen(p.img.size(), false);
  unsigned long long order = 1;
  for (std::int32_t i = 0; i < p.degree(); ++i) {
    if (seen[i]) continue;
    unsigned long long len = 0;
    std::int32_t j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = p.img[j];
      ++len;
    }
    order = std::lcm(order, len);
  }
  return order;
}

std::string cycle_notation(const Permutation& p) {
  std::string out;
  std::vector<bool> seen(p.img.size(), false);
  for (std::int32_t i = 0; i < p.degree(); ++i) {
    if (seen[i] || p.img[i] == i) {
      seen[i] = true;
      continue;
    }
    out += '(';
    std::int32_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) out += ',';
      out += std::to_string(j + 1);
      first = false;
      j = p.img[j];
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

PermGroup coset_action(const CosetTable& t) {
  if (t.n_live <= 0) throw IncompleteTable();
  PermGroup g;
  g.degree = t.n_live;
  for (int gen = 0; gen < t.n_gens; ++gen) {
    Permutation p(t.n_live);
    for (std::int32_t c = 1; c <= t.n_live; ++c) {
      std::int32_t d = t.at(c, CosetTable::col(gen, 1));
      if (d < 1 || d > t.n_live) throw IncompleteTable();
      p.img[c - 1] = d - 1;
    }
    g.generators.push_back(std::move(p));
  }
  return g;
}

Permutation evaluate_word(const PermGroup& g, const Word& w) {
  Permutation acc(g.degree);
  for (Letter l : w.letters) {
    if (l.gen >= g.generators.size())
      throw UnknownSymbol("generator #" + std::to_string(l.gen));
    const Permutation& p = g.generators[l.gen];
    if (l.sign > 0) {
      acc = compose(acc, p);
    } else {
      acc = compose(acc, inverse(p));
    }
  }
  return acc;
}

}  // namespace fpv
