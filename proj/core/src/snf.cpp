#include "fpv/snf.hpp"

#include <algorithm>

#include "fpv/errors.hpp"

namespace fpv {

IntMatrix identity_matrix(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.n_cols != b.n_rows) throw Error("matrix size mismatch");
  IntMatrix c(a.n_rows, b.n_cols);
  for (int i = 0; i < a.n_rows; ++i)
    for (int k = 0; k < a.n_cols; ++k) {
      const BigInt& aik = a.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.n_cols; ++j) c.at(i, j) += aik * b.at(k, j);
    }
  return c;
}

BigInt determinant(const IntMatrix& m) {
  if (m.n_rows != m.n_cols) throw Error("determinant of a non-square matrix");
  int n = m.n_rows;
  if (n == 0) return 1;
  if (n == 1) return m.at(0, 0);
  BigInt det = 0;
  for (int j = 0; j < n; ++j) {
    if (m.at(0, j) == 0) continue;
    IntMatrix minor(n - 1, n - 1);
    for (int r = 1; r < n; ++r) {
      int cc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == j) continue;
        minor.at(r - 1, cc++) = m.at(r, c);
      }
    }
    BigInt term = m.at(0, j) * determinant(minor);
    det += (j % 2 == 0) ? term : -term;
  }
  return det;
}

namespace {

struct Reducer {
  IntMatrix S, U, V;

  void swap_rows(int a, int b) {
    if (a == b) return;
    for (int j = 0; j < S.n_cols; ++j) std::swap(S.at(a, j), S.at(b, j));
    for (int j = 0; j < U.n_cols; ++j) std::swap(U.at(a, j), U.at(b, j));
  }
  void swap_cols(int a, int b) {
    if (a == b) return;
    for (int i = 0; i < S.n_rows; ++i) std::swap(S.at(i, a), S.at(i, b));
    for (int i = 0; i < V.n_rows; ++i) std::swap(V.at(i, a), V.at(i, b));
  }
  void add_row(int dst, int src, const BigInt& q) {  // row dst += q * row src
    if (q == 0) return;
    for (int j = 0; j < S.n_cols; ++j) S.at(dst, j) += q * S.at(src, j);
    for (int j = 0; j < U.n_cols; ++j) U.at(dst, j) += q * U.at(src, j);
  }
  void add_col(int dst, int src, const BigInt& q) {
    if (q == 0) return;
    for (int i = 0; i < S.n_rows; ++i) S.at(i, dst) += q * S.at(i, src);
    for (int i = 0; i < V.n_rows; ++i) V.at(i, dst) += q * V.at(i, src);
  }
  void negate_row(int r) {
    for (int j = 0; j < S.n_cols; ++j) S.at(r, j) = -S.at(r, j);
    for (int j = 0; j < U.n_cols; ++j) U.at(r, j) = -U.at(r, j);
  }

  // Smallest nonzero |entry| in the trailing submatrix, earliest position
  // breaking ties. Returns false when the submatrix is zero.
  bool find_pivot(int t, int& pi, int& pj) const {
    bool found = false;
    BigInt best;
    for (int i = t; i < S.n_rows; ++i)
      for (int j = t; j < S.n_cols; ++j) {
        const BigInt& e = S.at(i, j);
        if (e == 0) continue;
        BigInt a = abs(e);
        if (!found || a < best) {
          found = true;
          best = a;
          pi = i;
          pj = j;
        }
      }
    return found;
  }

  void run() {
    int t = 0;
    int rank_cap = std::min(S.n_rows, S.n_cols);
    while (t < rank_cap) {
      int pi, pj;
      if (!find_pivot(t, pi, pj)) break;
      swap_rows(t, pi);
      swap_cols(t, pj);
      bool clean = false;
      while (!clean) {
        clean = true;
        for (int i = t + 1; i < S.n_rows; ++i) {
          if (S.at(i, t) == 0) continue;
          BigInt q = S.at(i, t) / S.at(t, t);
          add_row(i, t, -q);
          if (S.at(i, t) != 0) {
            // Remainder became the smaller pivot.
            swap_rows(t, i);
            clean = false;
          }
        }
        for (int j = t + 1; j < S.n_cols; ++j) {
          if (S.at(t, j) == 0) continue;
          BigInt q = S.at(t, j) / S.at(t, t);
          add_col(j, t, -q);
          if (S.at(t, j) != 0) {
            swap_cols(t, j);
            clean = false;
          }
        }
      }
      // The pivot must divide every entry of the trailing submatrix for the
      // diagonal divisibility chain; fold offending rows in and redo.
      bool divides_all = true;
      for (int i = t + 1; i < S.n_rows && divides_all; ++i)
        for (int j = t + 1; j < S.n_cols; ++j)
          if (S.at(i, j) % S.at(t, t) != 0) {
            add_row(t, i, 1);
            divides_all = false;
            break;
          }
      if (!divides_all) continue;  // re-run elimination at the same t
      if (S.at(t, t) < 0) negate_row(t);
      ++t;
    }
  }
};

}  // namespace

SNFResult smith_normal_form(const IntMatrix& m) {
  Reducer r{m, identity_matrix(m.n_rows), identity_matrix(m.n_cols)};
  r.run();
  return {std::move(r.S), std::move(r.U), std::move(r.V)};
}

IntMatrix relation_matrix(const Presentation& p) {
  IntMatrix m(static_cast<int>(p.relators.size()),
              static_cast<int>(p.generators.size()));
  for (int i = 0; i < m.n_rows; ++i)
    for (Letter l : p.relators[i].letters) m.at(i, l.gen) += l.sign;
  return m;
}

AbelianInvariants abelian_invariants(const Presentation& p) {
  IntMatrix rel = relation_matrix(p);
  SNFResult snf = smith_normal_form(rel);
  AbelianInvariants inv;
  int rank = 0;
  int d = std::min(rel.n_rows, rel.n_cols);
  for (int i = 0; i < d; ++i) {
    const BigInt& e = snf.S.at(i, i);
    if (e == 0) continue;
    ++rank;
    if (e >= 2) inv.torsion.push_back(e);
  }
  inv.free_rank = rel.n_cols - rank;
  return inv;
}

std::string to_string(const AbelianInvariants& a) {
  std::string out = "invariants: [";
  for (std::size_t i = 0; i < a.torsion.size(); ++i) {
    if (i) out += ",";
    out += a.torsion[i].str();
  }
  out += "] free_rank: " + std::to_string(a.free_rank);
  return out;
}

}  // namespace fpv
