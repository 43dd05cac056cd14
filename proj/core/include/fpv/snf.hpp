#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fpv/presentation.hpp"

namespace fpv {

using BigInt = boost::multiprecision::cpp_int;

// Dense integer matrix with exact entries. Intermediate values during
// reduction can outgrow any fixed-width type, hence big integers.
struct IntMatrix {
  int n_rows = 0;
  int n_cols = 0;
  std::vector<BigInt> data;

  IntMatrix() = default;
  IntMatrix(int rows, int cols)
      : n_rows(rows), n_cols(cols), data(static_cast<std::size_t>(rows) * cols) {}

  BigInt& at(int r, int c) { return data[static_cast<std::size_t>(r) * n_cols + c]; }
  const BigInt& at(int r, int c) const {
    return data[static_cast<std::size_t>(r) * n_cols + c];
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

IntMatrix identity_matrix(int n);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
BigInt determinant(const IntMatrix& m);  // cofactor expansion; test-sized inputs

// U * M * V = S with S diagonal, nonnegative, each entry dividing the next,
// and U, V unimodular.
struct SNFResult {
  IntMatrix S;
  IntMatrix U;
  IntMatrix V;
};

SNFResult smith_normal_form(const IntMatrix& m);

// One row per relator, one column per generator; entries are signed
// exponent sums.
IntMatrix relation_matrix(const Presentation& p);

// Invariant factors >= 2 in divisibility order plus the free rank.
struct AbelianInvariants {
  std::vector<BigInt> torsion;
  long long free_rank = 0;

  friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;
};

AbelianInvariants abelian_invariants(const Presentation& p);

std::string to_string(const AbelianInvariants& a);

}  // namespace fpv
