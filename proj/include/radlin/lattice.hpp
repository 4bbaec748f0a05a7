#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "radlin/numeric.hpp"

namespace radlin {

using IntMat = std::vector<std::vector<Int>>;

/// Bring the rows into echelon form using unimodular row operations only
/// (swap, negate, add integer multiples), so the row lattice is preserved.
/// Column entries below each pivot are cleared by Euclidean reduction.
/// Returns the rank.
inline std::size_t row_echelon(IntMat& m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  std::size_t pr = 0;
  for (std::size_t c = 0; c < cols && pr < rows; ++c) {
    for (;;) {
      std::size_t best = rows;
      for (std::size_t r = pr; r < rows; ++r) {
        if (sgn(m[r][c]) == 0) continue;
        if (best == rows || mpz_cmpabs(m[r][c].get_mpz_t(), m[best][c].get_mpz_t()) < 0) best = r;
      }
      if (best == rows) break;  // column is zero below pr; try next column
      std::swap(m[best], m[pr]);
      bool residue = false;
      for (std::size_t r = pr + 1; r < rows; ++r) {
        if (sgn(m[r][c]) == 0) continue;
        Int q = m[r][c] / m[pr][c];  // truncated quotient: |remainder| < |pivot|
        if (sgn(q) != 0)
          for (std::size_t j = c; j < cols; ++j) m[r][j] -= q * m[pr][j];
        if (sgn(m[r][c]) != 0) residue = true;
      }
      if (!residue) {
        if (sgn(m[pr][c]) < 0)
          for (std::size_t j = c; j < cols; ++j) m[pr][j] = -m[pr][j];
        ++pr;
        break;
      }
    }
  }
  return pr;
}

/// Index [Z^cols : L] of the lattice L spanned by the given integer rows.
/// Exact: the echelon form has positive pivots and the index is their
/// product. Throws if the rows do not span a finite-index sublattice.
inline Int lattice_index(IntMat rows, std::size_t cols) {
  for (const auto& r : rows)
    if (r.size() != cols) throw std::invalid_argument("lattice_index: ragged matrix");
  std::size_t rank = row_echelon(rows);
  if (rank < cols) throw std::invalid_argument("lattice_index: lattice is not full rank");
  Int idx = 1;
  for (std::size_t k = 0; k < cols; ++k) idx *= rows[k][k];
  return idx;
}

}  // namespace radlin
