#pragma once

#include "fpcert/rational.hpp"

#include <stdexcept>
#include <vector>

namespace fpcert {

// Sparse row of a rational linear system.
struct SparseEntry {
  std::size_t col;
  Rat value;
};

// Solves A y = b by rational LU factorisation with row pivoting, choosing the
// first row with a nonzero entry in the pivot column.
inline std::vector<Rat> solve_exact(std::vector<std::vector<SparseEntry>> const& rows, std::vector<Rat> b) {
  std::size_t n = rows.size();
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (auto const& e : rows[i]) a[i][e.col] += e.value;

  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && sgn(a[p][k]) == 0) ++p;
    if (p == n) throw std::runtime_error("singular linear system");
    std::swap(a[p], a[k]);
    std::swap(perm[p], perm[k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (sgn(a[i][k]) == 0) continue;
      a[i][k] /= a[k][k];
      for (std::size_t j = k + 1; j < n; ++j)
        if (sgn(a[k][j]) != 0) a[i][j] -= a[i][k] * a[k][j];
    }
  }
  std::vector<Rat> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = b[perm[i]];
    for (std::size_t j = 0; j < i; ++j)
      if (sgn(a[i][j]) != 0) y[i] -= a[i][j] * y[j];
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j)
      if (sgn(a[i][j]) != 0) y[i] -= a[i][j] * y[j];
    y[i] /= a[i][i];
  }
  return y;
}

}  // namespace fpcert
