#pragma once

#include <map>
#include <vector>

#include "rational.hpp"

namespace wtg {

using RatVector = std::vector<Rational>;
using RatMatrix = std::vector<RatVector>;

/// Reduced row echelon form; `pivots[k]` is the pivot column of row k.
struct RowEchelon {
  RatMatrix rows;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

inline RowEchelon row_reduce(RatMatrix m, std::size_t ncols) {
  RowEchelon out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t k = c; k < ncols; ++k) m[i][k] -= f * m[r][k];
    }
    out.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  out.rows = std::move(m);
  return out;
}

inline std::size_t rank(const RatMatrix& m, std::size_t ncols) { return row_reduce(m, ncols).rank(); }

/// Basis of {x : m x = 0}.
inline RatMatrix nullspace(const RatMatrix& m, std::size_t ncols) {
  RowEchelon e = row_reduce(m, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  RatMatrix basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    RatVector v(ncols, Rational(0));
    v[f] = 1;
    for (std::size_t k = 0; k < e.rank(); ++k) v[e.pivots[k]] = -e.rows[k][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Turns a family of polynomial-valued linear conditions into a coefficient matrix:
/// `images[k]` is the value of the k-th unknown; each monomial key yields one row.
template <class Poly>
RatMatrix coefficient_rows(const std::vector<Poly>& images) {
  std::map<typename Poly::TermMap::key_type, RatVector> rows;
  for (std::size_t k = 0; k < images.size(); ++k)
    for (const auto& [s, c] : images[k].terms()) {
      auto it = rows.find(s);
      if (it == rows.end()) it = rows.emplace(s, RatVector(images.size(), Rational(0))).first;
      it->second[k] = c;
    }
  RatMatrix out;
  for (auto& [s, row] : rows) out.push_back(std::move(row));
  return out;
}

}  // namespace wtg
