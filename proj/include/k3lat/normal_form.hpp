#pragma once

#include "k3lat/arith.hpp"
#include "k3lat/matrix.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace k3lat {

/// left * A * right = diag(d), with left and right unimodular and d[i] | d[i+1].
/// d has min(rows, cols) entries; trailing zeros carry the rank defect.
struct SnfDecomposition {
  std::vector<Int> d;
  IntMatrix left;
  IntMatrix right;

  std::size_t rank() const {
    std::size_t r = 0;
    while (r < d.size() && d[r] != 0) ++r;
    return r;
  }
};

namespace detail {

// Position of the smallest nonzero |a(i,j)| with i,j >= t, if any.
inline std::optional<std::pair<std::size_t, std::size_t>> min_pivot(const IntMatrix& a, std::size_t t) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  Int best_abs = 0;
  for (std::size_t i = t; i < a.rows(); ++i)
    for (std::size_t j = t; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      Int x = abs(a(i, j));
      if (!best || x < best_abs) {
        best = {i, j};
        best_abs = x;
      }
    }
  return best;
}

}  // namespace detail

/// Smith normal form by elementary row/column operations. Pivots are chosen by
/// minimal absolute value, so the output is deterministic.
inline SnfDecomposition snf(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  IntMatrix d = a;
  IntMatrix left = IntMatrix::identity(m);
  IntMatrix right = IntMatrix::identity(n);

  auto move_to = [&](std::size_t t, std::size_t i, std::size_t j) {
    d.swap_rows(t, i);
    left.swap_rows(t, i);
    d.swap_cols(t, j);
    right.swap_cols(t, j);
  };

  const std::size_t steps = std::min(m, n);
  for (std::size_t t = 0; t < steps; ++t) {
    auto pivot = detail::min_pivot(d, t);
    if (!pivot) break;
    move_to(t, pivot->first, pivot->second);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        Int q = d(i, t) / d(t, t);
        d.add_row(i, t, -q);
        left.add_row(i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        Int q = d(t, j) / d(t, t);
        d.add_col(j, t, -q);
        right.add_col(j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) {
        // a remainder smaller than the pivot survived; promote the smallest
        std::size_t bi = t, bj = t;
        Int best = abs(d(t, t));
        for (std::size_t i = t + 1; i < m; ++i)
          if (d(i, t) != 0 && abs(d(i, t)) < best) {
            best = abs(d(i, t));
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < n; ++j)
          if (d(t, j) != 0 && abs(d(t, j)) < best) {
            best = abs(d(t, j));
            bi = t;
            bj = j;
          }
        move_to(t, bi, bj);
        continue;
      }
      // pivot row and column are clear; enforce the divisibility chain
      std::optional<std::size_t> offender;
      for (std::size_t i = t + 1; i < m && !offender; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (d(i, j) % d(t, t) != 0) {
            offender = i;
            break;
          }
      if (!offender) break;
      d.add_row(t, *offender, Int(1));
      left.add_row(t, *offender, Int(1));
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      left.negate_row(t);
    }
  }

  SnfDecomposition out;
  out.d.resize(steps);
  for (std::size_t i = 0; i < steps; ++i) out.d[i] = d(i, i);
  out.left = std::move(left);
  out.right = std::move(right);
  return out;
}

/// Row-style Hermite normal form of the lattice spanned by the rows of a:
/// echelon rows with positive pivots and entries above each pivot reduced into
/// [0, pivot). Zero rows are dropped, so the result is a basis.
inline IntMatrix hnf_rows(const IntMatrix& a) {
  IntMatrix b = a;
  const std::size_t m = b.rows();
  const std::size_t n = b.cols();
  std::size_t row = 0;
  for (std::size_t c = 0; c < n && row < m; ++c) {
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t i = row; i < m; ++i)
        if (b(i, c) != 0 && (!best || abs(b(i, c)) < abs(b(*best, c)))) best = i;
      if (!best) break;
      b.swap_rows(row, *best);
      bool done = true;
      for (std::size_t i = row + 1; i < m; ++i) {
        if (b(i, c) == 0) continue;
        b.add_row(i, row, -floor_div(b(i, c), b(row, c)));
        if (b(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (b(row, c) == 0) continue;
    if (b(row, c) < 0) b.negate_row(row);
    for (std::size_t i = 0; i < row; ++i) b.add_row(i, row, -floor_div(b(i, c), b(row, c)));
    ++row;
  }
  IntMatrix out(row, n);
  for (std::size_t i = 0; i < row; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = b(i, j);
  return out;
}

/// Basis (as HNF rows) of the integer kernel {x : a x = 0}. The kernel of an
/// integer matrix is always a primitive sublattice of Z^cols.
inline IntMatrix integer_kernel(const IntMatrix& a) {
  const auto s = snf(a);
  const std::size_t r = s.rank();
  const std::size_t n = a.cols();
  IntMatrix basis(n - r, n);
  for (std::size_t k = r; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) basis(k - r, i) = s.right(i, k);
  return hnf_rows(basis);
}

/// Some integer solution of a x = b, if one exists.
inline std::optional<Vector> solve_integer(const IntMatrix& a, const Vector& b) {
  if (b.size() != a.rows()) throw Error("invalid_argument", "right-hand side has the wrong length");
  const auto s = snf(a);
  const Vector lb = s.left * b;
  Vector y(a.cols());
  for (std::size_t i = 0; i < lb.size(); ++i) {
    const Int di = i < s.d.size() ? s.d[i] : Int(0);
    if (di == 0) {
      if (lb[i] != 0) return std::nullopt;
      continue;
    }
    if (lb[i] % di != 0) return std::nullopt;
    y[i] = lb[i] / di;
  }
  return s.right * y;
}

/// Index of the lattice spanned by the rows of a inside Z^cols; 0 when the
/// rows do not have full rank cols.
inline Int lattice_index(const IntMatrix& a) {
  const auto s = snf(a);
  if (s.rank() < a.cols()) return 0;
  Int idx = 1;
  for (const auto& x : s.d) idx *= x;
  return idx;
}

}  // namespace k3lat
