#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "facetforest/field.hpp"

namespace facetforest {

/// Dense integer matrix; the entries of every boundary map and Koszul slice
/// are small integers, so this is the interchange type for exact rank work.
struct IntMat {
  int rows = 0;
  int cols = 0;
  std::vector<std::int64_t> a;

  IntMat() = default;
  IntMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), 0) {}

  std::int64_t& at(int i, int j) { return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(j)]; }
  std::int64_t at(int i, int j) const { return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(j)]; }
};

/// Multiplies two IntMats (exact; throws on int64 overflow, which our small
/// sign matrices never reach).
IntMat multiply(const IntMat& x, const IntMat& y);
bool is_zero(const IntMat& m);

/// Exact rank over Q by fraction-free Bareiss elimination in int64 with
/// overflow detection, falling back to big-integer Bareiss when the minors
/// grow too large.
int rank_over_Q(const IntMat& m);

/// Rank over F_p by modular Gaussian elimination.
int rank_mod_p(const IntMat& m, std::int64_t p);

/// Rank against a FieldSpec.
int rank_over(const IntMat& m, const FieldSpec& field);

/// Dense matrix over a field object F (RationalField or PrimeField).
template <class F>
struct Mat {
  using Elem = typename F::Elem;
  int rows = 0;
  int cols = 0;
  std::vector<Elem> a;

  Mat() = default;
  Mat(const F& f, int r, int c)
      : rows(r), cols(c), a(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), f.zero()) {}

  Elem& at(int i, int j) { return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(j)]; }
  const Elem& at(int i, int j) const { return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(j)]; }

  static Mat from_int(const F& f, const IntMat& m) {
    Mat out(f, m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < m.cols; ++j) out.at(i, j) = f.from_int(m.at(i, j));
    return out;
  }

  Mat columns(const F& f, const std::vector<int>& which) const {
    Mat out(f, rows, static_cast<int>(which.size()));
    for (int j = 0; j < out.cols; ++j)
      for (int i = 0; i < rows; ++i) out.at(i, j) = at(i, which[static_cast<std::size_t>(j)]);
    return out;
  }

  /// Horizontal concatenation [this | other].
  Mat hcat(const F& f, const Mat& other) const {
    Mat out(f, rows, cols + other.cols);
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) out.at(i, j) = at(i, j);
      for (int j = 0; j < other.cols; ++j) out.at(i, cols + j) = other.at(i, j);
    }
    return out;
  }
};

namespace linalg_detail {

/// Row-reduces m in place (full row echelon, unit pivots, eliminating above
/// and below); returns the pivot column of each pivot row.
template <class F>
std::vector<int> row_reduce(const F& f, Mat<F>& m) {
  std::vector<int> pivot_cols;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int pr = -1;
    for (int i = row; i < m.rows; ++i)
      if (!f.is_zero(m.at(i, col))) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != row)
      for (int j = col; j < m.cols; ++j) std::swap(m.at(pr, j), m.at(row, j));
    auto inv = f.div(f.one(), m.at(row, col));
    for (int j = col; j < m.cols; ++j) m.at(row, j) = f.mul(m.at(row, j), inv);
    for (int i = 0; i < m.rows; ++i) {
      if (i == row || f.is_zero(m.at(i, col))) continue;
      auto factor = m.at(i, col);
      for (int j = col; j < m.cols; ++j)
        m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(row, j)));
    }
    pivot_cols.push_back(col);
    ++row;
  }
  return pivot_cols;
}

}  // namespace linalg_detail

template <class F>
int rank(const F& f, Mat<F> m) {
  return static_cast<int>(linalg_detail::row_reduce(f, m).size());
}

/// Columns spanning the kernel of m (one column per free variable).
template <class F>
Mat<F> kernel_basis(const F& f, const Mat<F>& m) {
  Mat<F> r = m;
  auto pivots = linalg_detail::row_reduce(f, r);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols), false);
  for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  int free_count = m.cols - static_cast<int>(pivots.size());
  Mat<F> out(f, m.cols, free_count);
  int k = 0;
  for (int fc = 0; fc < m.cols; ++fc) {
    if (is_pivot[static_cast<std::size_t>(fc)]) continue;
    out.at(fc, k) = f.one();
    for (std::size_t pi = 0; pi < pivots.size(); ++pi)
      out.at(pivots[pi], k) = f.neg(r.at(static_cast<int>(pi), fc));
    ++k;
  }
  return out;
}

/// Indices of a maximal set of columns, scanned left to right, that are
/// linearly independent given the columns of `given` (pass a 0-column matrix
/// for none).
template <class F>
std::vector<int> independent_columns(const F& f, const Mat<F>& given, const Mat<F>& candidates) {
  Mat<F> work = given.hcat(f, candidates);
  auto pivots = linalg_detail::row_reduce(f, work);
  std::vector<int> out;
  for (int c : pivots)
    if (c >= given.cols) out.push_back(c - given.cols);
  return out;
}

/// Solves A x = b exactly; nullopt when inconsistent. When the system is
/// underdetermined the free variables are set to zero.
template <class F>
std::optional<std::vector<typename F::Elem>> solve(const F& f, const Mat<F>& a,
                                                   const std::vector<typename F::Elem>& b) {
  Mat<F> aug(f, a.rows, a.cols + 1);
  for (int i = 0; i < a.rows; ++i) {
    for (int j = 0; j < a.cols; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols) = b[static_cast<std::size_t>(i)];
  }
  auto pivots = linalg_detail::row_reduce(f, aug);
  if (!pivots.empty() && pivots.back() == a.cols) return std::nullopt;  // 0 = 1 row
  std::vector<typename F::Elem> x(static_cast<std::size_t>(a.cols), f.zero());
  for (std::size_t pi = 0; pi < pivots.size(); ++pi)
    x[static_cast<std::size_t>(pivots[pi])] = aug.at(static_cast<int>(pi), a.cols);
  return x;
}

}  // namespace facetforest
