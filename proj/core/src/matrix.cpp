#include "facetforest/matrix.hpp"

#include <algorithm>

namespace facetforest {

IntMat multiply(const IntMat& x, const IntMat& y) {
  if (x.cols != y.rows) throw DomainError("matrix shape mismatch");
  IntMat out(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      std::int64_t v = x.at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < y.cols; ++j) {
        std::int64_t prod, sum;
        if (__builtin_mul_overflow(v, y.at(k, j), &prod) ||
            __builtin_add_overflow(out.at(i, j), prod, &sum))
          throw DomainError("integer matrix product overflow");
        out.at(i, j) = sum;
      }
    }
  return out;
}

bool is_zero(const IntMat& m) {
  return std::all_of(m.a.begin(), m.a.end(), [](std::int64_t v) { return v == 0; });
}

namespace {

struct Overflow {};

// Fraction-free Bareiss; every intermediate entry is a minor of the input.
// Throws Overflow instead of wrapping.
int bareiss_rank_i64(IntMat m) {
  int rank = 0;
  std::int64_t prev = 1;
  for (int col = 0; col < m.cols && rank < m.rows; ++col) {
    int pr = -1;
    for (int i = rank; i < m.rows; ++i)
      if (m.at(i, col) != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != rank)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(pr, j), m.at(rank, j));
    std::int64_t pivot = m.at(rank, col);
    for (int i = rank + 1; i < m.rows; ++i) {
      std::int64_t mic = m.at(i, col);
      for (int j = col; j < m.cols; ++j) {
        __int128 num = static_cast<__int128>(pivot) * m.at(i, j) -
                       static_cast<__int128>(mic) * m.at(rank, j);
        __int128 val = num / prev;  // exact by Bareiss
        if (val > INT64_MAX || val < INT64_MIN) throw Overflow{};
        m.at(i, j) = static_cast<std::int64_t>(val);
      }
      m.at(i, col) = 0;
    }
    prev = pivot;
    ++rank;
  }
  return rank;
}

int bareiss_rank_big(const IntMat& in) {
  std::vector<BigInt> m(in.a.begin(), in.a.end());
  auto at = [&](int i, int j) -> BigInt& {
    return m[static_cast<std::size_t>(i) * static_cast<std::size_t>(in.cols) + static_cast<std::size_t>(j)];
  };
  int rank = 0;
  BigInt prev = 1;
  for (int col = 0; col < in.cols && rank < in.rows; ++col) {
    int pr = -1;
    for (int i = rank; i < in.rows; ++i)
      if (at(i, col) != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != rank)
      for (int j = 0; j < in.cols; ++j) std::swap(at(pr, j), at(rank, j));
    BigInt pivot = at(rank, col);
    for (int i = rank + 1; i < in.rows; ++i) {
      BigInt mic = at(i, col);
      for (int j = col; j < in.cols; ++j) at(i, j) = (pivot * at(i, j) - mic * at(rank, j)) / prev;
      at(i, col) = 0;
    }
    prev = pivot;
    ++rank;
  }
  return rank;
}

}  // namespace

int rank_over_Q(const IntMat& m) {
  try {
    return bareiss_rank_i64(m);
  } catch (const Overflow&) {
    return bareiss_rank_big(m);
  }
}

int rank_mod_p(const IntMat& m, std::int64_t p) {
  PrimeField f(p);
  auto fm = Mat<PrimeField>::from_int(f, m);
  return rank(f, std::move(fm));
}

int rank_over(const IntMat& m, const FieldSpec& field) {
  return field.kind == FieldSpec::Kind::rational ? rank_over_Q(m) : rank_mod_p(m, field.p);
}

}  // namespace facetforest
