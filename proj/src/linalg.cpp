#include "frobtest/linalg.hpp"

#include <algorithm>

namespace frobtest {

bool is_zero(const FpVector& v) {
  return std::all_of(v.begin(), v.end(), [](std::uint32_t x) { return x == 0; });
}

FpVector FpMatrix::column(std::size_t c) const {
  FpVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

FpVector FpMatrix::apply(const PrimeField& F, const FpVector& v) const {
  FpVector out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      acc += static_cast<std::uint64_t>((*this)(r, c)) * v[c];
      if (acc >= (std::uint64_t{1} << 62)) acc %= F.characteristic();
    }
    out[r] = F.reduce(acc);
  }
  return out;
}

namespace {

// In-place RREF; returns pivot columns.
std::vector<std::size_t> rref(const PrimeField& F, FpMatrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t sel = row;
    while (sel < a.rows() && a(sel, col) == 0) ++sel;
    if (sel == a.rows()) continue;
    if (sel != row)
      for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(sel, c), a(row, c));
    auto inv = F.inv(a(row, col));
    for (std::size_t c = col; c < a.cols(); ++c) a(row, c) = F.mul(a(row, c), inv);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col) == 0) continue;
      auto f = a(r, col);
      for (std::size_t c = col; c < a.cols(); ++c)
        if (a(row, c) != 0) a(r, c) = F.sub(a(r, c), F.mul(f, a(row, c)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::vector<FpVector> kernel(const PrimeField& F, const FpMatrix& a) {
  FpMatrix m = a;
  auto pivots = rref(F, m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<FpVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    FpVector v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = F.neg(m(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t rank(const PrimeField& F, const FpMatrix& a) {
  FpMatrix m = a;
  return rref(F, m).size();
}

FpVector EchelonBasis::reduce(FpVector v) const {
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    auto c = v[pivots_[k]];
    if (c == 0) continue;
    const auto& row = rows_[k];
    for (std::size_t i = 0; i < dim_; ++i)
      if (row[i] != 0) v[i] = F_.sub(v[i], F_.mul(c, row[i]));
  }
  return v;
}

bool EchelonBasis::contains(const FpVector& v) const { return is_zero(reduce(v)); }

bool EchelonBasis::insert(FpVector v) {
  v = reduce(std::move(v));
  std::size_t piv = 0;
  while (piv < dim_ && v[piv] == 0) ++piv;
  if (piv == dim_) return false;
  auto inv = F_.inv(v[piv]);
  for (auto& x : v) x = F_.mul(x, inv);
  // Keep earlier rows reduced against the new pivot so reduce() stays one pass.
  for (auto& row : rows_) {
    auto c = row[piv];
    if (c == 0) continue;
    for (std::size_t i = 0; i < dim_; ++i)
      if (v[i] != 0) row[i] = F_.sub(row[i], F_.mul(c, v[i]));
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(piv);
  return true;
}

}  // namespace frobtest
