#pragma once

#include <cstdint>
#include <vector>

#include "frobtest/field.hpp"

namespace frobtest {

using FpVector = std::vector<std::uint32_t>;

/// Dense row-major matrix over F_p.
class FpMatrix {
 public:
  FpMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::uint32_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  FpVector column(std::size_t c) const;
  FpVector apply(const PrimeField& F, const FpVector& v) const;
  bool operator==(const FpMatrix&) const = default;

 private:
  std::size_t rows_, cols_;
  FpVector data_;
};

/// Basis of {v : A v = 0}.
std::vector<FpVector> kernel(const PrimeField& F, const FpMatrix& a);
std::size_t rank(const PrimeField& F, const FpMatrix& a);

/// Incrementally maintained echelon basis of a subspace of F_p^n.
class EchelonBasis {
 public:
  EchelonBasis(const PrimeField& F, std::size_t dim) : F_(F), dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return rows_.size(); }

  /// Residue of v modulo the span (zero iff v is in the span).
  FpVector reduce(FpVector v) const;
  bool contains(const FpVector& v) const;
  /// Adds v; returns false if it was already in the span.
  bool insert(FpVector v);

 private:
  const PrimeField& F_;
  std::size_t dim_;
  std::vector<FpVector> rows_;   // each with pivot entry 1
  std::vector<std::size_t> pivots_;
};

bool is_zero(const FpVector& v);

}  // namespace frobtest
