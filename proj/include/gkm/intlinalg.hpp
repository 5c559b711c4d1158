#pragma once

// Exact integer matrices and lattices in Z^N.
//
// Every lattice is stored by its canonical row Hermite normal form, so two
// Lattice values compare equal exactly when they span the same subgroup.

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gkm {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ContainmentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);

  static IntMatrix identity(std::size_t n);
  // `cols` is needed to give a shape to an empty row list.
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Integer> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Integer> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  IntVector row_vector(std::size_t i) const;

  void append_row(std::span<const Integer> values);
  void swap_rows(std::size_t a, std::size_t b);
  // row(dst) -= factor * row(src)
  void submul_row(std::size_t dst, std::size_t src, const Integer& factor);
  void negate_row(std::size_t i);
  // Keeps the first `n` rows.
  void truncate_rows(std::size_t n);

  IntMatrix transpose() const;
  IntVector apply(std::span<const Integer> v) const;

  bool operator==(const IntMatrix& other) const = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
// Horizontal concatenation [a | b]; row counts must agree.
IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
// Vertical concatenation; column counts must agree.
IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);

/// Canonical row Hermite normal form: zero rows dropped, pivots positive,
/// entries above each pivot reduced into [0, pivot).
IntMatrix hnf(const IntMatrix& m);

struct SmithForm {
  // Nonzero diagonal entries d_1 | d_2 | ... ; length equals the rank.
  std::vector<Integer> invariant_factors;
  IntMatrix left;   // unimodular, rows x rows
  IntMatrix right;  // unimodular, cols x cols
};

/// left * m * right is diagonal with the invariant factors on the diagonal.
SmithForm snf(const IntMatrix& m);

class Lattice {
 public:
  Lattice() = default;
  // The zero lattice in Z^ambient_dim.
  explicit Lattice(std::size_t ambient_dim) : ambient_dim_(ambient_dim), basis_(0, ambient_dim) {}

  static Lattice from_generators(const IntMatrix& generators);
  static Lattice from_generators(const std::vector<IntVector>& generators, std::size_t ambient_dim);
  // scale * Z^ambient_dim
  static Lattice full(std::size_t ambient_dim, const Integer& scale = 1);

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t rank() const { return basis_.rows(); }
  const IntMatrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivot_columns() const { return pivots_; }

  bool operator==(const Lattice& other) const {
    return ambient_dim_ == other.ambient_dim_ && basis_ == other.basis_;
  }

 private:
  std::size_t ambient_dim_ = 0;
  IntMatrix basis_;
  std::vector<std::size_t> pivots_;
};

/// Saturated lattice { v : m v = 0 }.
Lattice kernel(const IntMatrix& m);

Lattice intersect(const Lattice& a, const Lattice& b);

/// { v in Z^M : map v in sub }, with map of shape (sub.ambient_dim) x M.
Lattice preimage(const IntMatrix& map, const Lattice& sub);

bool member(const Lattice& l, std::span<const Integer> v);

/// True iff every basis vector of `sub` lies in `sup`.
bool contains(const Lattice& sup, const Lattice& sub);

/// Coordinates of v with respect to the basis of l, or throws ContainmentError.
IntVector coordinates(const Lattice& l, std::span<const Integer> v);

/// Canonical representative of the coset v + l.
IntVector reduce(const Lattice& l, std::span<const Integer> v);

struct QuotientPresentation {
  std::vector<IntVector> lifts;
  // 0 marks a free summand; factors equal to 1 are never reported.
  std::vector<Integer> invariant_factors;
};

/// Generators of sup/sub together with its cyclic decomposition. Torsion
/// summands come first in ascending order, then the free part.
QuotientPresentation quotient_with_lifts(const Lattice& sub, const Lattice& sup);

/// Product of the invariant factors of sup/sub; 0 if the quotient is infinite.
Integer lattice_index(const Lattice& sub, const Lattice& sup);

}  // namespace gkm
