#pragma once

// Homogeneous pieces of Z[x_1, ..., x_r] and vectors of polynomials indexed
// by graph vertices. Degrees here are polynomial degrees; cohomological
// degree is twice that and only appears at the user-facing boundary.
//
// The subring Z[n x_1, ..., n x_r] never gets its own variables: its degree-d
// piece is n^d times the monomial lattice in ambient coordinates.

#include "gkm/intlinalg.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace gkm {

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<int> exponents);
  static Monomial one(int rank) { return Monomial(std::vector<int>(static_cast<std::size_t>(rank), 0)); }
  static Monomial variable(int rank, int index);

  int rank() const { return static_cast<int>(exponents_.size()); }
  int degree() const { return degree_; }
  const std::vector<int>& exponents() const { return exponents_; }

  Monomial operator*(const Monomial& other) const;
  bool divides(const Monomial& other) const;

  // "1 1 1" for x1*x2*x3
  std::string exponent_string() const;
  // "x1^2*x3", "1" for the unit
  std::string to_string() const;

  // Ordered so that larger exponent tuples (lexicographically) come first,
  // which gives the graded-lex order inside a fixed degree.
  std::strong_ordering operator<=>(const Monomial& other) const;
  bool operator==(const Monomial& other) const = default;

 private:
  std::vector<int> exponents_;
  int degree_ = 0;
};

/// Sparse polynomial; zero coefficients are never stored.
using Polynomial = std::map<Monomial, Integer>;

void add_term(Polynomial& p, const Monomial& m, const Integer& c);
Polynomial multiply(const Polynomial& a, const Polynomial& b);
Polynomial scale(const Polynomial& p, const Integer& c);
/// Degree of a nonzero homogeneous polynomial; -1 for zero, throws if inhomogeneous.
int homogeneous_degree(const Polynomial& p);
std::string to_string(const Polynomial& p);

class SliceBasis {
 public:
  SliceBasis(int rank, int degree, std::vector<Monomial> monomials);

  int rank() const { return rank_; }
  int degree() const { return degree_; }
  std::size_t size() const { return monomials_.size(); }
  const Monomial& operator[](std::size_t i) const { return monomials_[i]; }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  // Throws std::out_of_range if m is not a monomial of this slice.
  std::size_t index_of(const Monomial& m) const;

 private:
  int rank_;
  int degree_;
  std::vector<Monomial> monomials_;
  std::map<Monomial, std::size_t> index_;
};

/// binomial(d + r - 1, r - 1)
std::size_t slice_size(int rank, int degree);

/// All degree-d monomials in r variables, x1^d first.
const SliceBasis& monomial_basis(int rank, int degree);

/// n^d: the degree-d piece of Z[n x_1, ..., n x_r] is n^d * (monomial lattice).
Integer rn_scale(std::int64_t n, int degree);

/// Matrix of multiplication by g from degree-d coordinates to degree-(d+k)
/// coordinates, k = deg g.
IntMatrix mult_matrix(const Polynomial& g, int rank, int degree);

class PolyVector {
 public:
  PolyVector(int rank, int degree, std::size_t vertex_count);
  PolyVector(int rank, int degree, std::vector<Polynomial> values);

  int rank() const { return rank_; }
  int degree() const { return degree_; }
  std::size_t vertex_count() const { return values_.size(); }
  const Polynomial& at(std::size_t vertex) const { return values_.at(vertex); }
  const std::vector<Polynomial>& values() const { return values_; }
  bool is_zero() const;

  void add(std::size_t vertex, const Monomial& m, const Integer& c);
  PolyVector times(const Monomial& m, const Integer& c) const;

  bool operator==(const PolyVector& other) const = default;

 private:
  int rank_;
  int degree_;
  std::vector<Polynomial> values_;
};

/// Coordinates in Z^{|V| * |basis|}, vertex-major.
IntVector pack(const PolyVector& f, const SliceBasis& basis);
PolyVector unpack(std::span<const Integer> coords, std::size_t vertex_count, const SliceBasis& basis);

}  // namespace gkm
