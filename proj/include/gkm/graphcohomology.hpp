#pragma once

// Degreewise graph cohomology of Gamma_n over Z[n x_1, ..., n x_r] and
// minimal graded generators of submodules of R^V presented by their slices.

#include "gkm/gkmgraph.hpp"
#include "gkm/intlinalg.hpp"
#include "gkm/polyring.hpp"

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace gkm {

/// Raised when an internal consistency check fails (a bug, not bad input).
class InternalInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Generator {
  PolyVector value;
  int degree;  // polynomial degree
};

struct GradedSubmodule {
  int graph_rank = 1;
  std::size_t vertex_count = 0;
  std::int64_t ring_modulus = 1;
  std::vector<Generator> generators;
  // Per degree: the new-generator quotient has no torsion.
  std::vector<bool> freeness;
  // Per degree: invariant factors of slice / (span of lower generators).
  std::vector<std::vector<Integer>> quotient_factors;
  std::vector<Lattice> slices;
  int max_degree_computed = -1;

  bool all_free() const;
};

/// Ambient dimension |V| * |monomials of degree d| of a degree-d slice.
std::size_t slice_dimension(int rank, std::size_t vertex_count, int degree);

/// Degree-d slice of the graph cohomology of Gamma_n with R_n coefficients,
/// as a lattice in vertex-major monomial coordinates.
Lattice cohomology_slice(const GkmGraph& g, std::int64_t n, int degree);

/// Z-span of n^(d - d_j) x^mu g_j over generators g_j of degree d_j <= d.
Lattice span_slice(const GradedSubmodule& m, std::int64_t target_modulus, int degree);

/// Minimal homogeneous generators of the module whose slices are given
/// (slices[d] for d = 0..D), over R_n.
GradedSubmodule extract_generators(std::vector<Lattice> slices, std::int64_t n, const GkmGraph& g);

/// Slice rank at degree d of a free module on m's generators.
std::size_t hilbert_rank(const GradedSubmodule& m, int degree);

/// Dimension over Q of the degree-d slice of the rational graph cohomology of
/// Gamma_n, by rational Gaussian elimination.
std::size_t rational_dimension(const GkmGraph& g, std::int64_t n, int degree);

}  // namespace gkm
