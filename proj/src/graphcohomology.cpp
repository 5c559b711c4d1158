#include "gkm/graphcohomology.hpp"

#include <algorithm>
#include <string>

namespace gkm {

namespace {

// Exact rank over Q; destroys its argument.
std::size_t rational_rank(std::vector<std::vector<mpq_class>>& rows, std::size_t cols) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && sgn(rows[pivot][c]) == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const mpq_class inv = 1 / rows[rank][c];
    for (std::size_t j = c; j < cols; ++j) rows[rank][j] *= inv;
    for (std::size_t i = rank + 1; i < rows.size(); ++i) {
      if (sgn(rows[i][c]) == 0) continue;
      const mpq_class f = rows[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (sgn(rows[rank][j]) != 0) rows[i][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

bool GradedSubmodule::all_free() const {
  return std::all_of(freeness.begin(), freeness.end(), [](bool b) { return b; });
}

std::size_t slice_dimension(int rank, std::size_t vertex_count, int degree) {
  return vertex_count * slice_size(rank, degree);
}

Lattice cohomology_slice(const GkmGraph& g, std::int64_t n, int degree) {
  if (degree < 0) throw std::invalid_argument("cohomology_slice: negative degree");
  const GkmGraph sub = subgraph_mod_n(g, n);
  const int r = g.rank();
  const std::size_t b = slice_size(r, degree);
  const std::size_t dim = g.vertex_count() * b;

  Lattice current = Lattice::full(dim, rn_scale(n, degree));
  for (const auto& e : sub.edges()) {
    Lattice allowed(b);
    if (degree > 0) {
      IntMatrix ideal = mult_matrix(e.weight.as_polynomial(), r, degree - 1).transpose();
      const Integer s = rn_scale(n, degree - 1);
      for (std::size_t i = 0; i < ideal.rows(); ++i)
        for (auto& x : ideal.row(i)) x *= s;
      allowed = Lattice::from_generators(ideal);
    }
    // Difference map f -> f_a - f_b, restricted to the current lattice.
    const IntMatrix& basis = current.basis();
    IntMatrix diff(b, basis.rows());
    for (std::size_t i = 0; i < b; ++i)
      for (std::size_t j = 0; j < basis.rows(); ++j)
        diff(i, j) = basis(j, e.a * b + i) - basis(j, e.b * b + i);
    const Lattice coords = preimage(diff, allowed);
    current = Lattice::from_generators(coords.basis() * basis);
  }
  return current;
}

Lattice span_slice(const GradedSubmodule& m, std::int64_t target_modulus, int degree) {
  if (target_modulus < 1 || m.ring_modulus % target_modulus != 0)
    throw std::invalid_argument("span_slice: target modulus " + std::to_string(target_modulus) +
                                " does not divide ring modulus " + std::to_string(m.ring_modulus));
  const SliceBasis& basis = monomial_basis(m.graph_rank, degree);
  const std::size_t dim = m.vertex_count * basis.size();
  IntMatrix rows(0, dim);
  for (const auto& gen : m.generators) {
    if (gen.degree > degree) continue;
    const int gap = degree - gen.degree;
    const Integer s = rn_scale(target_modulus, gap);
    for (const auto& mu : monomial_basis(m.graph_rank, gap).monomials())
      rows.append_row(pack(gen.value.times(mu, s), basis));
  }
  return Lattice::from_generators(rows);
}

GradedSubmodule extract_generators(std::vector<Lattice> slices, std::int64_t n, const GkmGraph& g) {
  GradedSubmodule m;
  m.graph_rank = g.rank();
  m.vertex_count = g.vertex_count();
  m.ring_modulus = n;
  for (int d = 0; d < static_cast<int>(slices.size()); ++d) {
    const Lattice& target = slices[static_cast<std::size_t>(d)];
    if (target.ambient_dim() != slice_dimension(m.graph_rank, m.vertex_count, d))
      throw DimensionError("extract_generators: slice " + std::to_string(d) + " has wrong ambient dimension");
    const SliceBasis& basis = monomial_basis(m.graph_rank, d);
    const Lattice spanned = span_slice(m, n, d);
    QuotientPresentation q;
    try {
      q = quotient_with_lifts(spanned, target);
    } catch (const ContainmentError&) {
      throw InternalInconsistency("extract_generators: span of lower generators leaves slice " +
                                  std::to_string(d));
    }
    bool free = true;
    for (std::size_t i = 0; i < q.lifts.size(); ++i) {
      m.generators.push_back({unpack(q.lifts[i], m.vertex_count, basis), d});
      if (sgn(q.invariant_factors[i]) != 0) free = false;
    }
    m.freeness.push_back(free);
    m.quotient_factors.push_back(std::move(q.invariant_factors));
    m.max_degree_computed = d;
    if (!(span_slice(m, n, d) == target))
      throw InternalInconsistency("extract_generators: generators do not reproduce slice " + std::to_string(d));
  }
  m.slices = std::move(slices);
  return m;
}

std::size_t hilbert_rank(const GradedSubmodule& m, int degree) {
  std::size_t total = 0;
  for (const auto& gen : m.generators)
    if (gen.degree <= degree) total += slice_size(m.graph_rank, degree - gen.degree);
  return total;
}

std::size_t rational_dimension(const GkmGraph& g, std::int64_t n, int degree) {
  if (degree < 0) throw std::invalid_argument("rational_dimension: negative degree");
  const GkmGraph sub = subgraph_mod_n(g, n);
  const int r = g.rank();
  const std::size_t b = slice_size(r, degree);
  const std::size_t b_prev = degree > 0 ? slice_size(r, degree - 1) : 0;
  const std::size_t f_vars = g.vertex_count() * b;
  const std::size_t cols = f_vars + sub.edges().size() * b_prev;

  // Unknowns: the values f (vertex-major) and one quotient q_e per edge with
  // f_a - f_b = alpha(e) q_e. Multiplication by a nonzero alpha is injective,
  // so the nullity equals the dimension of the projection onto f.
  std::vector<std::vector<mpq_class>> rows;
  for (std::size_t k = 0; k < sub.edges().size(); ++k) {
    const auto& e = sub.edges()[k];
    IntMatrix mult;
    if (degree > 0) mult = mult_matrix(e.weight.as_polynomial(), r, degree - 1);
    for (std::size_t i = 0; i < b; ++i) {
      std::vector<mpq_class> row(cols);
      row[e.a * b + i] += 1;
      row[e.b * b + i] -= 1;
      for (std::size_t j = 0; j < b_prev; ++j) row[f_vars + k * b_prev + j] = -mpq_class(mult(i, j));
      rows.push_back(std::move(row));
    }
  }
  return cols - rational_rank(rows, cols);
}

}  // namespace gkm
