#include "gkm/intlinalg.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <utility>

namespace gkm {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    std::ostringstream msg;
    msg << what << ": dimension mismatch (" << a << " vs " << b << ")";
    throw DimensionError(msg.str());
  }
}

int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

// Row-echelonizes `a` with unimodular row operations, pivoting only inside
// the first `pivot_limit` columns. Returns the pivot columns; every row past
// the last pivot row is zero on those columns.
std::vector<std::size_t> echelonize(IntMatrix& a, std::size_t pivot_limit) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  Integer q;
  for (std::size_t c = 0; c < pivot_limit && r < a.rows(); ++c) {
    while (true) {
      std::size_t best = kNone;
      for (std::size_t i = r; i < a.rows(); ++i) {
        if (sgn(a(i, c)) != 0 && (best == kNone || cmpabs(a(i, c), a(best, c)) < 0)) best = i;
      }
      if (best == kNone) break;
      a.swap_rows(r, best);
      bool clean = true;
      for (std::size_t i = r + 1; i < a.rows(); ++i) {
        if (sgn(a(i, c)) == 0) continue;
        q = a(i, c) / a(r, c);
        a.submul_row(i, r, q);
        if (sgn(a(i, c)) != 0) clean = false;
      }
      if (clean) break;
    }
    if (sgn(a(r, c)) == 0) continue;
    if (sgn(a(r, c)) < 0) a.negate_row(r);
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// col(dst) -= factor * col(src)
void submul_col(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& factor) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    mpz_submul(m(i, dst).get_mpz_t(), factor.get_mpz_t(), m(i, src).get_mpz_t());
  }
}

struct SmithWork {
  IntMatrix diagonal;
  IntMatrix left;
  IntMatrix right;
  IntMatrix right_inverse;
  std::size_t rank = 0;
};

SmithWork smith_decompose(const IntMatrix& m) {
  SmithWork w{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols()),
              IntMatrix::identity(m.cols()), 0};
  IntMatrix& d = w.diagonal;
  const std::size_t limit = std::min(m.rows(), m.cols());
  Integer q;
  Integer neg_q;

  auto move_to_pivot = [&](std::size_t t, std::size_t i, std::size_t j) {
    d.swap_rows(t, i);
    w.left.swap_rows(t, i);
    swap_cols(d, t, j);
    swap_cols(w.right, t, j);
    w.right_inverse.swap_rows(t, j);
  };

  std::size_t t = 0;
  for (; t < limit; ++t) {
    std::size_t pi = kNone;
    std::size_t pj = kNone;
    for (std::size_t i = t; i < d.rows(); ++i) {
      for (std::size_t j = t; j < d.cols(); ++j) {
        if (sgn(d(i, j)) != 0 && (pi == kNone || cmpabs(d(i, j), d(pi, pj)) < 0)) {
          pi = i;
          pj = j;
        }
      }
    }
    if (pi == kNone) break;
    move_to_pivot(t, pi, pj);

    while (true) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < d.rows(); ++i) {
        if (sgn(d(i, t)) == 0) continue;
        q = d(i, t) / d(t, t);
        d.submul_row(i, t, q);
        w.left.submul_row(i, t, q);
        if (sgn(d(i, t)) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < d.cols(); ++j) {
        if (sgn(d(t, j)) == 0) continue;
        q = d(t, j) / d(t, t);
        submul_col(d, j, t, q);
        submul_col(w.right, j, t, q);
        neg_q = -q;
        w.right_inverse.submul_row(t, j, neg_q);
        if (sgn(d(t, j)) != 0) dirty = true;
      }
      if (dirty) {
        std::size_t bi = t;
        std::size_t bj = t;
        for (std::size_t i = t + 1; i < d.rows(); ++i) {
          if (sgn(d(i, t)) != 0 && cmpabs(d(i, t), d(bi, bj)) < 0) {
            bi = i;
            bj = t;
          }
        }
        for (std::size_t j = t + 1; j < d.cols(); ++j) {
          if (sgn(d(t, j)) != 0 && cmpabs(d(t, j), d(bi, bj)) < 0) {
            bi = t;
            bj = j;
          }
        }
        move_to_pivot(t, bi, bj);
        continue;
      }
      // Row and column t are clear; enforce divisibility of the remainder.
      std::size_t bad = kNone;
      for (std::size_t i = t + 1; i < d.rows() && bad == kNone; ++i) {
        for (std::size_t j = t + 1; j < d.cols(); ++j) {
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
        }
      }
      if (bad == kNone) break;
      const Integer minus_one = -1;
      d.submul_row(t, bad, minus_one);
      w.left.submul_row(t, bad, minus_one);
    }
    if (sgn(d(t, t)) < 0) {
      d.negate_row(t);
      w.left.negate_row(t);
    }
  }
  w.rank = t;
  return w;
}

std::vector<std::size_t> leading_columns(const IntMatrix& basis) {
  std::vector<std::size_t> pivots;
  pivots.reserve(basis.rows());
  for (std::size_t i = 0; i < basis.rows(); ++i) {
    std::size_t c = 0;
    while (c < basis.cols() && sgn(basis(i, c)) == 0) ++c;
    pivots.push_back(c);
  }
  return pivots;
}

}  // namespace

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

IntVector IntMatrix::row_vector(std::size_t i) const {
  auto r = row(i);
  return {r.begin(), r.end()};
}

void IntMatrix::append_row(std::span<const Integer> values) {
  require_same_dim(values.size(), cols_, "IntMatrix::append_row");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  auto ra = row(a);
  auto rb = row(b);
  for (std::size_t j = 0; j < cols_; ++j) std::swap(ra[j], rb[j]);
}

void IntMatrix::submul_row(std::size_t dst, std::size_t src, const Integer& factor) {
  if (sgn(factor) == 0) return;
  auto d = row(dst);
  auto s = row(src);
  for (std::size_t j = 0; j < cols_; ++j) {
    if (sgn(s[j]) == 0) continue;
    mpz_submul(d[j].get_mpz_t(), factor.get_mpz_t(), s[j].get_mpz_t());
  }
}

void IntMatrix::negate_row(std::size_t i) {
  for (auto& x : row(i)) x = -x;
}

void IntMatrix::truncate_rows(std::size_t n) {
  if (n >= rows_) return;
  rows_ = n;
  data_.resize(rows_ * cols_);
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntVector IntMatrix::apply(std::span<const Integer> v) const {
  require_same_dim(v.size(), cols_, "IntMatrix::apply");
  IntVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (sgn(v[j]) != 0) mpz_addmul(out[i].get_mpz_t(), (*this)(i, j).get_mpz_t(), v[j].get_mpz_t());
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  require_same_dim(a.cols(), b.rows(), "matrix product");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        mpz_addmul(c(i, j).get_mpz_t(), a(i, k).get_mpz_t(), b(k, j).get_mpz_t());
    }
  return c;
}

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
  require_same_dim(a.rows(), b.rows(), "hstack");
  IntMatrix c(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
  }
  return c;
}

IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
  require_same_dim(a.cols(), b.cols(), "vstack");
  IntMatrix c = a;
  for (std::size_t i = 0; i < b.rows(); ++i) c.append_row(b.row(i));
  return c;
}

IntMatrix hnf(const IntMatrix& m) {
  IntMatrix a = m;
  const auto pivots = echelonize(a, a.cols());
  a.truncate_rows(pivots.size());
  Integer q;
  for (std::size_t k = 0; k < pivots.size(); ++k) {
    const std::size_t c = pivots[k];
    for (std::size_t i = 0; i < k; ++i) {
      mpz_fdiv_q(q.get_mpz_t(), a(i, c).get_mpz_t(), a(k, c).get_mpz_t());
      a.submul_row(i, k, q);
    }
  }
  return a;
}

SmithForm snf(const IntMatrix& m) {
  SmithWork w = smith_decompose(m);
  SmithForm out;
  for (std::size_t t = 0; t < w.rank; ++t) out.invariant_factors.push_back(w.diagonal(t, t));
  out.left = std::move(w.left);
  out.right = std::move(w.right);
  return out;
}

Lattice Lattice::from_generators(const IntMatrix& generators) {
  Lattice l;
  l.ambient_dim_ = generators.cols();
  l.basis_ = hnf(generators);
  l.pivots_ = leading_columns(l.basis_);
  return l;
}

Lattice Lattice::from_generators(const std::vector<IntVector>& generators, std::size_t ambient_dim) {
  return from_generators(IntMatrix::from_rows(generators, ambient_dim));
}

Lattice Lattice::full(std::size_t ambient_dim, const Integer& scale) {
  if (sgn(scale) == 0) return Lattice(ambient_dim);
  IntMatrix m = IntMatrix::identity(ambient_dim);
  const Integer s = abs(scale);
  for (std::size_t i = 0; i < ambient_dim; ++i) m(i, i) = s;
  Lattice l;
  l.ambient_dim_ = ambient_dim;
  l.basis_ = std::move(m);
  l.pivots_ = leading_columns(l.basis_);
  return l;
}

Lattice kernel(const IntMatrix& m) {
  const std::size_t a = m.rows();
  const std::size_t b = m.cols();
  IntMatrix aug = hstack(m.transpose(), IntMatrix::identity(b));
  const auto pivots = echelonize(aug, a);
  IntMatrix gens(0, b);
  for (std::size_t i = pivots.size(); i < b; ++i) gens.append_row(aug.row(i).subspan(a));
  return Lattice::from_generators(gens);
}

Lattice intersect(const Lattice& a, const Lattice& b) {
  require_same_dim(a.ambient_dim(), b.ambient_dim(), "intersect");
  if (a.rank() == 0 || b.rank() == 0) return Lattice(a.ambient_dim());
  IntMatrix neg_b = b.basis();
  for (std::size_t i = 0; i < neg_b.rows(); ++i) neg_b.negate_row(i);
  const Lattice relations = kernel(hstack(a.basis().transpose(), neg_b.transpose()));
  const std::size_t k = a.rank();
  IntMatrix coeffs(relations.rank(), k);
  for (std::size_t i = 0; i < relations.rank(); ++i)
    for (std::size_t j = 0; j < k; ++j) coeffs(i, j) = relations.basis()(i, j);
  return Lattice::from_generators(coeffs * a.basis());
}

Lattice preimage(const IntMatrix& map, const Lattice& sub) {
  require_same_dim(map.rows(), sub.ambient_dim(), "preimage");
  if (sub.rank() == 0) return kernel(map);
  IntMatrix neg_s = sub.basis().transpose();
  for (std::size_t i = 0; i < neg_s.rows(); ++i) neg_s.negate_row(i);
  const Lattice relations = kernel(hstack(map, neg_s));
  IntMatrix gens(relations.rank(), map.cols());
  for (std::size_t i = 0; i < relations.rank(); ++i)
    for (std::size_t j = 0; j < map.cols(); ++j) gens(i, j) = relations.basis()(i, j);
  return Lattice::from_generators(gens);
}

IntVector coordinates(const Lattice& l, std::span<const Integer> v) {
  require_same_dim(l.ambient_dim(), v.size(), "coordinates");
  IntVector w(v.begin(), v.end());
  IntVector coords(l.rank());
  const auto& basis = l.basis();
  for (std::size_t k = 0; k < l.rank(); ++k) {
    const std::size_t c = l.pivot_columns()[k];
    if (!mpz_divisible_p(w[c].get_mpz_t(), basis(k, c).get_mpz_t()))
      throw ContainmentError("vector is not in the lattice");
    mpz_divexact(coords[k].get_mpz_t(), w[c].get_mpz_t(), basis(k, c).get_mpz_t());
    for (std::size_t j = c; j < w.size(); ++j)
      mpz_submul(w[j].get_mpz_t(), coords[k].get_mpz_t(), basis(k, j).get_mpz_t());
  }
  for (const auto& x : w)
    if (sgn(x) != 0) throw ContainmentError("vector is not in the lattice");
  return coords;
}

bool member(const Lattice& l, std::span<const Integer> v) {
  require_same_dim(l.ambient_dim(), v.size(), "member");
  try {
    coordinates(l, v);
    return true;
  } catch (const ContainmentError&) {
    return false;
  }
}

bool contains(const Lattice& sup, const Lattice& sub) {
  require_same_dim(sup.ambient_dim(), sub.ambient_dim(), "contains");
  for (std::size_t i = 0; i < sub.rank(); ++i)
    if (!member(sup, sub.basis().row(i))) return false;
  return true;
}

IntVector reduce(const Lattice& l, std::span<const Integer> v) {
  require_same_dim(l.ambient_dim(), v.size(), "reduce");
  IntVector w(v.begin(), v.end());
  Integer q;
  const auto& basis = l.basis();
  for (std::size_t k = 0; k < l.rank(); ++k) {
    const std::size_t c = l.pivot_columns()[k];
    mpz_fdiv_q(q.get_mpz_t(), w[c].get_mpz_t(), basis(k, c).get_mpz_t());
    if (sgn(q) == 0) continue;
    for (std::size_t j = c; j < w.size(); ++j)
      mpz_submul(w[j].get_mpz_t(), q.get_mpz_t(), basis(k, j).get_mpz_t());
  }
  return w;
}

QuotientPresentation quotient_with_lifts(const Lattice& sub, const Lattice& sup) {
  require_same_dim(sub.ambient_dim(), sup.ambient_dim(), "quotient_with_lifts");
  const std::size_t k = sup.rank();
  IntMatrix coords(0, k);
  for (std::size_t i = 0; i < sub.rank(); ++i) {
    try {
      coords.append_row(coordinates(sup, sub.basis().row(i)));
    } catch (const ContainmentError&) {
      throw ContainmentError("quotient_with_lifts: sub is not contained in sup");
    }
  }
  QuotientPresentation out;
  if (k == 0) return out;

  const SmithWork w = smith_decompose(coords);
  std::vector<IntVector> torsion_lifts;
  std::vector<Integer> torsion_factors;
  IntMatrix free_lifts(0, sup.ambient_dim());
  for (std::size_t i = 0; i < k; ++i) {
    const Integer factor = i < w.rank ? Integer(w.diagonal(i, i)) : Integer(0);
    if (factor == 1) continue;
    IntMatrix selector(1, k);
    for (std::size_t j = 0; j < k; ++j) selector(0, j) = w.right_inverse(i, j);
    const IntMatrix lift = selector * sup.basis();
    if (sgn(factor) == 0) {
      free_lifts.append_row(lift.row(0));
    } else {
      torsion_lifts.push_back(lift.row_vector(0));
      torsion_factors.push_back(factor);
    }
  }

  // The free lifts may be replaced by any basis of their span.
  const IntMatrix free_basis = hnf(free_lifts);

  auto canonical = [&sub](std::span<const Integer> v) {
    IntVector r = reduce(sub, v);
    const auto lead = std::find_if(r.begin(), r.end(), [](const Integer& x) { return sgn(x) != 0; });
    if (lead != r.end() && sgn(*lead) < 0) {
      for (auto& x : r) x = -x;
      r = reduce(sub, r);
    }
    return r;
  };

  for (std::size_t i = 0; i < torsion_lifts.size(); ++i) {
    out.lifts.push_back(canonical(torsion_lifts[i]));
    out.invariant_factors.push_back(torsion_factors[i]);
  }
  for (std::size_t i = 0; i < free_basis.rows(); ++i) {
    out.lifts.push_back(canonical(free_basis.row(i)));
    out.invariant_factors.push_back(0);
  }
  return out;
}

Integer lattice_index(const Lattice& sub, const Lattice& sup) {
  const auto q = quotient_with_lifts(sub, sup);
  Integer index = 1;
  for (const auto& f : q.invariant_factors) {
    if (sgn(f) == 0) return 0;
    index *= f;
  }
  return index;
}

}  // namespace gkm
