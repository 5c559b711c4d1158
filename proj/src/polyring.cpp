#include "gkm/polyring.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace gkm {

Monomial::Monomial(std::vector<int> exponents) : exponents_(std::move(exponents)) {
  for (int e : exponents_) {
    if (e < 0) throw std::invalid_argument("Monomial: negative exponent");
    degree_ += e;
  }
}

Monomial Monomial::variable(int rank, int index) {
  std::vector<int> e(static_cast<std::size_t>(rank), 0);
  e.at(static_cast<std::size_t>(index)) = 1;
  return Monomial(std::move(e));
}

Monomial Monomial::operator*(const Monomial& other) const {
  if (rank() != other.rank()) throw DimensionError("Monomial: rank mismatch");
  std::vector<int> e = exponents_;
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += other.exponents_[i];
  return Monomial(std::move(e));
}

bool Monomial::divides(const Monomial& other) const {
  if (rank() != other.rank()) throw DimensionError("Monomial: rank mismatch");
  for (std::size_t i = 0; i < exponents_.size(); ++i)
    if (exponents_[i] > other.exponents_[i]) return false;
  return true;
}

std::string Monomial::exponent_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < exponents_.size(); ++i) os << (i ? " " : "") << exponents_[i];
  return os.str();
}

std::string Monomial::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (exponents_[i] == 0) continue;
    os << (first ? "" : "*") << 'x' << (i + 1);
    if (exponents_[i] > 1) os << '^' << exponents_[i];
    first = false;
  }
  return first ? "1" : os.str();
}

std::strong_ordering Monomial::operator<=>(const Monomial& other) const {
  if (auto c = degree_ <=> other.degree_; c != 0) return c;
  // Reversed lexicographic comparison: x1^2 sorts before x1*x2.
  return other.exponents_ <=> exponents_;
}

void add_term(Polynomial& p, const Monomial& m, const Integer& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = p.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) p.erase(it);
  }
}

Polynomial multiply(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) add_term(out, ma * mb, ca * cb);
  return out;
}

Polynomial scale(const Polynomial& p, const Integer& c) {
  Polynomial out;
  if (sgn(c) == 0) return out;
  for (const auto& [m, x] : p) out.emplace(m, x * c);
  return out;
}

int homogeneous_degree(const Polynomial& p) {
  if (p.empty()) return -1;
  const int d = p.begin()->first.degree();
  for (const auto& [m, c] : p)
    if (m.degree() != d) throw std::invalid_argument("polynomial is not homogeneous");
  return d;
}

std::string to_string(const Polynomial& p) {
  if (p.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p) {
    Integer mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << '-';
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    if (m.degree() == 0) {
      os << mag;
    } else {
      if (mag != 1) os << mag << '*';
      os << m.to_string();
    }
    first = false;
  }
  return os.str();
}

SliceBasis::SliceBasis(int rank, int degree, std::vector<Monomial> monomials)
    : rank_(rank), degree_(degree), monomials_(std::move(monomials)) {
  for (std::size_t i = 0; i < monomials_.size(); ++i) index_.emplace(monomials_[i], i);
}

std::size_t SliceBasis::index_of(const Monomial& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) throw std::out_of_range("monomial " + m.to_string() + " not in slice");
  return it->second;
}

std::size_t slice_size(int rank, int degree) {
  if (rank < 1 || degree < 0) return 0;
  // binomial(degree + rank - 1, rank - 1), built incrementally to stay exact
  std::size_t result = 1;
  for (int i = 1; i < rank; ++i) {
    result = result * static_cast<std::size_t>(degree + i) / static_cast<std::size_t>(i);
  }
  return result;
}

namespace {

void enumerate(int rank, int remaining, std::vector<int>& prefix, std::vector<Monomial>& out) {
  if (static_cast<int>(prefix.size()) == rank - 1) {
    prefix.push_back(remaining);
    out.emplace_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    prefix.push_back(e);
    enumerate(rank, remaining - e, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

const SliceBasis& monomial_basis(int rank, int degree) {
  if (rank < 1) throw std::invalid_argument("monomial_basis: rank must be >= 1");
  if (degree < 0) throw std::invalid_argument("monomial_basis: degree must be >= 0");
  static std::mutex mutex;
  static std::map<std::pair<int, int>, SliceBasis> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find({rank, degree});
  if (it != cache.end()) return it->second;
  std::vector<Monomial> monomials;
  std::vector<int> prefix;
  enumerate(rank, degree, prefix, monomials);
  return cache.try_emplace({rank, degree}, rank, degree, std::move(monomials)).first->second;
}

Integer rn_scale(std::int64_t n, int degree) {
  if (n < 1) throw std::invalid_argument("rn_scale: modulus must be >= 1");
  if (degree < 0) throw std::invalid_argument("rn_scale: degree must be >= 0");
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(degree));
  return out;
}

IntMatrix mult_matrix(const Polynomial& g, int rank, int degree) {
  const int k = homogeneous_degree(g);
  if (k < 0) throw std::invalid_argument("mult_matrix: zero polynomial has no degree");
  const SliceBasis& src = monomial_basis(rank, degree);
  const SliceBasis& dst = monomial_basis(rank, degree + k);
  IntMatrix m(dst.size(), src.size());
  for (std::size_t j = 0; j < src.size(); ++j)
    for (const auto& [mu, c] : g) m(dst.index_of(src[j] * mu), j) += c;
  return m;
}

PolyVector::PolyVector(int rank, int degree, std::size_t vertex_count)
    : rank_(rank), degree_(degree), values_(vertex_count) {}

PolyVector::PolyVector(int rank, int degree, std::vector<Polynomial> values)
    : rank_(rank), degree_(degree), values_(std::move(values)) {
  for (auto& p : values_) {
    std::erase_if(p, [](const auto& term) { return sgn(term.second) == 0; });
    for (const auto& [m, c] : p) {
      if (m.rank() != rank_) throw DimensionError("PolyVector: monomial rank mismatch");
      if (m.degree() != degree_) throw std::invalid_argument("PolyVector: inhomogeneous value");
    }
  }
}

bool PolyVector::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const Polynomial& p) { return p.empty(); });
}

void PolyVector::add(std::size_t vertex, const Monomial& m, const Integer& c) {
  if (m.degree() != degree_) throw std::invalid_argument("PolyVector::add: degree mismatch");
  add_term(values_.at(vertex), m, c);
}

PolyVector PolyVector::times(const Monomial& m, const Integer& c) const {
  PolyVector out(rank_, degree_ + m.degree(), values_.size());
  for (std::size_t v = 0; v < values_.size(); ++v)
    for (const auto& [mu, x] : values_[v]) add_term(out.values_[v], mu * m, x * c);
  return out;
}

IntVector pack(const PolyVector& f, const SliceBasis& basis) {
  if (f.degree() != basis.degree()) throw std::invalid_argument("pack: degree mismatch");
  if (f.rank() != basis.rank()) throw DimensionError("pack: rank mismatch");
  IntVector out(f.vertex_count() * basis.size());
  for (std::size_t v = 0; v < f.vertex_count(); ++v)
    for (const auto& [m, c] : f.at(v)) out[v * basis.size() + basis.index_of(m)] = c;
  return out;
}

PolyVector unpack(std::span<const Integer> coords, std::size_t vertex_count, const SliceBasis& basis) {
  if (coords.size() != vertex_count * basis.size()) throw DimensionError("unpack: length mismatch");
  PolyVector out(basis.rank(), basis.degree(), vertex_count);
  for (std::size_t v = 0; v < vertex_count; ++v)
    for (std::size_t i = 0; i < basis.size(); ++i) out.add(v, basis[i], coords[v * basis.size() + i]);
  return out;
}

}  // namespace gkm
