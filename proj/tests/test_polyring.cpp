#include "gkm/polyring.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <random>

using namespace gkm;

namespace {

Monomial mono(std::vector<int> e) { return Monomial(std::move(e)); }

Polynomial random_poly(std::mt19937& rng, int rank, int degree) {
  Polynomial p;
  std::uniform_int_distribution<int> coef(-5, 5);
  for (const auto& m : monomial_basis(rank, degree).monomials())
    if (rng() % 2) add_term(p, m, coef(rng));
  if (p.empty()) add_term(p, monomial_basis(rank, degree)[0], 1);
  return p;
}

}  // namespace

TEST_CASE("monomial_basis examples") {
  CHECK(monomial_basis(1, 3).monomials() == std::vector<Monomial>{mono({3})});
  CHECK(monomial_basis(3, 1).monomials() == std::vector<Monomial>{mono({1, 0, 0}), mono({0, 1, 0}), mono({0, 0, 1})});
  CHECK(monomial_basis(2, 2).monomials() == std::vector<Monomial>{mono({2, 0}), mono({1, 1}), mono({0, 2})});
  CHECK(monomial_basis(3, 3).index_of(mono({1, 1, 1})) == 4);
}

TEST_CASE("basis size matches the closed form") {
  for (int r = 1; r <= 4; ++r)
    for (int d = 0; d <= 6; ++d) {
      Integer binom;
      mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(d + r - 1), static_cast<unsigned long>(r - 1));
      CHECK(monomial_basis(r, d).size() == binom.get_ui());
      CHECK(slice_size(r, d) == binom.get_ui());
    }
}

TEST_CASE("monomial strings") {
  CHECK(mono({1, 1, 1}).exponent_string() == "1 1 1");
  CHECK(mono({2, 0, 1}).to_string() == "x1^2*x3");
  CHECK(Monomial::one(2).to_string() == "1");
  Polynomial p;
  add_term(p, mono({1, 1}), 1);
  add_term(p, mono({0, 2}), -1);
  CHECK(to_string(p) == "x1*x2 - x2^2");
  CHECK(homogeneous_degree(p) == 2);
  CHECK(homogeneous_degree(Polynomial{}) == -1);
}

TEST_CASE("rn_scale examples and multiplicativity") {
  CHECK(rn_scale(1, 5) == 1);
  CHECK(rn_scale(2, 3) == 8);
  CHECK(rn_scale(4, 2) == 16);
  for (std::int64_t n : {1, 2, 3, 6})
    for (int a = 0; a <= 4; ++a)
      for (int b = 0; b <= 4; ++b) CHECK(rn_scale(n, a) * rn_scale(n, b) == rn_scale(n, a + b));
}

TEST_CASE("mult_matrix examples") {
  Polynomial one;
  add_term(one, Monomial::one(2), 1);
  CHECK(mult_matrix(one, 2, 3) == IntMatrix::identity(4));

  Polynomial six_x3;
  add_term(six_x3, mono({0, 0, 1}), 6);
  const IntMatrix col = mult_matrix(six_x3, 3, 0);
  REQUIRE(col.rows() == 3);
  REQUIRE(col.cols() == 1);
  CHECK(col(0, 0) == 0);
  CHECK(col(1, 0) == 0);
  CHECK(col(2, 0) == 6);

  Polynomial four_x1;
  add_term(four_x1, mono({1, 0}), 4);
  const IntMatrix m = mult_matrix(four_x1, 2, 1);
  IntMatrix want(3, 2);
  want(0, 0) = 4;  // x1 -> x1^2
  want(1, 1) = 4;  // x2 -> x1 x2
  CHECK(m == want);
}

TEST_CASE("property: mult_matrix is functorial") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    const int r = 1 + static_cast<int>(rng() % 3);
    const int kg = static_cast<int>(rng() % 3);
    const int kh = static_cast<int>(rng() % 3);
    const int d = static_cast<int>(rng() % 3);
    const Polynomial g = random_poly(rng, r, kg);
    const Polynomial h = random_poly(rng, r, kh);
    REQUIRE(mult_matrix(multiply(g, h), r, d) == mult_matrix(g, r, d + kh) * mult_matrix(h, r, d));
  }
}

TEST_CASE("pack examples") {
  PolyVector diag(3, 0, 2);
  diag.add(0, Monomial::one(3), 1);
  diag.add(1, Monomial::one(3), 1);
  CHECK(pack(diag, monomial_basis(3, 0)) == IntVector{1, 1});

  PolyVector alpha(3, 3, 2);
  alpha.add(1, mono({1, 1, 1}), 12);
  const IntVector v = pack(alpha, monomial_basis(3, 3));
  REQUIRE(v.size() == 20);
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == (i == 10 + 4 ? 12 : 0));
}

TEST_CASE("property: unpack inverts pack") {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const int r = 1 + static_cast<int>(rng() % 3);
    const int d = static_cast<int>(rng() % 4);
    const std::size_t vertices = 1 + rng() % 4;
    std::vector<Polynomial> values;
    for (std::size_t i = 0; i < vertices; ++i) values.push_back(rng() % 3 ? random_poly(rng, r, d) : Polynomial{});
    const PolyVector f(r, d, values);
    const SliceBasis& basis = monomial_basis(r, d);
    const IntVector packed = pack(f, basis);
    REQUIRE(packed.size() == vertices * basis.size());
    REQUIRE(unpack(packed, vertices, basis) == f);
    // Linearity: pack(2f) = 2 pack(f).
    IntVector doubled = pack(f.times(Monomial::one(r), 2), monomial_basis(r, d));
    for (std::size_t i = 0; i < packed.size(); ++i) REQUIRE(doubled[i] == 2 * packed[i]);
  }
}
