#include "gkm/graphcohomology.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <random>

using namespace gkm;
using gkm::testing::load_fixture;

namespace {

std::vector<Lattice> slices_of(const GkmGraph& g, std::int64_t n, int max_degree) {
  std::vector<Lattice> out;
  for (int d = 0; d <= max_degree; ++d) out.push_back(cohomology_slice(g, n, d));
  return out;
}

PolyVector two_vertex(int rank, int degree, const Polynomial& first, const Polynomial& second) {
  return PolyVector(rank, degree, std::vector<Polynomial>{first, second});
}

Polynomial term(std::vector<int> e, long c) {
  Polynomial p;
  add_term(p, Monomial(std::move(e)), c);
  return p;
}

IntVector packed(const PolyVector& f) { return pack(f, monomial_basis(f.rank(), f.degree())); }

GkmGraph two_vertex_graph(int rank, const std::vector<Weight>& weights) {
  std::vector<Edge> edges;
  for (const auto& w : weights) edges.push_back({0, 1, w});
  return GkmGraph(rank, {"a", "b"}, edges);
}

GkmGraph random_graph(std::mt19937& rng, int rank, std::size_t vertices, std::size_t edge_count, int bound) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < vertices; ++i) names.push_back("v" + std::to_string(i));
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < edge_count; ++i) {
    const std::size_t a = rng() % vertices;
    const std::size_t b = (a + 1 + rng() % (vertices - 1)) % vertices;
    edges.push_back({a, b, testing::random_weight(rng, rank, bound)});
  }
  return GkmGraph(rank, names, edges);
}

}  // namespace

TEST_CASE("cohomology_slice examples") {
  const GkmGraph s2 = load_fixture("s2.json");
  CHECK(cohomology_slice(s2, 1, 0) == Lattice::from_generators({IntVector{1, 1}}, 2));

  const GkmGraph ex = load_fixture("s6-pullback-p2q3.json");
  const Lattice top = cohomology_slice(ex, 1, 3);
  CHECK(member(top, packed(two_vertex(3, 3, {}, term({1, 1, 1}, 12)))));
  CHECK_FALSE(member(top, packed(two_vertex(3, 3, {}, term({1, 1, 1}, 6)))));
  CHECK_FALSE(member(top, packed(two_vertex(3, 3, {}, term({2, 1, 0}, 12)))));

  // Over R_4 at degree 2: the 16-scaled diagonal plus (0, 16 x1 x2).
  std::vector<IntVector> rows;
  for (const auto& m : monomial_basis(3, 2).monomials())
    rows.push_back(packed(two_vertex(3, 2, term(m.exponents(), 16), term(m.exponents(), 16))));
  rows.push_back(packed(two_vertex(3, 2, {}, term({1, 1, 0}, 16))));
  CHECK(cohomology_slice(ex, 4, 2) == Lattice::from_generators(rows, 12));

  const GkmGraph edgeless = load_fixture("edgeless.json");
  CHECK(cohomology_slice(edgeless, 3, 2) == Lattice::full(9, rn_scale(3, 2)));
}

TEST_CASE("span_slice examples") {
  const GkmGraph s2 = load_fixture("s2.json");
  const GradedSubmodule diag = extract_generators(slices_of(s2, 1, 0), 1, s2);
  CHECK(span_slice(diag, 1, 1) == Lattice::from_generators({IntVector{1, 1}}, 2));

  const GkmGraph ex = load_fixture("s6-pullback-p2q3.json");
  const GradedSubmodule over4 = extract_generators(slices_of(ex, 4, 3), 4, ex);
  const Lattice extended = span_slice(over4, 2, 3);
  CHECK(member(extended, packed(two_vertex(3, 3, {}, term({1, 1, 1}, 32)))));
  CHECK_FALSE(member(extended, packed(two_vertex(3, 3, {}, term({1, 1, 1}, 16)))));
  CHECK(member(extended, packed(two_vertex(3, 3, term({1, 1, 1}, 8), term({1, 1, 1}, 8)))));

  GradedSubmodule high = over4;
  high.generators.erase(high.generators.begin());
  CHECK(span_slice(high, 4, 1).rank() == 0);
  CHECK(span_slice(GradedSubmodule{3, 2, 4, {}, {}, {}, {}, 3}, 2, 2).rank() == 0);
  CHECK_THROWS_AS(span_slice(over4, 3, 1), std::invalid_argument);
}

TEST_CASE("extract_generators examples") {
  const GkmGraph ex = load_fixture("s6-pullback-p2q3.json");
  const GradedSubmodule h = extract_generators(slices_of(ex, 1, 4), 1, ex);
  REQUIRE(h.generators.size() == 2);
  CHECK(h.generators[0].degree == 0);
  CHECK(h.generators[0].value == two_vertex(3, 0, term({0, 0, 0}, 1), term({0, 0, 0}, 1)));
  CHECK(h.generators[1].degree == 3);
  CHECK(h.generators[1].value == two_vertex(3, 3, {}, term({1, 1, 1}, 12)));
  CHECK(h.all_free());

  const GradedSubmodule h4 = extract_generators(slices_of(ex, 4, 4), 4, ex);
  REQUIRE(h4.generators.size() == 2);
  CHECK(h4.generators[1].degree == 2);
  CHECK(h4.generators[1].value == two_vertex(3, 2, {}, term({1, 1, 0}, 16)));

  const GradedSubmodule h2 = extract_generators(slices_of(ex, 2, 4), 2, ex);
  REQUIRE(h2.generators.size() == 2);
  CHECK(h2.generators[1].value == two_vertex(3, 3, {}, term({1, 1, 1}, 48)));
}

TEST_CASE("hilbert_rank examples") {
  const GkmGraph s2 = load_fixture("s2.json");
  const GradedSubmodule m = extract_generators(slices_of(s2, 1, 3), 1, s2);
  CHECK(hilbert_rank(m, 3) == 2);

  const GkmGraph ex = load_fixture("s6-pullback-p2q3.json");
  const GradedSubmodule h = extract_generators(slices_of(ex, 1, 3), 1, ex);
  CHECK(hilbert_rank(h, 3) == 11);
  CHECK(hilbert_rank(GradedSubmodule{}, 4) == 0);
}

TEST_CASE("rational_dimension examples") {
  CHECK(rational_dimension(load_fixture("s2.json"), 1, 1) == 2);
  CHECK(rational_dimension(load_fixture("s6-pullback-p2q3.json"), 1, 3) == 11);
  for (int d = 0; d <= 4; ++d) CHECK(rational_dimension(load_fixture("edgeless.json"), 1, d) == 3 * slice_size(2, d));
}

TEST_CASE("property: integral and rational ranks agree on every fixture and tree node") {
  for (const auto& name : testing::all_fixtures()) {
    const GkmGraph g = load_fixture(name);
    for (const auto& node : divisor_tree(g))
      for (int d = 0; d <= 5; ++d) {
        INFO(name << " n=" << node.n << " d=" << d);
        CHECK(cohomology_slice(g, node.n, d).rank() == rational_dimension(g, node.n, d));
      }
  }
}

TEST_CASE("property: extraction reproduces every slice") {
  for (const auto& name : testing::all_fixtures()) {
    const GkmGraph g = load_fixture(name);
    for (const auto& node : divisor_tree(g)) {
      const auto slices = slices_of(g, node.n, 4);
      const GradedSubmodule m = extract_generators(slices, node.n, g);
      for (int d = 0; d <= 4; ++d) {
        INFO(name << " n=" << node.n << " d=" << d);
        CHECK(span_slice(m, node.n, d) == slices[static_cast<std::size_t>(d)]);
      }
      if (m.all_free())
        for (int d = 0; d <= 4; ++d) CHECK(hilbert_rank(m, d) == slices[static_cast<std::size_t>(d)].rank());
    }
  }
}

TEST_CASE("oracle: two-vertex graphs over R match the lcm of the weights") {
  std::mt19937 rng(2718);
  for (int trial = 0; trial < 40; ++trial) {
    const int r = 1 + static_cast<int>(rng() % 3);
    std::vector<Weight> weights;
    const std::size_t count = rng() % 4;
    for (std::size_t i = 0; i < count; ++i) {
      // Repeat a direction now and then so that contents interact.
      if (i > 0 && rng() % 3 == 0) {
        std::vector<std::int64_t> w = weights.back().entries();
        const std::int64_t k = 1 + static_cast<std::int64_t>(rng() % 4);
        for (auto& x : w) x *= (rng() % 2 ? k : -k);
        weights.emplace_back(w);
      } else {
        weights.push_back(testing::random_weight(rng, r, 6));
      }
    }
    const GkmGraph g = two_vertex_graph(r, weights);
    for (int d = 0; d <= 4; ++d) {
      INFO("trial " << trial << " d=" << d);
      const auto rows = testing::two_vertex_slice_generators(weights, r, d);
      REQUIRE(cohomology_slice(g, 1, d) == Lattice::from_generators(rows, 2 * slice_size(r, d)));
    }
  }
}

TEST_CASE("oracle: two-vertex graphs with monomial weights over R_n") {
  std::mt19937 rng(31415);
  for (int trial = 0; trial < 40; ++trial) {
    const int r = 1 + static_cast<int>(rng() % 3);
    std::vector<Weight> weights;
    const std::size_t count = 1 + rng() % 3;
    for (std::size_t i = 0; i < count; ++i) {
      std::vector<std::int64_t> w(static_cast<std::size_t>(r), 0);
      w[rng() % static_cast<std::size_t>(r)] = static_cast<std::int64_t>(1 + rng() % 12) * (rng() % 2 ? 1 : -1);
      weights.emplace_back(w);
    }
    const GkmGraph g = two_vertex_graph(r, weights);
    for (std::int64_t n : {1, 2, 3, 4}) {
      std::vector<Weight> kept;
      for (const auto& w : weights)
        if (w.divisible_by(n)) kept.push_back(w);
      for (int d = 0; d <= 4; ++d) {
        const SliceBasis& basis = monomial_basis(r, d);
        const std::size_t b = basis.size();
        const Integer scale = [&] {
          Integer s;
          mpz_ui_pow_ui(s.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(d));
          return s;
        }();
        std::vector<IntVector> rows;
        for (std::size_t i = 0; i < b; ++i) {
          IntVector diag(2 * b);
          diag[i] = scale;
          diag[b + i] = scale;
          rows.push_back(diag);
          const Integer step = kept.empty() ? scale : testing::monomial_weight_lcm(kept, n, basis[i]);
          if (sgn(step) == 0) continue;
          IntVector diff(2 * b);
          diff[b + i] = step;
          rows.push_back(diff);
        }
        INFO("trial " << trial << " n=" << n << " d=" << d);
        REQUIRE(cohomology_slice(g, n, d) == Lattice::from_generators(rows, 2 * b));
      }
    }
  }
}

TEST_CASE("property: adding an edge never enlarges a slice") {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    const int r = 1 + static_cast<int>(rng() % 3);
    const GkmGraph g = random_graph(rng, r, 3, 1 + rng() % 3, 6);
    std::vector<Edge> more = g.edges();
    const std::size_t a = rng() % 3;
    more.push_back({a, (a + 1) % 3, testing::random_weight(rng, r, 6)});
    const GkmGraph h(r, g.vertices(), more);
    for (std::int64_t n : {1, 2})
      for (int d = 0; d <= 3; ++d) {
        const Lattice big = cohomology_slice(g, n, d);
        const Lattice small = cohomology_slice(h, n, d);
        for (std::size_t i = 0; i < small.rank(); ++i) REQUIRE(member(big, small.basis().row(i)));
      }
  }
}

TEST_CASE("property: sign and unimodular changes preserve ranks and invariant factors") {
  std::mt19937 rng(4242);
  std::vector<GkmGraph> graphs;
  for (const auto& name : testing::all_fixtures()) graphs.push_back(load_fixture(name));
  for (int i = 0; i < 8; ++i) {
    const int r = 2 + static_cast<int>(rng() % 2);
    graphs.push_back(random_graph(rng, r, 3, 3, 6));
  }
  for (const auto& g : graphs) {
    const auto u = testing::random_unimodular(rng, g.rank());
    std::vector<Edge> flipped;
    for (const auto& e : g.edges()) flipped.push_back({e.a, e.b, e.weight.negated()});
    const GkmGraph variants[] = {testing::transform_weights(g, u), GkmGraph(g.rank(), g.vertices(), flipped)};
    for (std::int64_t n : {1, 2}) {
      const GradedSubmodule base = extract_generators(slices_of(g, n, 3), n, g);
      for (const auto& v : variants) {
        const GradedSubmodule other = extract_generators(slices_of(v, n, 3), n, v);
        for (int d = 0; d <= 3; ++d) {
          const auto k = static_cast<std::size_t>(d);
          REQUIRE(other.slices[k].rank() == base.slices[k].rank());
          REQUIRE(other.quotient_factors[k] == base.quotient_factors[k]);
        }
      }
    }
  }
}

TEST_CASE("single edge gives (1,1) and (0, alpha)") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int r = 1 + static_cast<int>(rng() % 3);
    const Weight w = testing::random_weight(rng, r, 9);
    const GkmGraph g = two_vertex_graph(r, {w});
    const GradedSubmodule m = extract_generators(slices_of(g, 1, 2), 1, g);
    REQUIRE(m.generators.size() == 2);
    CHECK(m.generators[0].value == two_vertex(r, 0, term(std::vector<int>(r, 0), 1), term(std::vector<int>(r, 0), 1)));
    const PolyVector alpha = two_vertex(r, 1, {}, w.as_polynomial());
    CHECK(m.generators[1].degree == 1);
    CHECK((m.generators[1].value == alpha || m.generators[1].value == alpha.times(Monomial::one(r), -1)));
  }
}
