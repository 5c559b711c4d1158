#pragma once

// Labelled multigraphs (Gamma, alpha): vertices are torus-fixed points, edges
// carry integer weight vectors defined up to sign.

#include "gkm/polyring.hpp"

#include "json.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gkm {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Weight {
 public:
  Weight() = default;
  explicit Weight(std::vector<std::int64_t> entries) : entries_(std::move(entries)) {}

  std::size_t size() const { return entries_.size(); }
  const std::vector<std::int64_t>& entries() const { return entries_; }
  bool is_zero() const;
  /// gcd of the entries; 0 for the zero vector.
  std::int64_t content() const;
  bool divisible_by(std::int64_t n) const;
  Weight negated() const;
  /// The linear form sum w_i x_i.
  Polynomial as_polynomial() const;

  bool operator==(const Weight& other) const = default;

 private:
  std::vector<std::int64_t> entries_;
};

/// True iff a and b are proportional over Q (either being zero counts).
bool linearly_dependent(const Weight& a, const Weight& b);

struct Edge {
  std::size_t a;
  std::size_t b;
  Weight weight;
};

class GkmGraph {
 public:
  GkmGraph(int rank, std::vector<std::string> vertices, std::vector<Edge> edges);

  /// Reads { "rank", "vertices", "edges": [ { "ends", "weight" } ] }.
  static GkmGraph from_json(const nlohmann::json& doc);
  static GkmGraph parse(std::string_view text);
  static GkmGraph load(const std::filesystem::path& path);
  nlohmann::json to_json() const;

  int rank() const { return rank_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }

  std::size_t valence(std::size_t vertex) const;
  std::size_t max_valence() const;
  bool adjacent(const Edge& e, const Edge& f) const;

 private:
  int rank_;
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
};

enum class Severity { error, warning, info };

struct Diagnostic {
  Severity severity;
  std::string code;
  std::string message;
};

std::string_view to_string(Severity s);

struct ValidationReport {
  std::vector<Diagnostic> diagnostics;
  // Every pair of adjacent edges has coprime weight contents.
  bool coprime_adjacent = true;

  bool ok() const;
};

ValidationReport validate(const GkmGraph& g);

/// Same vertices; only the edges whose weight is divisible by n.
GkmGraph subgraph_mod_n(const GkmGraph& g, std::int64_t n);

/// Primes p such that n*p divides the weights of two distinct adjacent edges.
std::vector<std::int64_t> relevant_primes(const GkmGraph& g, std::int64_t n);

struct DivisorNode {
  std::int64_t n;
  std::vector<std::int64_t> relevant_primes;

  bool operator==(const DivisorNode& other) const = default;
};

/// Closure of {1} under n -> n*p for relevant primes p, sorted by n.
std::vector<DivisorNode> divisor_tree(const GkmGraph& g);

std::vector<std::int64_t> prime_factors(std::int64_t n);

}  // namespace gkm
