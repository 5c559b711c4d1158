#include "gkm/gkmgraph.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

namespace gkm {

namespace {

std::int64_t abs64(std::int64_t x) { return x < 0 ? -x : x; }

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw ParseError("field '" + field + "': " + what);
}

const nlohmann::json& require(const nlohmann::json& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) field_error(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

}  // namespace

bool Weight::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](std::int64_t x) { return x == 0; });
}

std::int64_t Weight::content() const {
  std::int64_t g = 0;
  for (auto x : entries_) g = std::gcd(g, abs64(x));
  return g;
}

bool Weight::divisible_by(std::int64_t n) const {
  return std::all_of(entries_.begin(), entries_.end(), [n](std::int64_t x) { return x % n == 0; });
}

Weight Weight::negated() const {
  std::vector<std::int64_t> e = entries_;
  for (auto& x : e) x = -x;
  return Weight(std::move(e));
}

Polynomial Weight::as_polynomial() const {
  Polynomial p;
  const int r = static_cast<int>(entries_.size());
  for (int i = 0; i < r; ++i) add_term(p, Monomial::variable(r, i), Integer(static_cast<long>(entries_[static_cast<std::size_t>(i)])));
  return p;
}

bool linearly_dependent(const Weight& a, const Weight& b) {
  if (a.size() != b.size()) return false;
  // All 2x2 minors vanish.
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      Integer lhs = Integer(static_cast<long>(a.entries()[i])) * static_cast<long>(b.entries()[j]);
      Integer rhs = Integer(static_cast<long>(a.entries()[j])) * static_cast<long>(b.entries()[i]);
      if (lhs != rhs) return false;
    }
  return true;
}

GkmGraph::GkmGraph(int rank, std::vector<std::string> vertices, std::vector<Edge> edges)
    : rank_(rank), vertices_(std::move(vertices)), edges_(std::move(edges)) {
  if (rank_ < 1) throw std::invalid_argument("GkmGraph: rank must be >= 1");
  for (const auto& e : edges_)
    if (e.a >= vertices_.size() || e.b >= vertices_.size())
      throw std::invalid_argument("GkmGraph: edge endpoint out of range");
}

GkmGraph GkmGraph::from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("document: expected a JSON object");

  const auto& rank_field = require(doc, "rank", "");
  if (!rank_field.is_number_integer() || rank_field.get<std::int64_t>() < 1)
    field_error("rank", "expected a positive integer");
  const int rank = rank_field.get<int>();

  const auto& vertex_field = require(doc, "vertices", "");
  if (!vertex_field.is_array()) field_error("vertices", "expected an array of strings");
  std::vector<std::string> vertices;
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < vertex_field.size(); ++i) {
    const auto& v = vertex_field[i];
    const std::string path = "vertices[" + std::to_string(i) + "]";
    if (!v.is_string()) field_error(path, "expected a string");
    auto name = v.get<std::string>();
    if (!index.emplace(name, i).second) field_error(path, "duplicate vertex name \"" + name + "\"");
    vertices.push_back(std::move(name));
  }
  if (vertices.empty()) field_error("vertices", "at least one vertex is required");

  const auto& edge_field = require(doc, "edges", "");
  if (!edge_field.is_array()) field_error("edges", "expected an array");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < edge_field.size(); ++i) {
    const std::string path = "edges[" + std::to_string(i) + "]";
    const auto& e = edge_field[i];
    if (!e.is_object()) field_error(path, "expected an object");
    const auto& ends = require(e, "ends", path);
    if (!ends.is_array() || ends.size() != 2) field_error(path + ".ends", "expected two vertex names");
    std::size_t endpoints[2];
    for (std::size_t k = 0; k < 2; ++k) {
      const std::string end_path = path + ".ends[" + std::to_string(k) + "]";
      if (!ends[k].is_string()) field_error(end_path, "expected a string");
      auto it = index.find(ends[k].get<std::string>());
      if (it == index.end()) field_error(end_path, "unknown vertex \"" + ends[k].get<std::string>() + "\"");
      endpoints[k] = it->second;
    }
    const auto& weight = require(e, "weight", path);
    if (!weight.is_array()) field_error(path + ".weight", "expected an array of integers");
    std::vector<std::int64_t> entries;
    for (std::size_t k = 0; k < weight.size(); ++k) {
      if (!weight[k].is_number_integer())
        field_error(path + ".weight[" + std::to_string(k) + "]", "expected an integer");
      entries.push_back(weight[k].get<std::int64_t>());
    }
    edges.push_back({endpoints[0], endpoints[1], Weight(std::move(entries))});
  }
  return GkmGraph(rank, std::move(vertices), std::move(edges));
}

GkmGraph GkmGraph::parse(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // nlohmann reports "at line L, column C" in its message.
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return from_json(doc);
}

GkmGraph GkmGraph::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

nlohmann::json GkmGraph::to_json() const {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : edges_)
    edges.push_back({{"ends", {vertices_[e.a], vertices_[e.b]}}, {"weight", e.weight.entries()}});
  return {{"rank", rank_}, {"vertices", vertices_}, {"edges", edges}};
}

std::size_t GkmGraph::valence(std::size_t vertex) const {
  std::size_t count = 0;
  for (const auto& e : edges_) count += (e.a == vertex) + (e.b == vertex);
  return count;
}

std::size_t GkmGraph::max_valence() const {
  std::size_t best = 0;
  for (std::size_t v = 0; v < vertices_.size(); ++v) best = std::max(best, valence(v));
  return best;
}

bool GkmGraph::adjacent(const Edge& e, const Edge& f) const {
  return e.a == f.a || e.a == f.b || e.b == f.a || e.b == f.b;
}

std::string_view to_string(Severity s) {
  switch (s) {
    case Severity::error: return "error";
    case Severity::warning: return "warning";
    case Severity::info: return "info";
  }
  return "unknown";
}

bool ValidationReport::ok() const {
  return std::none_of(diagnostics.begin(), diagnostics.end(),
                      [](const Diagnostic& d) { return d.severity == Severity::error; });
}

ValidationReport validate(const GkmGraph& g) {
  ValidationReport report;
  const auto& edges = g.edges();
  std::vector<bool> usable(edges.size(), true);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    const std::string label = "edge " + std::to_string(i) + " (" + g.vertices()[e.a] + "-" + g.vertices()[e.b] + ")";
    if (e.weight.size() != static_cast<std::size_t>(g.rank())) {
      report.diagnostics.push_back({Severity::error, "rank-mismatch",
                                    label + ": weight has " + std::to_string(e.weight.size()) +
                                        " entries, rank is " + std::to_string(g.rank())});
      usable[i] = false;
    } else if (e.weight.is_zero()) {
      report.diagnostics.push_back({Severity::error, "zero-weight", label + ": zero weight"});
      usable[i] = false;
    }
    if (e.a == e.b) {
      report.diagnostics.push_back({Severity::error, "self-loop", label + ": self-loop"});
      usable[i] = false;
    }
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      if (!usable[i] || !usable[j] || !g.adjacent(edges[i], edges[j])) continue;
      if (linearly_dependent(edges[i].weight, edges[j].weight)) {
        report.diagnostics.push_back({Severity::warning, "dependent-weights",
                                      "adjacent edges " + std::to_string(i) + " and " + std::to_string(j) +
                                          " have linearly dependent weights"});
      }
      if (std::gcd(edges[i].weight.content(), edges[j].weight.content()) > 1) report.coprime_adjacent = false;
    }
  }
  report.diagnostics.push_back(
      {Severity::info, "coprime-adjacent",
       report.coprime_adjacent ? "all adjacent weights have coprime contents"
                               : "some adjacent weights share a common factor"});
  return report;
}

GkmGraph subgraph_mod_n(const GkmGraph& g, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("subgraph_mod_n: n must be >= 1");
  std::vector<Edge> kept;
  for (const auto& e : g.edges())
    if (e.weight.divisible_by(n)) kept.push_back(e);
  return GkmGraph(g.rank(), g.vertices(), std::move(kept));
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  n = abs64(n);
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::vector<std::int64_t> relevant_primes(const GkmGraph& g, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("relevant_primes: n must be >= 1");
  std::set<std::int64_t> primes;
  const auto& edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::int64_t ci = edges[i].weight.content();
    if (ci == 0 || edges[i].a == edges[i].b) continue;
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const std::int64_t cj = edges[j].weight.content();
      if (cj == 0 || edges[j].a == edges[j].b || !g.adjacent(edges[i], edges[j])) continue;
      const std::int64_t common = std::gcd(ci, cj);
      if (common % n != 0) continue;
      for (auto p : prime_factors(common / n)) primes.insert(p);
    }
  }
  return {primes.begin(), primes.end()};
}

std::vector<DivisorNode> divisor_tree(const GkmGraph& g) {
  std::set<std::int64_t> seen{1};
  std::vector<std::int64_t> frontier{1};
  std::vector<DivisorNode> nodes;
  while (!frontier.empty()) {
    std::vector<std::int64_t> next;
    for (auto n : frontier) {
      auto primes = relevant_primes(g, n);
      for (auto p : primes)
        if (seen.insert(n * p).second) next.push_back(n * p);
      nodes.push_back({n, std::move(primes)});
    }
    frontier = std::move(next);
  }
  std::sort(nodes.begin(), nodes.end(), [](const DivisorNode& a, const DivisorNode& b) { return a.n < b.n; });
  return nodes;
}

}  // namespace gkm
