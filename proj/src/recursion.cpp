#include "gkm/recursion.hpp"

#include <chrono>
#include <string>
#include <utility>

namespace gkm {

namespace {

// Evaluates fn(0..count-1), concurrently when requested.
template <typename T, typename Fn>
std::vector<T> map_indices(std::size_t count, bool parallel, Fn fn) {
  std::vector<T> out;
  out.reserve(count);
  if (!parallel || count < 2) {
    for (std::size_t i = 0; i < count; ++i) out.push_back(fn(i));
    return out;
  }
  std::vector<std::future<T>> pending;
  pending.reserve(count);
  for (std::size_t i = 0; i < count; ++i) pending.push_back(std::async(std::launch::async, fn, i));
  for (auto& f : pending) out.push_back(f.get());
  return out;
}

std::string join(const std::vector<std::int64_t>& xs) {
  std::string s;
  for (auto x : xs) s += (s.empty() ? "" : ", ") + std::to_string(x);
  return s;
}

}  // namespace

ValidationFailed::ValidationFailed(ValidationReport report)
    : std::runtime_error("graph failed validation"), report_(std::move(report)) {}

std::shared_ptr<const NodeResult> HhatMemo::get_or_compute(std::int64_t n,
                                                           const std::function<NodeResult()>& compute) {
  if (!enabled_) {
    auto result = std::make_shared<const NodeResult>(compute());
    std::lock_guard lock(mutex_);
    latest_[n] = result;
    return result;
  }
  std::promise<std::shared_ptr<const NodeResult>> promise;
  {
    std::unique_lock lock(mutex_);
    auto it = table_.find(n);
    if (it != table_.end()) {
      auto pending = it->second;
      lock.unlock();
      return pending.get();
    }
    table_.emplace(n, promise.get_future().share());
  }
  try {
    auto result = std::make_shared<const NodeResult>(compute());
    promise.set_value(result);
    return result;
  } catch (...) {
    promise.set_exception(std::current_exception());
    throw;
  }
}

std::map<std::int64_t, std::shared_ptr<const NodeResult>> HhatMemo::entries() const {
  std::lock_guard lock(mutex_);
  if (!enabled_) return latest_;
  std::map<std::int64_t, std::shared_ptr<const NodeResult>> out;
  for (const auto& [n, f] : table_) out.emplace(n, f.get());
  return out;
}

GradedSubmodule graph_cohomology(const GkmGraph& g, std::int64_t n, int max_degree, bool parallel) {
  auto slices = map_indices<Lattice>(static_cast<std::size_t>(max_degree + 1), parallel, [&](std::size_t d) {
    return cohomology_slice(g, n, static_cast<int>(d));
  });
  return extract_generators(std::move(slices), n, g);
}

std::shared_ptr<const NodeResult> compute_node(const GkmGraph& g, std::int64_t n, int max_degree, HhatMemo& memo) {
  return memo.get_or_compute(n, [&g, n, max_degree, &memo]() {
    const auto start = std::chrono::steady_clock::now();
    NodeResult node;
    node.n = n;
    node.relevant_primes = relevant_primes(g, n);
    const auto degrees = static_cast<std::size_t>(max_degree + 1);
    const bool parallel = memo.parallel();

    node.cohomology = graph_cohomology(g, n, max_degree, parallel);

    if (node.relevant_primes.empty()) {
      node.hhat = node.cohomology;
    } else {
      const auto children = map_indices<std::shared_ptr<const NodeResult>>(
          node.relevant_primes.size(), parallel,
          [&](std::size_t i) { return compute_node(g, n * node.relevant_primes[i], max_degree, memo); });
      auto modified = map_indices<Lattice>(degrees, parallel, [&](std::size_t d) {
        Lattice slice = node.cohomology.slices[d];
        for (const auto& child : children)
          slice = intersect(slice, span_slice(child->hhat, n, static_cast<int>(d)));
        return slice;
      });
      node.hhat = extract_generators(std::move(modified), n, g);
    }
    node.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return node;
  });
}

GradedSubmodule hhat(const GkmGraph& g, std::int64_t n, int max_degree, HhatMemo& memo) {
  return compute_node(g, n, max_degree, memo)->hhat;
}

int default_max_degree(const GkmGraph& g) { return static_cast<int>(g.max_valence()); }

bool hilbert_certificate(const GradedSubmodule& m) {
  if (m.max_degree_computed < 0) return true;
  const int top = m.max_degree_computed;
  return m.slices[static_cast<std::size_t>(top)].rank() == hilbert_rank(m, top);
}

HhatResult run_pipeline(const GkmGraph& g, const PipelineOptions& options) {
  ValidationReport report = validate(g);
  if (!report.ok()) throw ValidationFailed(std::move(report));
  if (options.root < 1) throw std::invalid_argument("run_pipeline: root modulus must be >= 1");

  HhatResult result;
  result.max_degree = options.max_degree >= 0 ? options.max_degree : default_max_degree(g);
  result.root_modulus = options.root;
  for (const auto& d : report.diagnostics)
    if (d.severity == Severity::warning) result.diagnostics.push_back(d);

  HhatMemo memo(options.parallel, options.memoize);
  compute_node(g, options.root, result.max_degree, memo);
  result.nodes = memo.entries();
  for (const auto& [n, node] : result.nodes) result.tree.push_back({n, node->relevant_primes});

  for (const auto& [n, node] : result.nodes) {
    const std::string where = "n=" + std::to_string(n);
    for (const auto* m : {&node->cohomology, &node->hhat}) {
      if (m == &node->hhat && node->relevant_primes.empty()) continue;
      const char* which = m == &node->cohomology ? "graph cohomology" : "modified cohomology";
      for (std::size_t d = 0; d < m->freeness.size(); ++d) {
        if (m->freeness[d]) continue;
        result.diagnostics.push_back({Severity::warning, "torsion",
                                      std::string(which) + " at " + where + ", degree " + std::to_string(2 * d) +
                                          ": new generators have torsion; module is not free and the "
                                          "torsion-freeness hypothesis fails"});
      }
    }
    for (int d = 0; d <= result.max_degree; ++d) {
      const auto i = static_cast<std::size_t>(d);
      if (node->hhat.slices[i].rank() != node->cohomology.slices[i].rank()) {
        result.diagnostics.push_back({Severity::warning, "rank-mismatch",
                                      "modified and plain cohomology differ in rank at " + where + ", degree " +
                                          std::to_string(2 * d) + " (primes " + join(node->relevant_primes) + ")"});
      }
    }
  }
  if (!hilbert_certificate(result.root().hhat)) {
    result.diagnostics.push_back({Severity::warning, "incomplete",
                                  "slice rank at degree " + std::to_string(2 * result.max_degree) +
                                      " differs from the free-module prediction; generators may exist above "
                                      "the degree bound"});
  }
  return result;
}

ExactnessReport exactness_report(const HhatResult& result) {
  ExactnessReport report;
  report.tree = result.tree;
  const NodeResult& root = result.root();
  for (int d = 0; d <= result.max_degree; ++d) {
    const auto i = static_cast<std::size_t>(d);
    const Lattice& plain = root.cohomology.slices[i];
    const Lattice& modified = root.hhat.slices[i];
    DegreeComparison cmp;
    cmp.degree = d;
    cmp.equal = plain == modified;
    try {
      cmp.index = cmp.equal ? Integer(1) : lattice_index(modified, plain);
    } catch (const ContainmentError&) {
      throw InternalInconsistency("modified cohomology is not contained in graph cohomology at degree " +
                                  std::to_string(2 * d));
    }
    if (!cmp.equal && !report.first_disagreement) report.first_disagreement = d;
    report.exact = report.exact && cmp.equal;
    report.degrees.push_back(std::move(cmp));
  }
  return report;
}

ExactnessReport exactness_report(const GkmGraph& g, int max_degree) {
  PipelineOptions options;
  options.max_degree = max_degree;
  return exactness_report(run_pipeline(g, options));
}

}  // namespace gkm
