#pragma once

// The recursive modified graph cohomology: at each divisor n, intersect the
// graph cohomology of Gamma_n with the R_n-extensions of the already
// intersected modules at n*p, for every relevant prime p.

#include "gkm/gkmgraph.hpp"
#include "gkm/graphcohomology.hpp"

#include <cstdint>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

namespace gkm {

class ValidationFailed : public std::runtime_error {
 public:
  explicit ValidationFailed(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

struct NodeResult {
  std::int64_t n = 1;
  std::vector<std::int64_t> relevant_primes;
  GradedSubmodule cohomology;  // graph cohomology of Gamma_n over R_n
  GradedSubmodule hhat;        // its modified version
  double elapsed_ms = 0.0;
};

/// Write-once table of node results keyed by n. Concurrent callers asking for
/// the same n wait for the first computation.
class HhatMemo {
 public:
  explicit HhatMemo(bool parallel = false, bool enabled = true) : parallel_(parallel), enabled_(enabled) {}

  std::shared_ptr<const NodeResult> get_or_compute(std::int64_t n, const std::function<NodeResult()>& compute);
  std::map<std::int64_t, std::shared_ptr<const NodeResult>> entries() const;

  bool parallel() const { return parallel_; }
  bool enabled() const { return enabled_; }

 private:
  bool parallel_;
  bool enabled_;
  mutable std::mutex mutex_;
  std::map<std::int64_t, std::shared_future<std::shared_ptr<const NodeResult>>> table_;
  std::map<std::int64_t, std::shared_ptr<const NodeResult>> latest_;
};

/// Graph cohomology of Gamma_n over R_n up to polynomial degree D, with
/// generators. Degrees are computed concurrently when `parallel` is set.
GradedSubmodule graph_cohomology(const GkmGraph& g, std::int64_t n, int max_degree, bool parallel = false);

/// Node n of the recursion (both the plain and the modified module), computed
/// to polynomial degree D.
std::shared_ptr<const NodeResult> compute_node(const GkmGraph& g, std::int64_t n, int max_degree, HhatMemo& memo);

GradedSubmodule hhat(const GkmGraph& g, std::int64_t n, int max_degree, HhatMemo& memo);

struct PipelineOptions {
  int max_degree = -1;  // polynomial degree; negative means max valence
  std::int64_t root = 1;
  bool parallel = false;
  bool memoize = true;
};

struct HhatResult {
  int max_degree = 0;
  std::int64_t root_modulus = 1;
  std::map<std::int64_t, std::shared_ptr<const NodeResult>> nodes;
  std::vector<DivisorNode> tree;
  std::vector<Diagnostic> diagnostics;

  const NodeResult& root() const { return *nodes.at(root_modulus); }
};

int default_max_degree(const GkmGraph& g);

/// Rank of the top slice matches the free-module prediction.
bool hilbert_certificate(const GradedSubmodule& m);

/// Validates g (throws ValidationFailed on errors) and computes every node
/// reachable from options.root.
HhatResult run_pipeline(const GkmGraph& g, const PipelineOptions& options);

struct DegreeComparison {
  int degree = 0;  // polynomial degree
  bool equal = true;
  Integer index = 1;  // [H_d : Hhat_d], 0 when infinite
};

struct ExactnessReport {
  bool exact = true;
  std::optional<int> first_disagreement;  // polynomial degree
  std::vector<DegreeComparison> degrees;
  std::vector<DivisorNode> tree;
};

ExactnessReport exactness_report(const HhatResult& result);
ExactnessReport exactness_report(const GkmGraph& g, int max_degree);

}  // namespace gkm
