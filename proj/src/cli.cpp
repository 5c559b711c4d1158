#include "gkm/cli.hpp"

#include "gkm/recursion.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <set>
#include <sstream>
#include <utility>

namespace gkm {

namespace {

using nlohmann::json;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

int polynomial_degree_bound(const RunOptions& options, const GkmGraph& g) {
  if (!options.max_degree) return default_max_degree(g);
  const int d = *options.max_degree;
  if (d < 0 || d % 2 != 0) throw UsageError("--max-degree must be an even nonnegative integer");
  return d / 2;
}

std::int64_t modulus(const RunOptions& options) {
  const std::int64_t n = options.mod_n.value_or(1);
  if (n < 1) throw UsageError("--mod-n must be >= 1");
  return n;
}

json diagnostics_to_json(const std::vector<Diagnostic>& diagnostics) {
  json out = json::array();
  for (const auto& d : diagnostics)
    out.push_back({{"severity", std::string(to_string(d.severity))}, {"code", d.code}, {"message", d.message}});
  return out;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

std::string render_errors(const ValidationReport& report) {
  std::ostringstream os;
  for (const auto& d : report.diagnostics)
    if (d.severity == Severity::error) os << "error [" << d.code << "]: " << d.message << "\n";
  return os.str();
}

template <typename Body>
CommandResult guarded(Body body) {
  try {
    return body();
  } catch (const UsageError& e) {
    return {exit_code::invalid_input, "", std::string("usage error: ") + e.what() + "\n"};
  } catch (const ParseError& e) {
    return {exit_code::invalid_input, "", std::string("parse error: ") + e.what() + "\n"};
  } catch (const ValidationFailed& e) {
    return {exit_code::invalid_input, "", render_errors(e.report())};
  } catch (const InternalInconsistency& e) {
    return {exit_code::inconsistent, "", std::string("internal inconsistency: ") + e.what() + "\n"};
  } catch (const std::exception& e) {
    return {exit_code::inconsistent, "", std::string("unexpected failure: ") + e.what() + "\n"};
  }
}

std::vector<Diagnostic> plain_module_warnings(const ValidationReport& report, const GradedSubmodule& m) {
  std::vector<Diagnostic> out;
  for (const auto& d : report.diagnostics)
    if (d.severity == Severity::warning) out.push_back(d);
  for (std::size_t d = 0; d < m.freeness.size(); ++d)
    if (!m.freeness[d])
      out.push_back({Severity::warning, "torsion",
                     "degree " + std::to_string(2 * d) + ": new generators have torsion; module is not free"});
  if (!hilbert_certificate(m))
    out.push_back({Severity::warning, "incomplete",
                   "slice rank at degree " + std::to_string(2 * m.max_degree_computed) +
                       " differs from the free-module prediction"});
  return out;
}

std::string render_module_text(const GradedSubmodule& m, const GkmGraph& g, bool modified,
                               const std::vector<Diagnostic>& warnings) {
  std::ostringstream os;
  os << (modified ? "modified graph cohomology" : "graph cohomology") << " over R_" << m.ring_modulus
     << ", degrees 0.." << 2 * m.max_degree_computed << "\n";
  for (std::size_t i = 0; i < m.generators.size(); ++i) {
    const auto& gen = m.generators[i];
    os << "generator " << i + 1 << " (degree " << 2 * gen.degree << "):\n";
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
      os << "  " << g.vertices()[v] << ": " << to_string(gen.value.at(v)) << "\n";
  }
  os << "free in every degree: " << (m.all_free() ? "yes" : "no") << "\n";
  os << "hilbert certificate: " << (hilbert_certificate(m) ? "yes" : "no") << "\n";
  for (const auto& w : warnings) os << to_string(w.severity) << " [" << w.code << "]: " << w.message << "\n";
  return os.str();
}

json tree_to_json(const std::vector<DivisorNode>& tree) {
  json out = json::array();
  for (const auto& node : tree) {
    json children = json::array();
    for (auto p : node.relevant_primes) children.push_back(node.n * p);
    out.push_back({{"n", node.n}, {"relevant_primes", node.relevant_primes}, {"children", children}});
  }
  return out;
}

// Relevant primes of every node reachable from n in the divisor tree.
std::set<std::int64_t> primes_below(const HhatResult& result, std::int64_t n) {
  std::set<std::int64_t> primes;
  std::vector<std::int64_t> stack{n};
  std::set<std::int64_t> seen{n};
  while (!stack.empty()) {
    const auto m = stack.back();
    stack.pop_back();
    for (auto p : result.nodes.at(m)->relevant_primes) {
      primes.insert(p);
      if (seen.insert(m * p).second) stack.push_back(m * p);
    }
  }
  return primes;
}

struct CheckOutcome {
  std::string name;
  std::vector<std::string> failures;
};

}  // namespace

json integer_to_json(const Integer& x) {
  if (x.fits_slong_p()) return static_cast<std::int64_t>(x.get_si());
  return x.get_str();
}

Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) return Integer(j.get<std::string>());
  throw ParseError("expected an integer coefficient");
}

json generators_to_json(const GradedSubmodule& m, const GkmGraph& g) {
  json out = json::array();
  for (const auto& gen : m.generators) {
    json vertices = json::object();
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      json terms = json::object();
      for (const auto& [mono, c] : gen.value.at(v)) terms[mono.exponent_string()] = integer_to_json(c);
      vertices[g.vertices()[v]] = std::move(terms);
    }
    out.push_back({{"degree", 2 * gen.degree}, {"vertices", std::move(vertices)}});
  }
  return out;
}

GradedSubmodule generators_from_json(const json& gens, const GkmGraph& g, std::int64_t ring_modulus) {
  GradedSubmodule m;
  m.graph_rank = g.rank();
  m.vertex_count = g.vertex_count();
  m.ring_modulus = ring_modulus;
  for (const auto& item : gens) {
    const int degree = item.at("degree").get<int>() / 2;
    PolyVector value(g.rank(), degree, g.vertex_count());
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      for (const auto& [key, coeff] : item.at("vertices").at(g.vertices()[v]).items()) {
        std::vector<int> exps;
        std::istringstream in(key);
        for (int e; in >> e;) exps.push_back(e);
        value.add(v, Monomial(std::move(exps)), integer_from_json(coeff));
      }
    }
    m.generators.push_back({std::move(value), degree});
    m.max_degree_computed = std::max(m.max_degree_computed, degree);
  }
  return m;
}

CommandResult cmd_compute(const RunOptions& options) {
  return guarded([&]() -> CommandResult {
    const GkmGraph g = GkmGraph::load(options.input);
    const int bound = polynomial_degree_bound(options, g);
    const std::int64_t n = modulus(options);

    GradedSubmodule module;
    std::vector<Diagnostic> warnings;
    if (options.hhat) {
      PipelineOptions pipeline;
      pipeline.max_degree = bound;
      pipeline.root = n;
      pipeline.parallel = options.parallel;
      HhatResult result = run_pipeline(g, pipeline);
      module = result.root().hhat;
      warnings = std::move(result.diagnostics);
    } else {
      ValidationReport report = validate(g);
      if (!report.ok()) throw ValidationFailed(std::move(report));
      module = graph_cohomology(g, n, bound, options.parallel);
      warnings = plain_module_warnings(report, module);
    }

    if (options.format == OutputFormat::text)
      return {exit_code::ok, render_module_text(module, g, options.hhat, warnings), ""};

    json freeness = json::array();
    for (bool f : module.freeness) freeness.push_back(f);
    json doc = {
        {"module", options.hhat ? "hhat" : "cohomology"},
        {"ring_modulus", n},
        {"max_degree", 2 * bound},
        {"generators", generators_to_json(module, g)},
        {"freeness", freeness},
        {"hilbert_certificate", hilbert_certificate(module)},
        {"warnings", diagnostics_to_json(warnings)},
    };
    if (options.rational) {
      json ranks = json::array();
      json rational = json::array();
      for (int d = 0; d <= bound; ++d) {
        ranks.push_back(module.slices[static_cast<std::size_t>(d)].rank());
        rational.push_back(rational_dimension(g, n, d));
      }
      doc["slice_ranks"] = ranks;
      doc["rational_dimensions"] = rational;
    }
    return {exit_code::ok, dump(doc), ""};
  });
}

CommandResult cmd_report(const RunOptions& options) {
  return guarded([&]() -> CommandResult {
    const GkmGraph g = GkmGraph::load(options.input);
    PipelineOptions pipeline;
    pipeline.max_degree = polynomial_degree_bound(options, g);
    pipeline.parallel = options.parallel;
    const HhatResult result = run_pipeline(g, pipeline);
    const ExactnessReport report = exactness_report(result);
    const bool coprime = validate(g).coprime_adjacent;

    if (options.format == OutputFormat::text) {
      std::ostringstream os;
      os << "exact: " << (report.exact ? "true" : "false") << "\n";
      if (report.first_disagreement) os << "first disagreement at degree " << 2 * *report.first_disagreement << "\n";
      os << "coprime adjacent weights: " << (coprime ? "true" : "false") << "\n";
      os << "divisor tree:\n";
      for (const auto& node : report.tree) {
        os << "  " << node.n << " ->";
        if (node.relevant_primes.empty()) os << " (leaf)";
        for (auto p : node.relevant_primes) os << ' ' << node.n * p;
        os << "\n";
      }
      for (const auto& d : report.degrees)
        os << "degree " << 2 * d.degree << ": " << (d.equal ? "equal" : "differs") << ", index "
           << (sgn(d.index) == 0 ? std::string("infinite") : d.index.get_str()) << "\n";
      for (const auto& w : result.diagnostics) os << to_string(w.severity) << " [" << w.code << "]: " << w.message << "\n";
      return {exit_code::ok, os.str(), ""};
    }

    json degrees = json::array();
    for (const auto& d : report.degrees) {
      degrees.push_back({{"degree", 2 * d.degree},
                         {"equal", d.equal},
                         {"index", sgn(d.index) == 0 ? json("infinite") : integer_to_json(d.index)}});
    }
    json doc = {
        {"exact", report.exact},
        {"first_disagreement", report.first_disagreement ? json(2 * *report.first_disagreement) : json(nullptr)},
        {"max_degree", 2 * result.max_degree},
        {"divisor_tree", tree_to_json(report.tree)},
        {"degrees", degrees},
        {"coprime_adjacent", coprime},
        {"warnings", diagnostics_to_json(result.diagnostics)},
    };
    return {exit_code::ok, dump(doc), ""};
  });
}

CommandResult cmd_check(const RunOptions& options) {
  return guarded([&]() -> CommandResult {
    const GkmGraph g = GkmGraph::load(options.input);
    const ValidationReport validation = validate(g);
    std::vector<Diagnostic> warnings;
    std::vector<Diagnostic> errors;
    for (const auto& d : validation.diagnostics) {
      if (d.severity == Severity::error) errors.push_back(d);
      if (d.severity == Severity::warning) warnings.push_back(d);
    }
    if (!validation.ok()) {
      json doc = {{"passed", false},
                  {"checks", json::array({{{"name", "validation"}, {"passed", false}, {"failures", diagnostics_to_json(errors)}}})},
                  {"warnings", diagnostics_to_json(warnings)}};
      return {exit_code::invalid_input, dump(doc), render_errors(validation)};
    }

    PipelineOptions pipeline;
    pipeline.max_degree = polynomial_degree_bound(options, g);
    pipeline.parallel = options.parallel;
    const HhatResult result = run_pipeline(g, pipeline);
    const int bound = result.max_degree;

    enum Check : std::size_t {
      kValidation,
      kOracleRank,
      kSelfConsistency,
      kHilbert,
      kContainment,
      kRankEquality,
      kIndexSupport,
      kCoprimeShortcut,
      kRoundTrip,
    };
    std::vector<CheckOutcome> checks = {
        {"validation", {}},          {"oracle-rank-equality", {}}, {"extraction-self-consistency", {}},
        {"hilbert-certificate", {}}, {"hhat-containment", {}},     {"hhat-rank-equality", {}},
        {"index-support", {}},       {"coprime-shortcut", {}},     {"generator-round-trip", {}},
    };
    auto failures = [&checks](Check c) -> std::vector<std::string>& { return checks[c].failures; };

    for (const auto& [n, node] : result.nodes) {
      const std::string at = "n=" + std::to_string(n);
      const auto below = primes_below(result, n);
      for (int d = 0; d <= bound; ++d) {
        const auto i = static_cast<std::size_t>(d);
        const std::string where = at + ", degree " + std::to_string(2 * d);
        const Lattice& plain = node->cohomology.slices[i];
        const Lattice& modified = node->hhat.slices[i];
        const std::size_t expected = rational_dimension(g, n, d);
        if (plain.rank() != expected)
          failures(kOracleRank).push_back(where + ": integral rank " + std::to_string(plain.rank()) + ", rational " +
                                std::to_string(expected));
        for (const auto* m : {&node->cohomology, &node->hhat}) {
          if (!(span_slice(*m, n, d) == m->slices[i])) failures(kSelfConsistency).push_back(where);
          if (m->all_free() && m->slices[i].rank() != hilbert_rank(*m, d))
            failures(kHilbert).push_back(where + ": rank " + std::to_string(m->slices[i].rank()) + ", predicted " +
                                  std::to_string(hilbert_rank(*m, d)));
        }
        if (!contains(plain, modified)) {
          failures(kContainment).push_back(where);
          continue;
        }
        if (plain.rank() != modified.rank()) failures(kRankEquality).push_back(where);
        for (const auto& f : quotient_with_lifts(modified, plain).invariant_factors) {
          if (sgn(f) == 0) continue;
          Integer rest = f;
          for (auto p : below)
            while (mpz_divisible_ui_p(rest.get_mpz_t(), static_cast<unsigned long>(p))) rest /= static_cast<unsigned long>(p);
          if (rest != 1) failures(kIndexSupport).push_back(where + ": factor " + f.get_str());
        }
      }
    }

    const NodeResult& root = result.root();
    if (root.relevant_primes.empty()) {
      for (int d = 0; d <= bound; ++d)
        if (!(root.hhat.slices[static_cast<std::size_t>(d)] == root.cohomology.slices[static_cast<std::size_t>(d)]))
          failures(kCoprimeShortcut).push_back("degree " + std::to_string(2 * d));
    }

    const GradedSubmodule reread = generators_from_json(generators_to_json(root.hhat, g), g, root.hhat.ring_modulus);
    for (int d = 0; d <= bound; ++d)
      if (!(span_slice(reread, root.hhat.ring_modulus, d) == root.hhat.slices[static_cast<std::size_t>(d)]))
        failures(kRoundTrip).push_back("degree " + std::to_string(2 * d));

    for (const auto& w : result.diagnostics)
      if (w.code != "dependent-weights") warnings.push_back(w);

    bool passed = true;
    json check_json = json::array();
    for (const auto& c : checks) {
      passed = passed && c.failures.empty();
      check_json.push_back({{"name", c.name}, {"passed", c.failures.empty()}, {"failures", c.failures}});
    }
    const int status = passed ? exit_code::ok : exit_code::inconsistent;

    if (options.format == OutputFormat::text) {
      std::ostringstream os;
      for (const auto& c : checks) {
        os << (c.failures.empty() ? "PASS " : "FAIL ") << c.name << "\n";
        for (const auto& f : c.failures) os << "  " << f << "\n";
      }
      for (const auto& w : warnings) os << to_string(w.severity) << " [" << w.code << "]: " << w.message << "\n";
      return {status, os.str(), ""};
    }
    json doc = {{"passed", passed},
                {"max_degree", 2 * bound},
                {"checks", check_json},
                {"warnings", diagnostics_to_json(warnings)}};
    return {status, dump(doc), ""};
  });
}

int run_cli(int argc, char** argv) {
  CLI::App app{"gkmcoh: integral graph cohomology of GKM graphs"};
  app.require_subcommand(1);

  RunOptions options;
  std::string format = "json";
  int max_degree = 0;
  std::int64_t mod_n = 1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("file", options.input, "graph file (JSON)")->required();
    sub->add_option("--max-degree", max_degree, "cohomological degree bound (even); default 2 * max valence");
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_flag("--parallel", options.parallel, "evaluate degrees and divisor-tree branches concurrently");
  };

  CLI::App* compute = app.add_subcommand("compute", "generators of the graph cohomology or its modified version");
  add_common(compute);
  compute->add_flag("--hhat", options.hhat, "compute the modified cohomology");
  compute->add_option("--mod-n", mod_n, "work with Gamma_n over R_n");
  compute->add_flag("--rational", options.rational, "also emit rational slice dimensions");

  CLI::App* report = app.add_subcommand("report", "exactness of the one-skeleton computation");
  add_common(report);

  CLI::App* check = app.add_subcommand("check", "validate the graph and run the invariant suite");
  add_common(check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_code::invalid_input;
  }

  for (CLI::App* sub : {compute, report, check}) {
    if (!sub->parsed()) continue;
    options.command = sub->get_name();
    if (sub->count("--max-degree") > 0) options.max_degree = max_degree;
    if (sub == compute && compute->count("--mod-n") > 0) options.mod_n = mod_n;
  }
  options.format = format == "text" ? OutputFormat::text : OutputFormat::json;

  CommandResult result;
  if (options.command == "compute") result = cmd_compute(options);
  else if (options.command == "report") result = cmd_report(options);
  else result = cmd_check(options);
  std::cout << result.output;
  std::cerr << result.errors;
  return result.exit_code;
}

}  // namespace gkm
