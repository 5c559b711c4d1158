#pragma once

// Command-line surface: compute, report and check on a graph file.

#include "gkm/gkmgraph.hpp"
#include "gkm/graphcohomology.hpp"

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace gkm {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int invalid_input = 1;
inline constexpr int inconsistent = 2;
}  // namespace exit_code

enum class OutputFormat { json, text };

struct RunOptions {
  std::string command;
  std::filesystem::path input;
  std::optional<int> max_degree;  // cohomological (even)
  std::optional<std::int64_t> mod_n;
  bool hhat = false;
  OutputFormat format = OutputFormat::json;
  bool rational = false;
  bool parallel = false;
};

struct CommandResult {
  int exit_code = exit_code::ok;
  std::string output;  // stdout
  std::string errors;  // stderr
};

CommandResult cmd_compute(const RunOptions& options);
CommandResult cmd_report(const RunOptions& options);
CommandResult cmd_check(const RunOptions& options);

/// Parses argv with CLI11 and dispatches; returns the process exit status.
int run_cli(int argc, char** argv);

/// JSON value of an exact integer: a number when it fits in 64 bits,
/// otherwise its decimal string.
nlohmann::json integer_to_json(const Integer& x);
Integer integer_from_json(const nlohmann::json& j);

/// { "degree": 2d, "vertices": { name: { "e1 ... er": coeff } } } per generator.
nlohmann::json generators_to_json(const GradedSubmodule& m, const GkmGraph& g);
/// Inverse of generators_to_json; returns a module over `ring_modulus` with
/// no slices attached.
GradedSubmodule generators_from_json(const nlohmann::json& gens, const GkmGraph& g, std::int64_t ring_modulus);

}  // namespace gkm
