#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stlobs/formula.hpp"
#include "stlobs/oracle.hpp"

namespace stlobs::lustre {

using oracle::Polarity;

struct LustreSourceUnit {
  std::string file_name;
  std::string source;
  std::vector<std::string> nodes;  // in order of appearance
};

/// basics.lus: min, exist, forall_a, timeab (with contract), P_at_k.
LustreSourceUnit emit_basic_nodes();

/// <operator>.lus: op_true, op_false and op_3v. Includes basics.lus.
LustreSourceUnit emit_operator_nodes(TemporalKind kind);

/// proof_<op>_<true|false>.lus: base and inductive obligations over [a, b]
/// and [a, b+1]. Includes the operator unit.
LustreSourceUnit emit_proof_node(TemporalKind kind, Polarity polarity);

/// basics + the three operator units, optionally followed by the six proof units.
std::vector<LustreSourceUnit> emit_all(bool with_proofs);

/// Node name stem used in generated names: "ev", "alw" or "until".
std::string_view short_name(TemporalKind kind);

/// Writes each unit under `dir` (created if needed). Returns the paths.
std::vector<std::filesystem::path> write_units(const std::vector<LustreSourceUnit>& units,
                                               const std::filesystem::path& dir);

enum class PropertyStatus { valid, falsifiable, timeout };

std::string_view to_string(PropertyStatus s);

struct PropertyResult {
  std::string file;
  std::string node;
  std::string property;
  PropertyStatus status;
};

struct ProofReport {
  bool skipped = false;
  std::string skip_reason;
  std::vector<PropertyResult> properties;
  /// Checker crashes and unparseable output, verbatim.
  std::vector<std::string> errors;

  bool all_valid() const;
};

/// Explicit path, then $STLOBS_CHECKER, then `kind2` on PATH.
std::optional<std::filesystem::path> locate_checker(const std::optional<std::string>& explicit_path);

/// Property results from the checker's JSON output.
/// Throws std::runtime_error when the text is not a JSON array of objects.
std::vector<PropertyResult> parse_checker_json(std::string_view text, const std::string& file);

struct CheckerOptions {
  std::optional<std::string> executable;
  double timeout_s = 60.0;
  /// Defaults to a fresh directory under the system temp path.
  std::optional<std::filesystem::path> work_dir;
};

/// Runs the checker once per unit, each in its own subdirectory holding all
/// units. A missing executable yields a skipped report.
ProofReport run_kind2(const std::vector<LustreSourceUnit>& units, const CheckerOptions& options = {});

std::string render_text(const ProofReport& report);

}  // namespace stlobs::lustre
