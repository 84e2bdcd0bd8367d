#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "stlobs/monitor.hpp"
#include "stlobs/traceio.hpp"

// Subcommands of the stlobs tool, as functions over streams so they can be
// driven without a process boundary.

namespace stlobs::cli {

namespace exit_code {
inline constexpr int satisfied = 0;     // final verdict T
inline constexpr int violated = 1;      // final verdict F
inline constexpr int undetermined = 2;  // final verdict U
inline constexpr int usage = 64;        // bad arguments, formula syntax or validation
inline constexpr int data = 65;         // malformed or too short trace
inline constexpr int no_input = 66;     // input file missing
inline constexpr int internal = 70;     // consistency violation, checker crash
inline constexpr int io = 74;           // cannot write output
}  // namespace exit_code

int exit_code_for(Trilean final_verdict);

enum class TraceFormat { csv, jsonl };

struct Streams {
  std::istream& in;  // used when the trace path is "-"
  std::ostream& out;
  std::ostream& err;
};

struct FormulaSource {
  std::optional<std::string> text;
  std::optional<std::filesystem::path> file;
};

struct TraceSource {
  std::string path = "-";
  /// Defaults to jsonl for .jsonl/.ndjson paths, csv otherwise.
  std::optional<TraceFormat> format;
  /// Declared signals; taken from the trace when empty.
  std::vector<std::string> signals;
};

struct CheckConfig {
  FormulaSource formula;
  TraceSource trace;
  io::VerdictFormat format = io::VerdictFormat::text;
  bool early_stop = false;
  CompileOptions compile;
};

/// Streams one verdict per sample, each written before the next sample is
/// read. Exit status is the final verdict's code (U when the trace is empty).
int cmd_check(const CheckConfig& config, Streams streams);

struct OracleConfig {
  FormulaSource formula;
  TraceSource trace;
  CompileOptions compile;
};

/// Offline verdict plus the oracle and monitor verdicts per tick. Exit 0
/// when they agree everywhere (and with the offline verdict at the
/// horizon), 1 otherwise.
int cmd_oracle(const OracleConfig& config, Streams streams);

struct SelfcheckConfig {
  Tick max_b = 4;
  std::uint64_t cases = 10000;
  std::uint64_t seed = 42;
  unsigned threads = 0;
  bool json = false;
  Mutation mutation = Mutation::none;
};

/// Differential sweep, induction checks, identity and explicit-form sweeps
/// and the property suite (skipped when cases is 0). Exit 0 iff all pass.
int cmd_selfcheck(const SelfcheckConfig& config, Streams streams);

struct EmitConfig {
  std::filesystem::path out_dir = "lustre";
  bool with_proofs = false;
  bool run_checker = false;
  std::optional<std::string> checker_path;
  double timeout_s = 60.0;
};

/// Writes the Lustre units; with run_checker, runs the checker on them.
/// A missing checker is reported as skipped and does not fail.
int cmd_emit_lustre(const EmitConfig& config, Streams streams);

}  // namespace stlobs::cli
