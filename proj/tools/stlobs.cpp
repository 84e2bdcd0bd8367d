#include <iostream>

#include <CLI11.hpp>

#include "stlobs/commands.hpp"

using namespace stlobs;

namespace {

void add_formula_options(CLI::App* cmd, cli::FormulaSource& f) {
  cmd->add_option_function<std::string>(
      "-f,--formula", [&f](const std::string& v) { f.text = v; }, "Formula text");
  cmd->add_option_function<std::string>(
      "--formula-file", [&f](const std::string& v) { f.file = v; }, "File holding the formula");
}

void add_trace_options(CLI::App* cmd, cli::TraceSource& t) {
  cmd->add_option("--trace", t.path, "Trace file, or - for stdin")->capture_default_str();
  cmd->add_option_function<std::string>(
         "--input-format",
         [&t](const std::string& v) {
           t.format = v == "jsonl" ? cli::TraceFormat::jsonl : cli::TraceFormat::csv;
         },
         "Trace format (default: from the file extension, csv for stdin)")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  cmd->add_option("--signals", t.signals, "Declared signals (default: the trace's)")->delimiter(',');
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online three-valued monitoring of non-nested STL formulas"};
  app.require_subcommand(1);

  cli::CheckConfig check;
  std::string check_format = "text";
  auto* c = app.add_subcommand("check", "Monitor a trace and stream one verdict per tick");
  add_formula_options(c, check.formula);
  add_trace_options(c, check.trace);
  c->add_option("--format", check_format, "Verdict format")
      ->check(CLI::IsMember({"text", "csv", "jsonl"}))
      ->capture_default_str();
  c->add_flag("--early-stop", check.early_stop, "Stop at the first determined verdict");

  cli::OracleConfig oracle;
  auto* o = app.add_subcommand("oracle", "Compare the monitor with the reference semantics");
  add_formula_options(o, oracle.formula);
  add_trace_options(o, oracle.trace);

  cli::SelfcheckConfig self;
  std::string self_format = "text";
  auto* s = app.add_subcommand("selfcheck", "Run the conformance suites");
  s->add_option("--max-b", self.max_b, "Largest interval bound in the exhaustive sweeps")
      ->capture_default_str();
  s->add_option("--cases", self.cases, "Randomised property cases (0 skips the suite)")
      ->capture_default_str();
  s->add_option("--seed", self.seed, "Seed of the property suite")->capture_default_str();
  s->add_option("--threads", self.threads, "Worker threads (0: one per core)")->capture_default_str();
  s->add_option("--format", self_format, "Report format")
      ->check(CLI::IsMember({"text", "jsonl"}))
      ->capture_default_str();

  cli::EmitConfig emit;
  std::string out_dir = emit.out_dir.string();
  std::string checker;
  auto* e = app.add_subcommand("emit-lustre", "Write the Lustre observer and proof nodes");
  e->add_option("--out-dir", out_dir, "Output directory")->capture_default_str();
  e->add_flag("--with-proofs", emit.with_proofs, "Also emit the six proof nodes");
  e->add_flag("--run-checker", emit.run_checker, "Run kind2 on the emitted files");
  e->add_option("--checker-path", checker, "kind2 executable (default: $STLOBS_CHECKER, then PATH)");
  e->add_option("--timeout", emit.timeout_s, "Checker timeout per file, seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? 0 : cli::exit_code::usage;
  }

  cli::Streams streams{std::cin, std::cout, std::cerr};
  if (c->parsed()) {
    check.format = *io::parse_verdict_format(check_format);
    return cli::cmd_check(check, streams);
  }
  if (o->parsed()) return cli::cmd_oracle(oracle, streams);
  if (s->parsed()) {
    self.json = self_format == "jsonl";
    return cli::cmd_selfcheck(self, streams);
  }
  emit.out_dir = out_dir;
  if (!checker.empty()) emit.checker_path = checker;
  return cli::cmd_emit_lustre(emit, streams);
}
