#include "stlobs/commands.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "stlobs/conformance.hpp"
#include "stlobs/lustregen.hpp"
#include "stlobs/oracle.hpp"
#include "stlobs/parser.hpp"

namespace stlobs::cli {

int exit_code_for(Trilean v) {
  switch (v) {
    case Trilean::T: return exit_code::satisfied;
    case Trilean::F: return exit_code::violated;
    case Trilean::U: return exit_code::undetermined;
  }
  return exit_code::internal;
}

namespace {

class MissingInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_formula_text(const FormulaSource& src) {
  if (src.text && src.file) throw UsageError("give either --formula or --formula-file, not both");
  if (src.text) return *src.text;
  if (!src.file) throw UsageError("no formula given (--formula or --formula-file)");
  std::ifstream in(*src.file, std::ios::binary);
  if (!in) throw MissingInput("cannot open formula file " + src.file->string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

TraceFormat format_of(const TraceSource& src) {
  if (src.format) return *src.format;
  const auto ext = std::filesystem::path(src.path).extension();
  return ext == ".jsonl" || ext == ".ndjson" ? TraceFormat::jsonl : TraceFormat::csv;
}

// Sample stream over either input format, with signals known up front.
class SampleSource {
 public:
  SampleSource(const TraceSource& src, std::istream& stdin_stream) {
    std::istream* in = &stdin_stream;
    if (src.path != "-") {
      file_ = std::make_unique<std::ifstream>(src.path, std::ios::binary);
      if (!*file_) throw MissingInput("cannot open trace " + src.path);
      in = file_.get();
    }
    if (format_of(src) == TraceFormat::csv) {
      csv_ = std::make_unique<io::CsvSampleReader>(*in);
      signals_ = csv_->signals();
    } else {
      jsonl_ = std::make_unique<io::JsonlSampleReader>(*in, src.signals);
      if (src.signals.empty()) pending_ = jsonl_->next();
      signals_ = jsonl_->signals();
      if (signals_.empty()) throw io::FormatError("empty trace: no samples and no signals");
    }
  }

  const std::vector<std::string>& signals() const { return signals_; }

  std::optional<std::vector<double>> next() {
    if (pending_) {
      auto row = std::move(pending_);
      pending_.reset();
      return row;
    }
    return csv_ ? csv_->next() : jsonl_->next();
  }

  void report_warnings(std::ostream& err) {
    if (!jsonl_) return;
    for (; warned_ < jsonl_->warnings().size(); ++warned_) {
      err << "warning: " << jsonl_->warnings()[warned_] << "\n";
    }
  }

 private:
  std::unique_ptr<std::ifstream> file_;
  std::unique_ptr<io::CsvSampleReader> csv_;
  std::unique_ptr<io::JsonlSampleReader> jsonl_;
  std::optional<std::vector<double>> pending_;
  std::vector<std::string> signals_;
  std::size_t warned_ = 0;
};

// Formula parsed against the declared signals, or the trace's when none
// were declared.
Formula parse_against(const std::string& text, const TraceSource& src,
                      const std::vector<std::string>& trace_signals) {
  const auto& declared = src.signals.empty() ? trace_signals : src.signals;
  for (const auto& s : declared) {
    if (std::find(trace_signals.begin(), trace_signals.end(), s) == trace_signals.end()) {
      throw io::FormatError("trace has no column for declared signal '" + s + "'");
    }
  }
  return parse(text, declared);
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const ParseError& e) {
    err << "error: " << to_string(e.code()) << " at position " << e.position() << ": "
        << e.detail() << "\n";
    return exit_code::usage;
  } catch (const CompileError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const MissingInput& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::no_input;
  } catch (const io::FormatError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::data;
  } catch (const SampleError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::data;
  } catch (const oracle::TraceTooShort& e) {
    err << "error: trace too short: " << e.what() << "\n";
    return exit_code::data;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::io;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::io;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_code::internal;
  }
}

}  // namespace

int cmd_check(const CheckConfig& config, Streams s) {
  return guarded(s.err, [&] {
    const std::string text = read_formula_text(config.formula);
    SampleSource source(config.trace, s.in);
    const Formula f = parse_against(text, config.trace, source.signals());
    Monitor monitor = Monitor::compile(f, source.signals(), config.compile);
    io::VerdictWriter writer(s.out, config.format, true);
    Trilean last = Trilean::U;
    while (auto row = source.next()) {
      source.report_warnings(s.err);
      const VerdictRecord r = monitor.step(*row);
      writer.write(r);
      last = r.verdict;
      if (config.early_stop && last != Trilean::U) break;
    }
    source.report_warnings(s.err);
    try {
      writer.finish();
    } catch (const std::runtime_error& e) {
      s.err << "error: " << e.what() << "\n";
      return exit_code::io;
    }
    return exit_code_for(last);
  });
}

int cmd_oracle(const OracleConfig& config, Streams s) {
  return guarded(s.err, [&] {
    const std::string text = read_formula_text(config.formula);
    SampleSource source(config.trace, s.in);
    Trace trace(source.signals());
    while (auto row = source.next()) trace.push_back(*row);
    source.report_warnings(s.err);
    const Formula f = parse_against(text, config.trace, trace.signals());
    const Tick h = horizon(f);
    if (trace.length() <= h) {
      throw oracle::TraceTooShort("the horizon is tick " + std::to_string(h) + ", the trace has " +
                                  std::to_string(trace.length()) + " tick(s); need at least " +
                                  std::to_string(h + 1));
    }
    Monitor monitor = Monitor::compile(f, trace.signals(), config.compile);
    const auto records = monitor.run(trace);
    const bool offline = oracle::offline_eval(f, trace, 0);

    s.out << "formula: " << render(f) << "\n";
    s.out << "horizon: " << h << "\n";
    s.out << "offline: " << (offline ? "true" : "false") << "\n";
    s.out << "tick oracle monitor\n";
    std::optional<Tick> first;
    for (Tick t = 0; t < trace.length(); ++t) {
      const Trilean want = oracle::three_valued_eval(f, trace, t);
      const Trilean got = records[t].verdict;
      s.out << std::setw(4) << t << " " << std::setw(6) << to_char(want) << " "
            << std::setw(7) << to_char(got);
      if (got != want) {
        s.out << "  <- mismatch";
        if (!first) first = t;
      }
      s.out << "\n";
    }
    const Trilean at_h = records[h].verdict;
    const bool horizon_ok = offline ? at_h == Trilean::T : at_h == Trilean::F;
    if (first) {
      s.out << "MISMATCH: first divergent tick " << *first << "\n";
      return 1;
    }
    if (!horizon_ok) {
      s.out << "MISMATCH: verdict " << to_char(at_h) << " at the horizon, offline verdict is "
            << (offline ? "true" : "false") << "\n";
      return 1;
    }
    s.out << "CONFORMS\n";
    return 0;
  });
}

int cmd_selfcheck(const SelfcheckConfig& config, Streams s) {
  return guarded(s.err, [&] {
    if (config.max_b < 2) throw UsageError("--max-b must be at least 2");
    conformance::Options opts;
    opts.threads = config.threads;
    opts.mutation = config.mutation;
    const std::vector<TemporalKind> kinds = {TemporalKind::eventually, TemporalKind::always,
                                             TemporalKind::until};
    std::vector<std::pair<std::string, conformance::ConformanceReport>> sections;
    sections.emplace_back("differential sweep", conformance::differential_sweep(kinds, config.max_b, opts));
    sections.emplace_back("induction checks",
                          conformance::induction_suite(config.max_b, config.max_b, opts));
    sections.emplace_back("definitional identities", conformance::identity_sweep(config.max_b, opts));
    sections.emplace_back("unrolled forms", conformance::explicit_sweep(config.max_b, opts));
    if (config.cases > 0) {
      conformance::PropertyOptions popts;
      popts.base = opts;
      sections.emplace_back("property suite",
                            conformance::property_suite(config.seed, config.cases, popts));
    }
    bool all = true;
    for (const auto& [name, report] : sections) {
      all = all && report.passing();
      if (config.json) {
        s.out << "{\"section\":" << nlohmann::json(name).dump()
              << ",\"report\":" << conformance::render_json(report) << "}\n";
      } else {
        s.out << "== " << name << "\n" << conformance::render_text(report) << "\n";
      }
    }
    if (!config.json) s.out << (all ? "selfcheck passed" : "selfcheck FAILED") << "\n";
    return all ? 0 : 1;
  });
}

int cmd_emit_lustre(const EmitConfig& config, Streams s) {
  return guarded(s.err, [&] {
    const auto units = lustre::emit_all(config.with_proofs);
    std::vector<std::filesystem::path> paths;
    try {
      paths = lustre::write_units(units, config.out_dir);
    } catch (const std::exception& e) {
      s.err << "error: " << e.what() << "\n";
      return exit_code::io;
    }
    for (const auto& p : paths) s.out << "wrote " << p.string() << "\n";
    if (!config.run_checker) return 0;
    lustre::CheckerOptions copts;
    copts.executable = config.checker_path;
    copts.timeout_s = config.timeout_s;
    copts.work_dir = config.out_dir / "checker";
    const auto report = lustre::run_kind2(units, copts);
    s.out << lustre::render_text(report);
    if (report.skipped) return 0;
    if (!report.errors.empty()) return exit_code::internal;
    return report.all_valid() ? 0 : 1;
  });
}

}  // namespace stlobs::cli
