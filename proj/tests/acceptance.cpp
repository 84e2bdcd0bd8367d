// Prints one PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>

#include "stlobs/conformance.hpp"
#include "stlobs/lustregen.hpp"
#include "stlobs/monitor.hpp"
#include "stlobs/oracle.hpp"

using namespace stlobs;
using conformance::Polarity;

namespace {

namespace fs = std::filesystem;

const std::vector<TemporalKind> kKinds = {TemporalKind::eventually, TemporalKind::always,
                                          TemporalKind::until};

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt_s(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f s", s);
  return buf;
}

conformance::Options keep_all() {
  conformance::Options o;
  o.max_failures = std::numeric_limits<std::size_t>::max();
  return o;
}

std::uint64_t count_check(const conformance::ConformanceReport& r, const std::string& check) {
  std::uint64_t n = 0;
  for (const auto& f : r.failures) n += f.check == check;
  return n;
}

Outcome truth_tables() {
  const auto start = std::chrono::steady_clock::now();
  constexpr Trilean F = Trilean::F, U = Trilean::U, T = Trilean::T;
  // Rows: left operand F, U, T; columns: right operand F, U, T.
  const Trilean and_t[3][3] = {{F, F, F}, {F, U, U}, {F, U, T}};
  const Trilean or_t[3][3] = {{F, U, T}, {U, U, T}, {T, T, T}};
  const Trilean imp_t[3][3] = {{T, T, T}, {U, U, T}, {F, U, T}};
  const Trilean not_t[3] = {T, U, F};
  int cases = 0, ok = 0;
  for (int i = 0; i < 3; ++i) {
    const Trilean x = kAllTrileans[i];
    ++cases;
    ok += not3(x) == not_t[i];
    for (int j = 0; j < 3; ++j) {
      const Trilean y = kAllTrileans[j];
      cases += 3;
      ok += (and3(x, y) == and_t[i][j]) + (or3(x, y) == or_t[i][j]) + (implies3(x, y) == imp_t[i][j]);
    }
  }
  const double s = seconds_since(start);
  return {cases == 30 && ok == 30 && s < 1.0,
          std::to_string(ok) + "/" + std::to_string(cases) + " entries, " + fmt_s(s)};
}

struct Sweep {
  conformance::ConformanceReport report;
  std::uint64_t expected_cases = 0;
};

Sweep run_sweep() {
  Sweep s;
  s.report = conformance::differential_sweep(kKinds, 4, keep_all());
  for (TemporalKind kind : kKinds) {
    const unsigned atoms = kind == TemporalKind::until ? 2 : 1;
    for (Tick b = 1; b <= 4; ++b) s.expected_cases += b * (std::uint64_t{1} << (atoms * (b + 3)));
  }
  return s;
}

Outcome exhaustive(const Sweep& s) {
  const std::uint64_t bad =
      count_check(s.report, "monitor-vs-oracle") + count_check(s.report, "consistency");
  const bool pass = bad == 0 && s.report.cases == s.expected_cases && s.report.wall_time_s < 60.0;
  return {pass, std::to_string(s.report.cases) + " traces, " + std::to_string(bad) +
                    " mismatches, " + fmt_s(s.report.wall_time_s)};
}

Outcome online_offline(const Sweep& s) {
  const std::uint64_t bad = count_check(s.report, "online-vs-offline");
  return {bad == 0 && s.report.cases == s.expected_cases,
          std::to_string(s.report.cases) + " traces checked at tick b, " + std::to_string(bad) +
              " mismatches"};
}

Outcome properties() {
  const auto r = conformance::property_suite(42, 10000);
  return {r.passing() && r.cases == 10000 && r.wall_time_s < 120.0,
          std::to_string(r.cases) + " cases, " + std::to_string(r.failure_count) + " violations, " +
              fmt_s(r.wall_time_s)};
}

Outcome induction() {
  const auto start = std::chrono::steady_clock::now();
  conformance::ConformanceReport r;
  int obligations = 0, held = 0;
  for (TemporalKind kind : kKinds) {
    for (Polarity pol : {Polarity::positive, Polarity::negative}) {
      for (Tick a = 0; a <= 4; ++a) {
        ++obligations;
        held += conformance::check_induction_base(kind, a, pol, &r);
      }
      for (Tick b = 1; b <= 4; ++b) {
        for (Tick a = 0; a < b; ++a) {
          ++obligations;
          held += conformance::check_induction_step(kind, a, b, pol, &r);
        }
      }
    }
  }
  return {held == obligations && r.passing(),
          std::to_string(held) + "/" + std::to_string(obligations) + " obligations over " +
              std::to_string(r.cases) + " traces, " + fmt_s(seconds_since(start))};
}

Outcome bounded_memory() {
  const auto start = std::chrono::steady_clock::now();
  bool same = true;
  std::string sizes;
  for (TemporalKind kind : kKinds) {
    std::vector<std::size_t> n;
    for (Tick b : {Tick{2}, Tick{50}, Tick{1000}}) {
      Monitor m = Monitor::compile(conformance::operator_formula(kind, {1, b}));
      // Step past the interval so counters would have had to grow.
      for (Tick t = 0; t <= b + 1; ++t) m.step(std::vector<double>(m.signals().size(), 1.0));
      n.push_back(m.state().size());
    }
    same = same && n[0] == n[1] && n[1] == n[2];
    sizes += (sizes.empty() ? "" : ", ") + std::string(to_string(kind)) + "=" +
             std::to_string(n[0]) + "/" + std::to_string(n[1]) + "/" + std::to_string(n[2]);
  }
  const double s = seconds_since(start);
  return {same && s < 1.0, "state scalars for b=2/50/1000: " + sizes + ", " + fmt_s(s)};
}

Outcome identities() {
  const auto r = conformance::identity_sweep(4);
  return {r.passing() && r.cases > 0, std::to_string(r.cases) + " (interval, trace) pairs, " +
                                          std::to_string(r.failure_count) + " mismatches"};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome codegen() {
  const auto first = lustre::emit_all(true);
  const auto second = lustre::emit_all(true);
  int matched = 0;
  bool deterministic = first.size() == second.size();
  for (std::size_t i = 0; i < first.size(); ++i) {
    matched += slurp(fs::path(STLOBS_GOLDEN_DIR) / first[i].file_name) == first[i].source;
    deterministic = deterministic && i < second.size() && first[i].source == second[i].source;
  }
  const auto proofs = lustre::run_kind2(first);
  std::string checker;
  bool checker_ok = true;
  if (proofs.skipped) {
    checker = "checker skipped (" + proofs.skip_reason + ")";
  } else {
    checker_ok = proofs.all_valid();
    checker = "checker: " + std::to_string(proofs.properties.size()) + " properties, " +
              (checker_ok ? "all valid" : "not all valid");
  }
  return {matched == static_cast<int>(first.size()) && deterministic && checker_ok,
          std::to_string(matched) + "/" + std::to_string(first.size()) +
              " units match golden files, " + (deterministic ? "deterministic" : "NOT deterministic") +
              ", " + checker};
}

}  // namespace

int main() {
  const Sweep sweep = run_sweep();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"truth-table fidelity", truth_tables},
      {"exhaustive operator conformance", [&] { return exhaustive(sweep); }},
      {"online/offline equivalence", [&] { return online_offline(sweep); }},
      {"property suite", properties},
      {"induction checks", induction},
      {"bounded memory", bounded_memory},
      {"definitional identities", identities},
      {"code generation", codegen},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
  }
  return all ? 0 : 1;
}
