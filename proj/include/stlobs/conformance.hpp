#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stlobs/formula.hpp"
#include "stlobs/monitor.hpp"
#include "stlobs/oracle.hpp"
#include "stlobs/trace.hpp"

namespace stlobs::conformance {

using oracle::Polarity;

/// One observed disagreement. (formula, trace) replays it deterministically.
struct Failure {
  std::string check;    // which comparison or invariant failed
  std::string formula;  // concrete syntax, parseable over trace.signals()
  Trace trace;
  std::optional<Tick> tick;
  std::string monitor;  // what the implementation produced
  std::string oracle;   // what the reference expected
  std::string detail;
};

struct ConformanceReport {
  std::uint64_t cases = 0;
  std::uint64_t failure_count = 0;  // may exceed failures.size()
  std::vector<Failure> failures;    // first ones only, see Options::max_failures
  double wall_time_s = 0.0;
  /// Informational lines (e.g. divergence between readings of a definition).
  std::vector<std::string> notes;

  bool passing() const { return failure_count == 0; }
  void add_failure(Failure f, std::size_t keep);
  void merge(ConformanceReport other, std::size_t keep);
};

std::string render_text(const ConformanceReport& report);
/// {"cases":..,"failures":[..],"wall_time_s":..,"passing":..,"failure_count":..,"notes":[..]}
std::string render_json(const ConformanceReport& report);

struct Options {
  Mutation mutation = Mutation::none;
  /// Worker threads; 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
  std::size_t max_failures = 32;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 20;

/// Every assignment of `num_atoms` boolean atoms over `length` ticks, in a
/// fixed order: the index read as a binary number, tick 0 most significant,
/// and within a tick the first atom most significant.
class TraceEnumeration {
 public:
  TraceEnumeration(unsigned num_atoms, Tick length, std::uint64_t cap = kDefaultEnumerationCap);

  std::uint64_t size() const { return size_; }
  unsigned num_atoms() const { return num_atoms_; }
  Tick length() const { return length_; }

  /// Truth values of trace `index`, one column per atom.
  std::vector<std::vector<bool>> columns(std::uint64_t index) const;
  /// The same assignment as a real-valued trace over signals "p" (and "q").
  Trace trace(std::uint64_t index) const;

 private:
  unsigned num_atoms_;
  Tick length_;
  std::uint64_t size_;
};

/// Throws std::invalid_argument when num_atoms is not 1 or 2, length is 0,
/// or the trace count exceeds `cap`.
TraceEnumeration enumerate_traces(unsigned num_atoms, Tick length,
                                  std::uint64_t cap = kDefaultEnumerationCap);

/// Signals used by the boolean conformance formulas.
const std::vector<std::string>& atom_signals(TemporalKind kind);

/// `F[a,b](p > 0)`, `G[a,b](p > 0)` or `(p > 0) U[a,b] (q > 0)`.
Formula operator_formula(TemporalKind kind, Interval iv);

/// For each kind and each 0 <= a < b <= max_b, runs the monitor on every
/// boolean operand trace of length b + 3 and compares its verdict with the
/// three-valued oracle at every tick, and at tick b with the offline verdict.
ConformanceReport differential_sweep(const std::vector<TemporalKind>& kinds, Tick max_b,
                                     const Options& options = {});

/// Monitor over [a, a+1] against the two-term unrolled form assembled from
/// point-sample cells, at every tick, over all operand traces of length a + 3.
bool check_induction_base(TemporalKind kind, Tick a, Polarity polarity,
                          ConformanceReport* report = nullptr, const Options& options = {});

/// Monitor over [a, b+1] against the monitor over [a, b] combined with point
/// samples at b + 1, over all operand traces of length b + 3. Checked at
/// every tick, except Until-negative which is checked from tick b + 1 on.
/// The combined value is also checked against the oracle.
bool check_induction_step(TemporalKind kind, Tick a, Tick b, Polarity polarity,
                          ConformanceReport* report = nullptr, const Options& options = {});

/// Base cases for a in [0, max_a] and steps for 0 <= a < b <= max_b, all
/// kinds and polarities.
ConformanceReport induction_suite(Tick max_a, Tick max_b, const Options& options = {});

/// Unrolled forms against the quantified definitions at tau = b for all
/// kinds, polarities and 0 <= a < b <= max_b. Divergence of the printed
/// Until-negative reading is recorded in notes, not as a failure.
ConformanceReport explicit_sweep(Tick max_b, const Options& options = {});

/// `F[a,b] p == true U[a,b] p` and `G[a,b] p == !F[a,b] !p` under the offline
/// semantics, for all 0 <= a < b <= max_b and boolean traces of length b + 2.
ConformanceReport identity_sweep(Tick max_b, const Options& options = {});

struct PropertyOptions {
  Tick max_bound = 20;
  Tick max_length = 50;
  Options base;
};

/// Randomised formulas and real-valued traces checked for: completeness and
/// disjointness per tick, immutability of both flags, determination from the
/// horizon on, verdict shape U*(T+|F+), constant state size (also against
/// the same formula with bounds 1000 ticks wider), and agreement with the
/// oracle on the last tick.
ConformanceReport property_suite(std::uint64_t seed, std::uint64_t cases,
                                 const PropertyOptions& options = {});

/// Shape check used by property_suite: U* followed by T+ or F+.
bool has_verdict_shape(const std::vector<VerdictRecord>& records);

}  // namespace stlobs::conformance
