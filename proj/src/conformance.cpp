#include "stlobs/conformance.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "numbers.hpp"

namespace stlobs::conformance {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Runs tasks on a small pool; results are merged in task order so reports do
// not depend on scheduling.
ConformanceReport run_tasks(std::vector<std::function<ConformanceReport()>> tasks,
                            const Options& options) {
  const auto start = Clock::now();
  std::vector<ConformanceReport> results(tasks.size());
  unsigned workers = options.threads ? options.threads : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(std::max<std::size_t>(tasks.size(), 1)));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) results[i] = tasks[i]();
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  ConformanceReport out;
  for (auto& r : results) out.merge(std::move(r), options.max_failures);
  out.wall_time_s = seconds_since(start);
  return out;
}

bool flag_of(const VerdictRecord& r, Polarity p) {
  return p == Polarity::positive ? r.flags.positive() : r.flags.negative();
}

std::string flag_text(bool v) { return v ? "1" : "0"; }

std::string case_name(TemporalKind kind, Interval iv, Polarity p) {
  return std::string(to_string(kind)) + "-" + std::string(to_string(p)) + " [" +
         std::to_string(iv.lo) + "," + std::to_string(iv.hi) + "]";
}

// Point samples of phi1, !phi1, phi2, !phi2 at ticks 0..last, built from
// kernel cells exactly as the proof nodes use P_at_k.
class SampledOperands {
 public:
  explicit SampledOperands(Tick last) {
    for (Tick k = 0; k <= last; ++k) {
      lhs_.emplace_back(k);
      not_lhs_.emplace_back(k);
      rhs_.emplace_back(k);
      not_rhs_.emplace_back(k);
    }
  }

  void step(bool phi1, bool phi2) {
    for (auto& c : lhs_) c.step(phi1);
    for (auto& c : not_lhs_) c.step(!phi1);
    for (auto& c : rhs_) c.step(phi2);
    for (auto& c : not_rhs_) c.step(!phi2);
  }

  bool lhs(Tick k) const { return lhs_[k].output(); }
  bool not_lhs(Tick k) const { return not_lhs_[k].output(); }
  bool rhs(Tick k) const { return rhs_[k].output(); }
  bool not_rhs(Tick k) const { return not_rhs_[k].output(); }

  bool lhs_through(Tick n) const {
    bool all = true;
    for (Tick m = 0; m <= n; ++m) all = all && lhs(m);
    return all;
  }

 private:
  std::vector<PointSample> lhs_, not_lhs_, rhs_, not_rhs_;
};

// Two-term unrolled form over [a, a+1].
bool two_term_form(TemporalKind kind, Polarity p, Tick a, const SampledOperands& s) {
  const bool pos = p == Polarity::positive;
  switch (kind) {
    case TemporalKind::eventually:
      return pos ? (s.lhs(a) || s.lhs(a + 1)) : (s.not_lhs(a) && s.not_lhs(a + 1));
    case TemporalKind::always:
      return pos ? (s.lhs(a) && s.lhs(a + 1)) : (s.not_lhs(a) || s.not_lhs(a + 1));
    case TemporalKind::until: {
      if (pos) {
        return (s.lhs_through(a) && s.rhs(a)) || (s.lhs_through(a + 1) && s.rhs(a + 1));
      }
      bool early = false;
      for (Tick n = 0; n <= a; ++n) early = early || s.not_lhs(n);
      return early || (s.not_lhs(a + 1) && s.not_rhs(a)) || (s.not_rhs(a) && s.not_rhs(a + 1));
    }
  }
  return false;
}

// Value over [a, b+1] from the value over [a, b] and samples at b + 1.
bool widened_form(TemporalKind kind, Polarity p, Tick b, bool narrow, const SampledOperands& s) {
  const bool pos = p == Polarity::positive;
  const Tick n = b + 1;
  switch (kind) {
    case TemporalKind::eventually: return pos ? (narrow || s.lhs(n)) : (narrow && s.not_lhs(n));
    case TemporalKind::always: return pos ? (narrow && s.lhs(n)) : (narrow || s.not_lhs(n));
    case TemporalKind::until: {
      const bool reached_at_n = s.lhs_through(n) && s.rhs(n);
      return pos ? (narrow || reached_at_n) : (narrow && !reached_at_n);
    }
  }
  return false;
}

// First tick at which the step obligation is claimed. Until-negative over
// [a, b] can fire at b while the [a, b+1] observer cannot before b + 1.
Tick step_guard(TemporalKind kind, Polarity p, Tick b) {
  return kind == TemporalKind::until && p == Polarity::negative ? b + 1 : 0;
}

unsigned atom_count(TemporalKind kind) { return kind == TemporalKind::until ? 2 : 1; }

bool operand_value(const Trace& tr, Tick t, std::size_t column) {
  return column < tr.arity() && tr.at(t, column) > 0.0;
}

nlohmann::json trace_json(const Trace& tr) {
  nlohmann::json samples = nlohmann::json::array();
  for (Tick t = 0; t < tr.length(); ++t) {
    auto row = tr.row(t);
    samples.push_back(std::vector<double>(row.begin(), row.end()));
  }
  return {{"signals", tr.signals()}, {"samples", samples}};
}

std::string trace_text(const Trace& tr) {
  std::string out;
  for (std::size_t s = 0; s < tr.arity(); ++s) {
    if (s) out += "; ";
    out += tr.signals()[s] + "=[";
    for (Tick t = 0; t < tr.length(); ++t) {
      if (t) out += ",";
      out += detail::format_double(tr.at(t, s));
    }
    out += "]";
  }
  return out;
}

}  // namespace

void ConformanceReport::add_failure(Failure f, std::size_t keep) {
  ++failure_count;
  if (failures.size() < keep) failures.push_back(std::move(f));
}

void ConformanceReport::merge(ConformanceReport other, std::size_t keep) {
  cases += other.cases;
  failure_count += other.failure_count;
  for (auto& f : other.failures) {
    if (failures.size() < keep) failures.push_back(std::move(f));
  }
  for (auto& n : other.notes) notes.push_back(std::move(n));
  wall_time_s += other.wall_time_s;
}

std::string render_text(const ConformanceReport& r) {
  std::ostringstream os;
  os << "cases: " << r.cases << "\n";
  os << "failures: " << r.failure_count << "\n";
  os << "wall time: " << detail::format_double(r.wall_time_s) << " s\n";
  for (const auto& n : r.notes) os << "note: " << n << "\n";
  for (std::size_t i = 0; i < r.failures.size(); ++i) {
    const auto& f = r.failures[i];
    os << "failure " << (i + 1) << ": [" << f.check << "] " << f.formula;
    if (f.tick) os << " tick=" << *f.tick;
    if (!f.monitor.empty()) os << " monitor=" << f.monitor;
    if (!f.oracle.empty()) os << " oracle=" << f.oracle;
    if (!f.detail.empty()) os << " (" << f.detail << ")";
    os << "\n  trace: " << trace_text(f.trace) << "\n";
  }
  os << "status: " << (r.passing() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string render_json(const ConformanceReport& r) {
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& f : r.failures) {
    failures.push_back({{"check", f.check},
                        {"formula", f.formula},
                        {"trace", trace_json(f.trace)},
                        {"tick", f.tick ? nlohmann::json(*f.tick) : nlohmann::json(nullptr)},
                        {"monitor", f.monitor},
                        {"oracle", f.oracle},
                        {"detail", f.detail}});
  }
  nlohmann::json j = {{"cases", r.cases},
                      {"failures", failures},
                      {"failure_count", r.failure_count},
                      {"wall_time_s", r.wall_time_s},
                      {"passing", r.passing()},
                      {"notes", r.notes}};
  return j.dump();
}

TraceEnumeration::TraceEnumeration(unsigned num_atoms, Tick length, std::uint64_t cap)
    : num_atoms_(num_atoms), length_(length), size_(0) {
  if (num_atoms != 1 && num_atoms != 2) {
    throw std::invalid_argument("trace enumeration supports 1 or 2 atoms");
  }
  if (length < 1) throw std::invalid_argument("trace enumeration needs length >= 1");
  const std::uint64_t bits = num_atoms * length;
  if (bits >= 63 || (std::uint64_t{1} << bits) > cap) {
    throw std::invalid_argument("enumerating " + std::to_string(num_atoms) + " atom(s) over " +
                                std::to_string(length) + " ticks exceeds the cap of " +
                                std::to_string(cap) + " traces");
  }
  size_ = std::uint64_t{1} << bits;
}

std::vector<std::vector<bool>> TraceEnumeration::columns(std::uint64_t index) const {
  if (index >= size_) throw std::out_of_range("trace index out of range");
  std::vector<std::vector<bool>> cols(num_atoms_, std::vector<bool>(length_));
  unsigned bit = num_atoms_ * static_cast<unsigned>(length_);
  for (Tick t = 0; t < length_; ++t) {
    for (unsigned j = 0; j < num_atoms_; ++j) {
      --bit;
      cols[j][t] = (index >> bit) & 1u;
    }
  }
  return cols;
}

Trace TraceEnumeration::trace(std::uint64_t index) const {
  static const std::vector<std::string> one = {"p"};
  static const std::vector<std::string> two = {"p", "q"};
  return boolean_trace(num_atoms_ == 1 ? one : two, columns(index));
}

TraceEnumeration enumerate_traces(unsigned num_atoms, Tick length, std::uint64_t cap) {
  return TraceEnumeration(num_atoms, length, cap);
}

const std::vector<std::string>& atom_signals(TemporalKind kind) {
  static const std::vector<std::string> one = {"p"};
  static const std::vector<std::string> two = {"p", "q"};
  return kind == TemporalKind::until ? two : one;
}

Formula operator_formula(TemporalKind kind, Interval iv) {
  switch (kind) {
    case TemporalKind::eventually: return eventually(iv, positive("p"));
    case TemporalKind::always: return always(iv, positive("p"));
    case TemporalKind::until: return until(iv, positive("p"), positive("q"));
  }
  throw std::invalid_argument("unknown temporal kind");
}

namespace {

ConformanceReport sweep_cell(TemporalKind kind, Interval iv, const Options& options) {
  ConformanceReport report;
  const Formula f = operator_formula(kind, iv);
  const std::string text = render(f);
  const Monitor proto = Monitor::compile(f, atom_signals(kind), {options.mutation});
  const auto traces = enumerate_traces(atom_count(kind), iv.hi + 3);
  for (std::uint64_t i = 0; i < traces.size(); ++i) {
    const Trace tr = traces.trace(i);
    ++report.cases;
    Monitor m = proto;
    std::vector<VerdictRecord> records;
    try {
      records = m.run(tr);
    } catch (const std::exception& e) {
      report.add_failure({"consistency", text, tr, m.tick(), "", "", e.what()}, options.max_failures);
      continue;
    }
    for (Tick tau = 0; tau < records.size(); ++tau) {
      const Trilean expected = oracle::three_valued_eval(f, tr, tau);
      if (records[tau].verdict != expected) {
        report.add_failure({"monitor-vs-oracle", text, tr, tau,
                            std::string(to_string(records[tau].verdict)),
                            std::string(to_string(expected)), "first divergent tick"},
                           options.max_failures);
        break;
      }
    }
    const bool offline = oracle::offline_eval(f, tr, 0);
    const Trilean at_b = records[iv.hi].verdict;
    if ((at_b == Trilean::T) != offline || (at_b == Trilean::F) != !offline) {
      report.add_failure({"online-vs-offline", text, tr, iv.hi, std::string(to_string(at_b)),
                          offline ? "true" : "false", "verdict at tick b vs offline verdict"},
                         options.max_failures);
    }
  }
  return report;
}

}  // namespace

ConformanceReport differential_sweep(const std::vector<TemporalKind>& kinds, Tick max_b,
                                     const Options& options) {
  if (max_b < 2) throw std::invalid_argument("differential sweep needs max_b >= 2");
  std::vector<std::function<ConformanceReport()>> tasks;
  for (const auto kind : kinds) {
    for (Tick b = 1; b <= max_b; ++b) {
      for (Tick a = 0; a < b; ++a) {
        tasks.emplace_back([=] { return sweep_cell(kind, {a, b}, options); });
      }
    }
  }
  return run_tasks(std::move(tasks), options);
}

bool check_induction_base(TemporalKind kind, Tick a, Polarity polarity, ConformanceReport* report,
                          const Options& options) {
  const Interval iv{a, a + 1};
  const Formula f = operator_formula(kind, iv);
  const Monitor proto = Monitor::compile(f, atom_signals(kind), {options.mutation});
  const auto traces = enumerate_traces(atom_count(kind), a + 3);
  bool holds = true;
  for (std::uint64_t i = 0; i < traces.size(); ++i) {
    const Trace tr = traces.trace(i);
    if (report) ++report->cases;
    Monitor m = proto;
    SampledOperands samples(a + 1);
    for (Tick t = 0; t < tr.length(); ++t) {
      const VerdictRecord r = m.step(tr.row(t));
      samples.step(operand_value(tr, t, 0), operand_value(tr, t, 1));
      const bool expected = two_term_form(kind, polarity, a, samples);
      if (flag_of(r, polarity) != expected) {
        holds = false;
        if (report) {
          report->add_failure({"induction-base " + case_name(kind, iv, polarity), render(f), tr, t,
                               flag_text(flag_of(r, polarity)), flag_text(expected),
                               "monitor flag vs two-term unrolled form"},
                              options.max_failures);
        }
        break;
      }
    }
  }
  return holds;
}

bool check_induction_step(TemporalKind kind, Tick a, Tick b, Polarity polarity,
                          ConformanceReport* report, const Options& options) {
  if (a >= b) throw std::invalid_argument("induction step needs a < b");
  const Formula narrow_f = operator_formula(kind, {a, b});
  const Formula wide_f = operator_formula(kind, {a, b + 1});
  const Monitor narrow_proto = Monitor::compile(narrow_f, atom_signals(kind), {options.mutation});
  const Monitor wide_proto = Monitor::compile(wide_f, atom_signals(kind), {options.mutation});
  const auto traces = enumerate_traces(atom_count(kind), b + 3);
  bool holds = true;
  auto fail = [&](const Trace& tr, Tick t, bool got, bool want, const std::string& what) {
    holds = false;
    if (report) {
      report->add_failure({"induction-step " + case_name(kind, {a, b + 1}, polarity),
                           render(wide_f), tr, t, flag_text(got), flag_text(want), what},
                          options.max_failures);
    }
  };
  for (std::uint64_t i = 0; i < traces.size(); ++i) {
    const Trace tr = traces.trace(i);
    if (report) ++report->cases;
    Monitor narrow = narrow_proto;
    Monitor wide = wide_proto;
    SampledOperands samples(b + 1);
    for (Tick t = 0; t < tr.length(); ++t) {
      const VerdictRecord rn = narrow.step(tr.row(t));
      const VerdictRecord rw = wide.step(tr.row(t));
      samples.step(operand_value(tr, t, 0), operand_value(tr, t, 1));
      if (t < step_guard(kind, polarity, b)) continue;
      const bool combined = widened_form(kind, polarity, b, flag_of(rn, polarity), samples);
      const Trilean reference = oracle::three_valued_eval(wide_f, tr, t);
      const bool reference_flag =
          reference == (polarity == Polarity::positive ? Trilean::T : Trilean::F);
      if (flag_of(rw, polarity) != combined) {
        fail(tr, t, flag_of(rw, polarity), combined, "wide monitor vs narrow monitor + sample at b+1");
        break;
      }
      if (combined != reference_flag) {
        fail(tr, t, combined, reference_flag, "combination vs oracle");
        break;
      }
    }
  }
  return holds;
}

ConformanceReport induction_suite(Tick max_a, Tick max_b, const Options& options) {
  std::vector<std::function<ConformanceReport()>> tasks;
  const TemporalKind kinds[] = {TemporalKind::eventually, TemporalKind::always, TemporalKind::until};
  const Polarity polarities[] = {Polarity::positive, Polarity::negative};
  for (const auto kind : kinds) {
    for (const auto pol : polarities) {
      for (Tick a = 0; a <= max_a; ++a) {
        tasks.emplace_back([=] {
          ConformanceReport r;
          check_induction_base(kind, a, pol, &r, options);
          return r;
        });
      }
      for (Tick b = 1; b <= max_b; ++b) {
        for (Tick a = 0; a < b; ++a) {
          tasks.emplace_back([=] {
            ConformanceReport r;
            check_induction_step(kind, a, b, pol, &r, options);
            return r;
          });
        }
      }
    }
  }
  return run_tasks(std::move(tasks), options);
}

ConformanceReport explicit_sweep(Tick max_b, const Options& options) {
  const auto start = Clock::now();
  ConformanceReport report;
  std::uint64_t until_neg_cases = 0;
  std::uint64_t printed_divergent = 0;
  std::string first_divergent;
  const TemporalKind kinds[] = {TemporalKind::eventually, TemporalKind::always, TemporalKind::until};
  for (const auto kind : kinds) {
    for (Tick b = 1; b <= max_b; ++b) {
      for (Tick a = 0; a < b; ++a) {
        const Interval iv{a, b};
        const Formula f = operator_formula(kind, iv);
        const auto traces = enumerate_traces(atom_count(kind), b + 1);
        for (std::uint64_t i = 0; i < traces.size(); ++i) {
          const auto cols = traces.columns(i);
          const Trace tr = traces.trace(i);
          const std::vector<bool> none;
          const auto& phi2 = cols.size() > 1 ? cols[1] : none;
          const Trilean quantified = oracle::three_valued_eval(f, tr, b);
          for (const auto pol : {Polarity::positive, Polarity::negative}) {
            ++report.cases;
            const bool want = quantified == (pol == Polarity::positive ? Trilean::T : Trilean::F);
            const bool got = oracle::explicit_eval(kind, iv, cols[0], phi2, pol);
            if (got != want) {
              report.add_failure({"explicit-vs-quantified " + case_name(kind, iv, pol), render(f),
                                  tr, b, flag_text(got), flag_text(want), ""},
                                 options.max_failures);
            }
          }
          if (kind == TemporalKind::until) {
            ++until_neg_cases;
            const bool want = quantified == Trilean::F;
            const bool shifted = oracle::until_false_explicit(iv, cols[0], phi2,
                                                              oracle::UntilFalseReading::shifted);
            if (shifted != want) {
              report.add_failure({"until-negative unrolled (shifted reading)", render(f), tr, b,
                                  flag_text(shifted), flag_text(want), ""},
                                 options.max_failures);
            }
            const bool printed = oracle::until_false_explicit(
                iv, cols[0], phi2, oracle::UntilFalseReading::as_printed);
            if (printed != want) {
              if (printed_divergent++ == 0) first_divergent = render(f) + " on " + trace_text(tr);
            }
          }
        }
      }
    }
  }
  if (until_neg_cases) {
    std::string note = "until-negative unrolled form, printed index reading (n2-1): diverges from "
                       "the quantified definition on " +
                       std::to_string(printed_divergent) + " of " +
                       std::to_string(until_neg_cases) + " traces";
    if (printed_divergent) note += "; first: " + first_divergent;
    report.notes.push_back(note + "; shifted reading agrees everywhere it was checked");
  }
  report.wall_time_s = seconds_since(start);
  return report;
}

ConformanceReport identity_sweep(Tick max_b, const Options& options) {
  const auto start = Clock::now();
  ConformanceReport report;
  for (Tick b = 1; b <= max_b; ++b) {
    for (Tick a = 0; a < b; ++a) {
      const Formula f = eventually({a, b}, positive("p"));
      const auto traces = enumerate_traces(1, b + 2);
      for (std::uint64_t i = 0; i < traces.size(); ++i) {
        const Trace tr = traces.trace(i);
        ++report.cases;
        if (!oracle::identity_check(f, tr)) {
          report.add_failure({"definitional identity", render(f), tr, 0, "", "",
                              "F = true U p or G = !F !p disagrees offline"},
                             options.max_failures);
        }
      }
    }
  }
  report.wall_time_s = seconds_since(start);
  return report;
}

bool has_verdict_shape(const std::vector<VerdictRecord>& records) {
  std::size_t i = 0;
  while (i < records.size() && records[i].verdict == Trilean::U) ++i;
  if (i == records.size()) return true;
  const Trilean final = records[i].verdict;
  for (; i < records.size(); ++i) {
    if (records[i].verdict != final) return false;
  }
  return true;
}

namespace {

class FormulaGenerator {
 public:
  explicit FormulaGenerator(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(int percent) { return uniform(1, 100) <= percent; }

  template <typename T, std::size_t N>
  const T& pick(const T (&items)[N]) {
    return items[static_cast<std::size_t>(uniform(0, static_cast<int>(N) - 1))];
  }

  double sample_value() {
    static const double values[] = {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0};
    return pick(values);
  }

  Formula atomic() {
    static const double coeffs[] = {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0};
    static const double constants[] = {-1.0, -0.5, 0.0, 0.5, 1.0};
    static const Comparator cmps[] = {Comparator::gt, Comparator::ge, Comparator::lt,
                                      Comparator::le, Comparator::eq, Comparator::ne};
    AtomicPredicate p;
    if (coin(70)) {
      p.terms.push_back({pick(coeffs), coin(50) ? "x" : "y"});
    } else {
      p.terms.push_back({pick(coeffs), "x"});
      p.terms.push_back({pick(coeffs), "y"});
    }
    p.constant = pick(constants);
    p.cmp = pick(cmps);
    return atom(std::move(p));
  }

  Formula propositional(int depth) {
    if (depth == 0 || coin(50)) return coin(3) ? constant(coin(50)) : atomic();
    switch (uniform(0, 3)) {
      case 0: return negation(propositional(depth - 1));
      case 1: return conjunction(propositional(depth - 1), propositional(depth - 1));
      case 2: return disjunction(propositional(depth - 1), propositional(depth - 1));
      default: return implication(propositional(depth - 1), propositional(depth - 1));
    }
  }

  Interval interval(Tick max_b) {
    const Tick b = static_cast<Tick>(uniform(1, static_cast<int>(max_b)));
    const Tick a = static_cast<Tick>(uniform(0, static_cast<int>(b) - 1));
    return {a, b};
  }

  Formula temporal(Tick max_b) {
    const Interval iv = interval(max_b);
    switch (uniform(0, 2)) {
      case 0: return eventually(iv, propositional(1));
      case 1: return always(iv, propositional(1));
      default: return until(iv, propositional(1), propositional(1));
    }
  }

  Formula top(Tick max_b, int depth) {
    if (depth == 0 || coin(40)) return coin(85) ? temporal(max_b) : propositional(1);
    switch (uniform(0, 3)) {
      case 0: return negation(top(max_b, depth - 1));
      case 1: return conjunction(top(max_b, depth - 1), top(max_b, depth - 1));
      case 2: return disjunction(top(max_b, depth - 1), top(max_b, depth - 1));
      default: return implication(top(max_b, depth - 1), top(max_b, depth - 1));
    }
  }

  Trace trace(Tick max_length) {
    Trace tr({"x", "y"});
    const int len = uniform(0, static_cast<int>(max_length));
    for (int t = 0; t < len; ++t) {
      const double row[] = {sample_value(), sample_value()};
      tr.push_back(row);
    }
    return tr;
  }

 private:
  std::mt19937_64 rng_;
};

Formula widen(const Formula& f, Tick extra) {
  if (is_propositional(f)) return f;
  if (auto x = f.as<Not>()) return negation(widen(x->operand, extra));
  if (auto x = f.as<And>()) return conjunction(widen(x->lhs, extra), widen(x->rhs, extra));
  if (auto x = f.as<Or>()) return disjunction(widen(x->lhs, extra), widen(x->rhs, extra));
  if (auto x = f.as<Implies>()) return implication(widen(x->lhs, extra), widen(x->rhs, extra));
  if (auto x = f.as<Eventually>()) return eventually({x->interval.lo, x->interval.hi + extra}, x->operand);
  if (auto x = f.as<Always>()) return always({x->interval.lo, x->interval.hi + extra}, x->operand);
  const auto* u = f.as<Until>();
  return until({u->interval.lo, u->interval.hi + extra}, u->lhs, u->rhs);
}

void check_case(const Formula& f, const Trace& tr, const Options& options, ConformanceReport& report) {
  const std::string text = render(f);
  auto fail = [&](std::string check, std::optional<Tick> tick, std::string got, std::string want,
                  std::string detail) {
    report.add_failure({std::move(check), text, tr, tick, std::move(got), std::move(want),
                        std::move(detail)},
                       options.max_failures);
  };

  Monitor m = Monitor::compile(f, tr.signals(), {options.mutation});
  const std::size_t state_size = m.state().size();
  const std::size_t wide_size =
      Monitor::compile(widen(f, 1000), tr.signals(), {options.mutation}).state().size();
  if (wide_size != state_size) {
    fail("state-size", std::nullopt, std::to_string(state_size), std::to_string(wide_size),
         "state size changes when bounds grow by 1000 ticks");
  }

  std::vector<VerdictRecord> records;
  try {
    for (Tick t = 0; t < tr.length(); ++t) {
      records.push_back(m.step(tr.row(t)));
      if (m.state().size() != state_size) {
        fail("state-size", t, std::to_string(m.state().size()), std::to_string(state_size),
             "state size changed while running");
        return;
      }
    }
  } catch (const std::exception& e) {
    fail("completeness/disjointness", m.tick(), "", "", e.what());
    return;
  }

  const Tick h = horizon(f);
  for (Tick t = 0; t < records.size(); ++t) {
    const auto& r = records[t];
    const int raised = int(r.flags.positive()) + int(r.flags.negative()) + int(r.flags.unknown());
    if (raised != 1 || r.verdict != from_flags(r.flags) || r.tick != t) {
      fail("completeness/disjointness", t, std::string(to_string(r.verdict)), "", "");
      return;
    }
    if (t > 0) {
      const auto& prev = records[t - 1].flags;
      if ((prev.positive() && !r.flags.positive()) || (prev.negative() && !r.flags.negative())) {
        fail("immutability", t, std::string(to_string(r.verdict)),
             std::string(to_string(records[t - 1].verdict)), "a raised flag dropped");
        return;
      }
    }
    if (t >= h && r.verdict == Trilean::U) {
      fail("determination", t, "U", "T or F", "horizon " + std::to_string(h));
      return;
    }
  }
  if (!has_verdict_shape(records)) {
    fail("verdict-shape", std::nullopt, "", "U*(T+|F+)", "");
    return;
  }
  if (!records.empty()) {
    const Tick last = records.size() - 1;
    const Trilean want = oracle::three_valued_eval(f, tr, last);
    if (records.back().verdict != want) {
      fail("monitor-vs-oracle", last, std::string(to_string(records.back().verdict)),
           std::string(to_string(want)), "last tick");
    }
  }
}

}  // namespace

ConformanceReport property_suite(std::uint64_t seed, std::uint64_t cases,
                                 const PropertyOptions& options) {
  if (cases < 1) throw std::invalid_argument("property suite needs at least one case");
  const auto start = Clock::now();
  ConformanceReport report;
  FormulaGenerator gen(seed);
  for (std::uint64_t i = 0; i < cases; ++i) {
    const Formula f = gen.top(options.max_bound, 2);
    const Trace tr = gen.trace(options.max_length);
    ++report.cases;
    check_case(f, tr, options.base, report);
  }
  report.wall_time_s = seconds_since(start);
  return report;
}

}  // namespace stlobs::conformance
