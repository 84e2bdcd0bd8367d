#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "stlobs/formula.hpp"
#include "stlobs/kernel.hpp"
#include "stlobs/operators.hpp"
#include "stlobs/trace.hpp"
#include "stlobs/trilean.hpp"

namespace stlobs {

/// Deliberate defects used to prove that the conformance checks catch
/// broken monitors. Production code always compiles with `none`.
enum class Mutation {
  none,
  drop_latch,          // positive flag holds only on the tick it fires
  kleene_and_unknown,  // U and U evaluates to F
};

struct CompileOptions {
  Mutation mutation = Mutation::none;
};

struct RunOptions {
  /// Stop after the first record whose verdict is not U.
  bool early_stop = false;
};

struct VerdictRecord {
  Tick tick = 0;
  FlagPair flags;
  Trilean verdict = Trilean::U;

  friend bool operator==(const VerdictRecord&, const VerdictRecord&) = default;
};

class CompileError : public std::invalid_argument {
 public:
  CompileError(const std::string& what, std::vector<Violation> violations)
      : std::invalid_argument(what), violations_(std::move(violations)) {}
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// A sample does not match the signals the monitor was compiled for.
class SampleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Online three-valued monitor of a non-nested STL formula anchored at
/// tick 0.
///
/// Each temporal operator compiles to one positive and one negative
/// observer cell; propositional structure above them is combined with the
/// Kleene connectives, and propositional parts outside any temporal operator
/// are sampled once at tick 0. The verdict at each tick is derived from the
/// two root flags, so Unknown is never computed on its own.
///
/// Memory is fixed at compile time. A monitor is stepped by one caller at a
/// time; it may be moved to another thread between steps.
class Monitor {
 public:
  /// `signals` fixes the sample layout and must cover every signal the
  /// formula references. Throws CompileError when validate(f) is not empty.
  static Monitor compile(const Formula& f, std::vector<std::string> signals,
                         CompileOptions options = {});
  /// Sample layout = referenced_signals(f).
  static Monitor compile(const Formula& f, CompileOptions options = {});

  /// Values in signals() order.
  VerdictRecord step(std::span<const double> sample);
  /// Keys must be exactly signals().
  VerdictRecord step(const std::map<std::string, double>& sample);

  /// Steps once per tick of `trace`, matching columns by signal name.
  std::vector<VerdictRecord> run(const Trace& trace, RunOptions options = {});

  /// Number of step() calls so far.
  Tick tick() const { return tick_; }
  const Formula& formula() const { return formula_; }
  const std::vector<std::string>& signals() const { return signals_; }

  /// Positive plus negative observer cells (two per temporal operator).
  std::size_t temporal_cell_count() const;
  /// Concatenated state of every cell in the network.
  StateVector state() const;

 private:
  struct Linear {
    std::vector<std::pair<std::size_t, double>> terms;
    double constant = 0.0;
    Comparator cmp = Comparator::gt;
  };
  // Propositional expression, evaluated on the raw sample.
  struct Prop {
    enum class Op { atom, constant, negate, conj, disj, impl } op;
    std::size_t lhs = 0, rhs = 0;
    Linear atom;
    bool value = false;
  };

  struct Anchored {
    std::size_t expr;
    PointSample at_zero{0};
  };
  struct EventuallyUnit {
    std::size_t phi;
    EventuallyTrueCell pos;
    EventuallyFalseCell neg;
  };
  struct AlwaysUnit {
    std::size_t phi;
    AlwaysTrueCell pos;
    AlwaysFalseCell neg;
  };
  struct UntilUnit {
    std::size_t phi1, phi2;
    UntilTrueCell pos;
    UntilFalseCell neg;
  };
  struct NotNode {
    std::size_t child;
  };
  struct BinaryNode {
    enum class Op { conj, disj, impl } op;
    std::size_t lhs, rhs;
  };
  struct Node {
    std::variant<Anchored, EventuallyUnit, AlwaysUnit, UntilUnit, NotNode, BinaryNode> v;
    bool last_positive = false;  // drop_latch mutation only
  };

  Monitor(Formula f, std::vector<std::string> signals, CompileOptions options);

  std::size_t compile_prop(const Formula& f);
  std::size_t compile_node(const Formula& f);
  bool eval(std::size_t prop, std::span<const double> sample) const;

  Formula formula_;
  std::vector<std::string> signals_;
  CompileOptions options_;
  std::vector<Prop> props_;
  std::vector<Node> nodes_;  // children precede parents; root is last
  std::vector<FlagPair> outputs_;
  Tick tick_ = 0;
};

}  // namespace stlobs
