#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace stlobs {

/// Discrete time: one tick per sample.
using Tick = std::uint64_t;

/// Relative interval [lo, hi] of a temporal operator. Well-formed when lo < hi.
struct Interval {
  Tick lo = 0;
  Tick hi = 1;

  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class Comparator { gt, ge, lt, le, eq, ne };

std::string_view to_string(Comparator c);
bool compare(double lhs, Comparator c, double rhs);

struct LinearTerm {
  double coeff = 1.0;
  std::string signal;

  friend bool operator==(const LinearTerm&, const LinearTerm&) = default;
};

/// `sum(coeff_i * signal_i) + constant  <cmp>  0`.
///
/// Equality and disequality compare sample values exactly; there is no
/// tolerance because traces are given data, not computed quantities.
struct AtomicPredicate {
  std::vector<LinearTerm> terms;
  double constant = 0.0;
  Comparator cmp = Comparator::gt;

  friend bool operator==(const AtomicPredicate&, const AtomicPredicate&) = default;
};

namespace detail {
struct Node;
}

/// Immutable, shareable STL formula. Copies share structure.
class Formula {
 public:
  explicit Formula(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}

  const detail::Node& node() const { return *node_; }

  template <typename T>
  const T* as() const;

  friend bool operator==(const Formula& lhs, const Formula& rhs);

 private:
  std::shared_ptr<const detail::Node> node_;
};

struct Atom {
  AtomicPredicate pred;
};
struct Constant {
  bool value = true;
};
struct Not {
  Formula operand;
};
struct And {
  Formula lhs, rhs;
};
struct Or {
  Formula lhs, rhs;
};
struct Implies {
  Formula lhs, rhs;
};
struct Always {
  Interval interval;
  Formula operand;
};
struct Eventually {
  Interval interval;
  Formula operand;
};
struct Until {
  Interval interval;
  Formula lhs, rhs;
};

namespace detail {
struct Node {
  std::variant<Atom, Constant, Not, And, Or, Implies, Always, Eventually, Until> v;
};
}  // namespace detail

template <typename T>
const T* Formula::as() const {
  return std::get_if<T>(&node_->v);
}

// Builders.
Formula atom(AtomicPredicate pred);
Formula constant(bool value);
Formula negation(Formula f);
Formula conjunction(Formula lhs, Formula rhs);
Formula disjunction(Formula lhs, Formula rhs);
Formula implication(Formula lhs, Formula rhs);
Formula always(Interval interval, Formula operand);
Formula eventually(Interval interval, Formula operand);
Formula until(Interval interval, Formula lhs, Formula rhs);

/// `signal > 0`, the boolean-atom convention used by enumerated traces.
Formula positive(const std::string& signal);

enum class TemporalKind { eventually, always, until };

std::string_view to_string(TemporalKind k);
/// Operator symbol as written in the concrete syntax: "F", "G" or "U".
std::string_view operator_symbol(TemporalKind k);

bool is_temporal(const Formula& f);
/// True when no temporal operator occurs anywhere in f.
bool is_propositional(const Formula& f);

struct Violation {
  enum class Kind { bad_interval, nested_temporal, empty_atom, non_finite };
  Kind kind;
  std::string path;  // e.g. "root.operand.lhs"
  std::string message;
};

/// Reports every invariant violation; empty when f is well-formed.
std::vector<Violation> validate(const Formula& f);

/// Tick by which the verdict of f at anchor 0 is necessarily determined.
Tick horizon(const Formula& f);

/// Signal names referenced by f, in order of first occurrence.
std::vector<std::string> referenced_signals(const Formula& f);

/// Number of temporal operators in f.
std::size_t temporal_count(const Formula& f);

/// Fully parenthesised concrete syntax; `parse(render(f)) == f`.
std::string render(const Formula& f);

}  // namespace stlobs
