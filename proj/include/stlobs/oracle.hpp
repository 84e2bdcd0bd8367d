#pragma once

#include <stdexcept>
#include <vector>

#include "stlobs/formula.hpp"
#include "stlobs/trace.hpp"
#include "stlobs/trilean.hpp"

// Brute-force reference semantics. Everything here is a direct transcription
// of the quantified definitions with nested loops; nothing is incremental, and
// nothing shares code with the monitor.

namespace stlobs::oracle {

/// The trace does not cover the ticks the requested evaluation needs.
class TraceTooShort : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two definitions that must agree did not. Indicates a defect in the
/// definitions themselves, never in the input.
class Inconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Value of a temporal-operator-free formula at tick t.
bool eval_propositional(const Formula& f, const Trace& trace, Tick t);

/// Two-valued offline satisfaction (X, t) |= f. Until uses the closed inner
/// range [t, t']. Requires trace.length() > t + horizon(f).
bool offline_eval(const Formula& f, const Trace& trace, Tick t);

/// Three-valued verdict of (X, 0) |= f after observing ticks 0..tau.
///
/// Evaluates the quantified positive and negative definitions of each
/// temporal operator, returns U when neither holds, and cross-checks the
/// stated Unknown definition against "neither". Ticks after tau are never
/// read. Requires prefix.length() > tau.
Trilean three_valued_eval(const Formula& f, const Trace& prefix, Tick tau);

enum class Polarity { positive, negative };

std::string_view to_string(Polarity p);

/// Term-by-term unrolled form of an operator over [a, b] at anchor 0.
/// Unary operators read `phi`; Until reads `phi` as its left operand and
/// `phi2` as its right one. Until-negative uses the set-based definition
/// (see until_false_explicit for the unrolled readings).
/// Requires operand traces covering ticks 0..b.
bool explicit_eval(TemporalKind kind, Interval iv, const std::vector<bool>& phi,
                   const std::vector<bool>& phi2, Polarity polarity);

/// Two readings of the unrolled Until-negative form. Its middle disjunct is
/// printed with the index `n2 - 1` for n2 in [a, n1], which also constrains
/// the tick a - 1 outside the interval.
enum class UntilFalseReading {
  as_printed,  // not phi2 on [a-1, n1-1]; tick -1 counts as satisfied
  shifted,     // not phi2 on [a, n1-1]
};

bool until_false_explicit(Interval iv, const std::vector<bool>& phi1,
                          const std::vector<bool>& phi2, UntilFalseReading reading);

/// For every temporal subformula of f with interval I and (right) operand
/// phi, checks offline at t = 0 that `F_I phi == true U_I phi` and
/// `G_I phi == !F_I !phi`. Requires trace.length() > horizon(f).
bool identity_check(const Formula& f, const Trace& trace);

}  // namespace stlobs::oracle
