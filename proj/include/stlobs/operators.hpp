#pragma once

#include "stlobs/formula.hpp"
#include "stlobs/kernel.hpp"

namespace stlobs {

// Positive ("true") and negative ("false") observers of the three temporal
// operators, anchored at tick 0. Each one is a fixed composition of kernel
// cells, so its state size depends on neither the interval nor the trace
// length. They mirror the generated Lustre nodes one to one.

/// Fires once phi has held at some tick in [a, min(now, b)].
class EventuallyTrueCell {
 public:
  explicit EventuallyTrueCell(Interval iv) : gate_(iv.lo, iv.hi) {}

  bool step(bool phi) { return found_.step(gate_.step(), phi); }

  void append_state(StateVector& out) const {
    gate_.append_state(out);
    found_.append_state(out);
  }

 private:
  IntervalGate gate_;
  LatchingExists found_;
};

/// Fires at tick b when phi failed throughout [a, b].
class EventuallyFalseCell {
 public:
  explicit EventuallyFalseCell(Interval iv) : hi_(iv.hi), clock_(iv.hi), gate_(iv.lo, iv.hi) {}

  bool step(bool phi) {
    const Tick clk = clock_.step();
    const bool never = absent_.step(gate_.step(), !phi);
    return clk >= hi_ && never;
  }

  void append_state(StateVector& out) const {
    clock_.append_state(out);
    gate_.append_state(out);
    absent_.append_state(out);
  }

 private:
  Tick hi_;
  SaturatingClock clock_;
  IntervalGate gate_;
  LatchingForall absent_;
};

/// Fires at tick b when phi held throughout [a, b].
class AlwaysTrueCell {
 public:
  explicit AlwaysTrueCell(Interval iv) : hi_(iv.hi), clock_(iv.hi), gate_(iv.lo, iv.hi) {}

  bool step(bool phi) {
    const Tick clk = clock_.step();
    const bool held = held_.step(gate_.step(), phi);
    return clk >= hi_ && held;
  }

  void append_state(StateVector& out) const {
    clock_.append_state(out);
    gate_.append_state(out);
    held_.append_state(out);
  }

 private:
  Tick hi_;
  SaturatingClock clock_;
  IntervalGate gate_;
  LatchingForall held_;
};

/// Fires at the first failure of phi inside [a, b].
class AlwaysFalseCell {
 public:
  explicit AlwaysFalseCell(Interval iv) : gate_(iv.lo, iv.hi) {}

  bool step(bool phi) { return failed_.step(gate_.step(), !phi); }

  void append_state(StateVector& out) const {
    gate_.append_state(out);
    failed_.append_state(out);
  }

 private:
  IntervalGate gate_;
  LatchingExists failed_;
};

/// Fires at the first t1 in [a, b] with phi2 at t1 and phi1 on all of [0, t1].
class UntilTrueCell {
 public:
  explicit UntilTrueCell(Interval iv) : in_ab_(iv.lo, iv.hi), in_0b_(0, iv.hi) {}

  bool step(bool phi1, bool phi2) {
    const bool ab = in_ab_.step();
    const bool lhs_so_far = lhs_held_.step(in_0b_.step(), phi1);
    return reached_.step(ab, phi2 && lhs_so_far);
  }

  void append_state(StateVector& out) const {
    in_ab_.append_state(out);
    in_0b_.append_state(out);
    lhs_held_.append_state(out);
    reached_.append_state(out);
  }

 private:
  IntervalGate in_ab_;
  IntervalGate in_0b_;
  LatchingForall lhs_held_;
  LatchingExists reached_;
};

/// Violation observer of phi1 U[a,b] phi2:
///   - at tick 0, violated iff phi1 is false;
///   - phi1 false at a tick <= a;
///   - inside (a, b]: phi1 failed in [a, now] with no satisfaction yet;
///   - from b on: no satisfaction inside [a, b];
///   - violated forever once violated.
class UntilFalseCell {
 public:
  explicit UntilFalseCell(Interval iv)
      : lo_(iv.lo), hi_(iv.hi), clock_(iv.hi), in_ab_(iv.lo, iv.hi), in_0b_(0, iv.hi) {}

  bool step(bool phi1, bool phi2) {
    const Tick clk = clock_.step();
    const bool ab = in_ab_.step();
    const bool lhs_so_far = lhs_held_.step(in_0b_.step(), phi1);
    const bool reached = reached_.step(ab, phi2 && lhs_so_far);
    const bool lhs_failed = lhs_failed_.step(ab, !phi1);
    const bool initial = first_.step(false);

    bool result;
    if (initial) {
      result = !phi1;
    } else {
      result = (clk <= lo_ && !phi1) ||
               (clk > lo_ && clk <= hi_ && lhs_failed && !reached) ||
               (clk >= hi_ && !reached) ||
               previous_.output();
    }
    previous_.step(result);
    return result;
  }

  void append_state(StateVector& out) const {
    clock_.append_state(out);
    in_ab_.append_state(out);
    in_0b_.append_state(out);
    lhs_held_.append_state(out);
    reached_.append_state(out);
    lhs_failed_.append_state(out);
    first_.append_state(out);
    previous_.append_state(out);
  }

 private:
  Tick lo_;
  Tick hi_;
  SaturatingClock clock_;
  IntervalGate in_ab_;
  IntervalGate in_0b_;
  LatchingForall lhs_held_;
  LatchingExists reached_;
  LatchingExists lhs_failed_;
  DelayCell first_{true};
  DelayCell previous_{false};
};

}  // namespace stlobs
