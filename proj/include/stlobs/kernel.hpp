#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "stlobs/formula.hpp"

namespace stlobs {

/// Flat dump of a cell's stored state, one entry per scalar. Used to check
/// that memory does not depend on interval bounds or trace length.
using StateVector = std::vector<std::int64_t>;

// Synchronous building blocks. Each cell is a deterministic step function
// over an explicit state record and is stepped exactly once per tick. The
// tick() counter is instrumentation only; no cell reads it.

/// `y = init -> pre(u)`.
class DelayCell {
 public:
  explicit DelayCell(bool init) : held_(init) {}

  /// Output at the current tick (before step()).
  bool output() const { return held_; }

  /// Returns the output at the current tick and stores `input` for the next one.
  bool step(bool input) {
    const bool out = held_;
    held_ = input;
    ++tick_;
    return out;
  }

  Tick tick() const { return tick_; }
  void append_state(StateVector& out) const { out.push_back(held_); }

 private:
  bool held_;
  Tick tick_ = 0;
};

/// `clk = min(0 -> pre clk + 1, bound)`: 0, 1, ..., bound, bound, ...
class SaturatingClock {
 public:
  explicit SaturatingClock(Tick bound) : bound_(bound) {
    if (bound < 1) throw std::invalid_argument("saturating clock bound must be >= 1");
  }

  Tick step() {
    value_ = started_ ? std::min(value_ + 1, bound_) : 0;
    started_ = true;
    ++tick_;
    return value_;
  }

  bool started() const { return started_; }
  /// Last output; meaningful once started().
  Tick value() const { return value_; }
  Tick bound() const { return bound_; }
  Tick tick() const { return tick_; }

  void append_state(StateVector& out) const {
    out.push_back(started_);
    out.push_back(static_cast<std::int64_t>(value_));
  }

 private:
  Tick bound_;
  Tick value_ = 0;
  bool started_ = false;
  Tick tick_ = 0;
};

/// True exactly while lo <= tick <= hi. Runs on a clock saturated at hi and
/// detects the end of the interval by the clock's previous value having
/// already reached hi.
class IntervalGate {
 public:
  IntervalGate(Tick lo, Tick hi) : lo_(lo), clock_(hi) {
    if (lo >= hi) throw std::invalid_argument("interval gate needs lo < hi");
  }

  bool step() {
    const bool exceeded = clock_.started() && clock_.value() == clock_.bound();
    const Tick clk = clock_.step();
    return clk >= lo_ && !exceeded;
  }

  Tick tick() const { return clock_.tick(); }
  void append_state(StateVector& out) const { clock_.append_state(out); }

 private:
  Tick lo_;
  SaturatingClock clock_;
};

/// True from the first tick where gate && prop held, forever after.
class LatchingExists {
 public:
  bool step(bool gate, bool prop) {
    latched_ = latched_ || (gate && prop);
    ++tick_;
    return latched_;
  }

  bool output() const { return latched_; }
  Tick tick() const { return tick_; }
  void append_state(StateVector& out) const { out.push_back(latched_); }

 private:
  bool latched_ = false;
  Tick tick_ = 0;
};

/// True while prop has held at every gated tick so far (vacuously true
/// before the gate first opens).
class LatchingForall {
 public:
  bool step(bool gate, bool prop) {
    holds_ = holds_ && (!gate || prop);
    ++tick_;
    return holds_;
  }

  bool output() const { return holds_; }
  Tick tick() const { return tick_; }
  void append_state(StateVector& out) const { out.push_back(holds_); }

 private:
  bool holds_ = true;
  Tick tick_ = 0;
};

/// `ok = if clk = k then P else (false -> pre ok)`: false before tick k,
/// then the value prop had at tick k. The clock saturates at k + 1.
class PointSample {
 public:
  explicit PointSample(Tick k) : k_(k), clock_(k + 1) {}

  bool step(bool prop) {
    if (clock_.step() == k_) ok_ = prop;
    return ok_;
  }

  bool output() const { return ok_; }
  Tick at() const { return k_; }
  Tick tick() const { return clock_.tick(); }
  void append_state(StateVector& out) const {
    clock_.append_state(out);
    out.push_back(ok_);
  }

 private:
  Tick k_;
  SaturatingClock clock_;
  bool ok_ = false;
};

}  // namespace stlobs
