#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "stlobs/formula.hpp"

namespace stlobs {

/// Finite discrete-time trace: one row of signal values per tick, ticks
/// contiguous from 0. Stored row-major.
class Trace {
 public:
  Trace() = default;
  explicit Trace(std::vector<std::string> signals);

  const std::vector<std::string>& signals() const { return signals_; }
  std::size_t arity() const { return signals_.size(); }
  /// Number of ticks.
  std::size_t length() const { return arity() == 0 ? 0 : values_.size() / arity(); }
  bool empty() const { return values_.empty(); }

  std::span<const double> row(Tick t) const;
  double at(Tick t, std::size_t signal) const { return values_[t * arity() + signal]; }

  /// Throws std::invalid_argument on arity mismatch.
  void push_back(std::span<const double> row);

  /// Index of `name` in signals(); throws std::out_of_range when absent.
  std::size_t index_of(const std::string& name) const;

  /// First n ticks.
  Trace prefix(std::size_t n) const;

  friend bool operator==(const Trace&, const Trace&) = default;

 private:
  std::vector<std::string> signals_;
  std::vector<double> values_;
};

/// Builds a trace over `signals` from per-signal truth sequences, encoding
/// true as 1.0 and false as 0.0 so that `positive(name)` reads them back.
Trace boolean_trace(const std::vector<std::string>& signals,
                    const std::vector<std::vector<bool>>& columns);

}  // namespace stlobs
