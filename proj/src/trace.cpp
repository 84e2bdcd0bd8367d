#include "stlobs/trace.hpp"

#include <algorithm>

namespace stlobs {

Trace::Trace(std::vector<std::string> signals) : signals_(std::move(signals)) {
  for (std::size_t i = 0; i < signals_.size(); ++i) {
    for (std::size_t j = i + 1; j < signals_.size(); ++j) {
      if (signals_[i] == signals_[j]) {
        throw std::invalid_argument("duplicate signal name '" + signals_[i] + "'");
      }
    }
  }
}

std::span<const double> Trace::row(Tick t) const {
  if (t >= length()) throw std::out_of_range("tick " + std::to_string(t) + " beyond trace end");
  return std::span<const double>(values_).subspan(t * arity(), arity());
}

void Trace::push_back(std::span<const double> row) {
  if (row.size() != arity()) {
    throw std::invalid_argument("sample has " + std::to_string(row.size()) +
                                " values, trace declares " + std::to_string(arity()) +
                                " signals");
  }
  values_.insert(values_.end(), row.begin(), row.end());
}

std::size_t Trace::index_of(const std::string& name) const {
  auto it = std::find(signals_.begin(), signals_.end(), name);
  if (it == signals_.end()) throw std::out_of_range("signal '" + name + "' not in trace");
  return static_cast<std::size_t>(it - signals_.begin());
}

Trace Trace::prefix(std::size_t n) const {
  Trace out(signals_);
  out.values_.assign(values_.begin(),
                     values_.begin() + static_cast<std::ptrdiff_t>(std::min(n, length()) * arity()));
  return out;
}

Trace boolean_trace(const std::vector<std::string>& signals,
                    const std::vector<std::vector<bool>>& columns) {
  if (columns.size() != signals.size()) {
    throw std::invalid_argument("one column per signal required");
  }
  Trace out(signals);
  const std::size_t len = columns.empty() ? 0 : columns.front().size();
  std::vector<double> row(signals.size());
  for (std::size_t t = 0; t < len; ++t) {
    for (std::size_t s = 0; s < columns.size(); ++s) {
      if (columns[s].size() != len) throw std::invalid_argument("ragged boolean columns");
      row[s] = columns[s][t] ? 1.0 : 0.0;
    }
    out.push_back(row);
  }
  return out;
}

}  // namespace stlobs
