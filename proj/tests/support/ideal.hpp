#pragma once

// Test-side reference for single temporal operators over boolean operands.
// The verdict at tau is decided by brute force over every completion of the
// observed prefix: T when all completions satisfy the operator, F when none
// do, U otherwise. Only suitable for tiny bounds.

#include <cstdint>
#include <vector>

#include "stlobs/formula.hpp"
#include "stlobs/trilean.hpp"

namespace ideal {

using Bits = std::vector<bool>;
using stlobs::Tick;

inline bool offline(stlobs::TemporalKind kind, Tick a, Tick b, const Bits& p, const Bits& q) {
  using stlobs::TemporalKind;
  switch (kind) {
    case TemporalKind::eventually:
      for (Tick t = a; t <= b; ++t)
        if (p[t]) return true;
      return false;
    case TemporalKind::always:
      for (Tick t = a; t <= b; ++t)
        if (!p[t]) return false;
      return true;
    case TemporalKind::until:
      for (Tick t = a; t <= b; ++t) {
        bool lhs = true;
        for (Tick s = 0; s <= t; ++s) lhs = lhs && p[s];
        if (lhs && q[t]) return true;
      }
      return false;
  }
  return false;
}

/// p and q hold at least tau+1 observed values; q is ignored unless until.
inline stlobs::Trilean verdict(stlobs::TemporalKind kind, Tick a, Tick b, const Bits& p,
                               const Bits& q, Tick tau) {
  const Tick len = b + 1;
  const Tick known = tau + 1 < len ? tau + 1 : len;
  const Tick free_ticks = len - known;
  const unsigned width = kind == stlobs::TemporalKind::until ? 2 : 1;
  bool any_true = false, any_false = false;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << (width * free_ticks)); ++m) {
    Bits pp(len), qq(len);
    for (Tick t = 0; t < len; ++t) {
      if (t < known) {
        pp[t] = p[t];
        qq[t] = width == 2 && q[t];
      } else {
        const Tick bit = width * (t - known);
        pp[t] = (m >> bit) & 1;
        qq[t] = width == 2 && ((m >> (bit + 1)) & 1);
      }
    }
    (offline(kind, a, b, pp, qq) ? any_true : any_false) = true;
  }
  if (!any_false) return stlobs::Trilean::T;
  if (!any_true) return stlobs::Trilean::F;
  return stlobs::Trilean::U;
}

}  // namespace ideal
