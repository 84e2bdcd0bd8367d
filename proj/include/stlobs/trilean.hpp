#pragma once

#include <cstdint>
#include <stdexcept>
#include <string_view>

namespace stlobs {

/// Kleene strong three-valued truth value.
enum class Trilean : std::uint8_t { F = 0, U = 1, T = 2 };

inline constexpr Trilean kAllTrileans[] = {Trilean::F, Trilean::U, Trilean::T};

/// Raised when a positive and a negative observer fire together. This can
/// only come from a broken operator cell, never from input data.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Verdict encoded as the twin positive/negative observer outputs.
/// Unknown is the absence of both.
class FlagPair {
 public:
  constexpr FlagPair() = default;
  constexpr FlagPair(bool positive, bool negative) : positive_(positive), negative_(negative) {
    if (positive && negative) {
      throw ConsistencyError("positive and negative flags raised together");
    }
  }

  constexpr bool positive() const { return positive_; }
  constexpr bool negative() const { return negative_; }
  constexpr bool unknown() const { return !positive_ && !negative_; }

  friend constexpr bool operator==(FlagPair, FlagPair) = default;

 private:
  bool positive_ = false;
  bool negative_ = false;
};

// Ordering F < U < T turns Kleene conjunction into min and disjunction into max.
constexpr Trilean and3(Trilean a, Trilean b) { return a < b ? a : b; }
constexpr Trilean or3(Trilean a, Trilean b) { return a < b ? b : a; }

constexpr Trilean not3(Trilean a) {
  switch (a) {
    case Trilean::T: return Trilean::F;
    case Trilean::F: return Trilean::T;
    case Trilean::U: return Trilean::U;
  }
  return Trilean::U;
}

constexpr Trilean implies3(Trilean a, Trilean b) { return or3(not3(a), b); }

/// Throws ConsistencyError on (true, true).
Trilean from_flags(bool positive, bool negative);
inline Trilean from_flags(FlagPair flags) {
  return flags.positive() ? Trilean::T : (flags.negative() ? Trilean::F : Trilean::U);
}

constexpr FlagPair to_flags(Trilean v) {
  return FlagPair(v == Trilean::T, v == Trilean::F);
}

constexpr Trilean from_bool(bool v) { return v ? Trilean::T : Trilean::F; }

constexpr char to_char(Trilean v) {
  switch (v) {
    case Trilean::T: return 'T';
    case Trilean::F: return 'F';
    case Trilean::U: return 'U';
  }
  return '?';
}

std::string_view to_string(Trilean v);

/// Accepts exactly "T", "F" or "U".
Trilean parse_trilean(std::string_view text);

}  // namespace stlobs
