#include <doctest.h>

#include "stlobs/trilean.hpp"

using namespace stlobs;

namespace {

constexpr Trilean F = Trilean::F, U = Trilean::U, T = Trilean::T;

// Rows are the left operand, columns the right, both in the order F, U, T.
constexpr Trilean kAnd[3][3] = {{F, F, F}, {F, U, U}, {F, U, T}};
constexpr Trilean kOr[3][3] = {{F, U, T}, {U, U, T}, {T, T, T}};
constexpr Trilean kImplies[3][3] = {{T, T, T}, {U, U, T}, {F, U, T}};
constexpr Trilean kNot[3] = {T, U, F};

}  // namespace

TEST_SUITE("trilean") {

TEST_CASE("connective tables") {
  for (int i = 0; i < 3; ++i) {
    const Trilean x = kAllTrileans[i];
    CHECK(not3(x) == kNot[i]);
    for (int j = 0; j < 3; ++j) {
      const Trilean y = kAllTrileans[j];
      CAPTURE(to_char(x));
      CAPTURE(to_char(y));
      CHECK(and3(x, y) == kAnd[i][j]);
      CHECK(or3(x, y) == kOr[i][j]);
      CHECK(implies3(x, y) == kImplies[i][j]);
    }
  }
}

TEST_CASE("named entries") {
  CHECK(and3(U, F) == F);
  CHECK(and3(T, T) == T);
  CHECK(and3(U, U) == U);
  CHECK(or3(U, T) == T);
  CHECK(or3(F, U) == U);
  CHECK(or3(F, F) == F);
  CHECK(not3(U) == U);
  CHECK(not3(T) == F);
  CHECK(not3(F) == T);
  CHECK(implies3(U, U) == U);
  CHECK(implies3(F, U) == T);
  CHECK(implies3(T, F) == F);
}

TEST_CASE("algebraic laws") {
  for (Trilean x : kAllTrileans) {
    CHECK(not3(not3(x)) == x);
    CHECK(and3(x, F) == F);
    CHECK(or3(x, T) == T);
    for (Trilean y : kAllTrileans) {
      CHECK(and3(x, y) == and3(y, x));
      CHECK(or3(x, y) == or3(y, x));
      CHECK(not3(and3(x, y)) == or3(not3(x), not3(y)));
      CHECK(implies3(x, y) == or3(not3(x), y));
    }
  }
}

TEST_CASE("flags") {
  CHECK(from_flags(FlagPair(true, false)) == T);
  CHECK(from_flags(FlagPair(false, true)) == F);
  CHECK(from_flags(FlagPair(false, false)) == U);
  CHECK_THROWS_AS(FlagPair(true, true), ConsistencyError);
  CHECK_THROWS_AS(from_flags(true, true), ConsistencyError);
  for (Trilean x : kAllTrileans) CHECK(from_flags(to_flags(x)) == x);
  CHECK(FlagPair().unknown());
}

TEST_CASE("text") {
  CHECK(to_char(T) == 'T');
  CHECK(to_char(U) == 'U');
  CHECK(to_string(F) == "F");
  CHECK(parse_trilean("U") == U);
  CHECK_THROWS_AS(parse_trilean("maybe"), std::invalid_argument);
}

}
