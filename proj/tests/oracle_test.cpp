#include <doctest.h>

#include "ideal.hpp"
#include "stlobs/conformance.hpp"
#include "stlobs/oracle.hpp"
#include "stlobs/parser.hpp"

using namespace stlobs;
using oracle::Polarity;

namespace {

using Bits = std::vector<bool>;
constexpr Trilean F = Trilean::F, U = Trilean::U, T = Trilean::T;
const Formula p = positive("p");
const Formula q = positive("q");

Trace tr(const Bits& pb) { return boolean_trace({"p"}, {pb}); }
Trace tr(const Bits& pb, const Bits& qb) { return boolean_trace({"p", "q"}, {pb, qb}); }

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("offline examples") {
  CHECK(oracle::offline_eval(always({0, 2}, p), tr({true, true, true}), 0));
  CHECK_FALSE(oracle::offline_eval(eventually({1, 2}, p), tr({false, false, false}), 0));
  CHECK(oracle::offline_eval(until({1, 2}, p, q), tr({true, true, false}, {false, true, false}), 0));
  // the left operand must also hold at the witness
  CHECK_FALSE(oracle::offline_eval(until({1, 2}, p, q), tr({true, false, false}, {false, true, true}), 0));
  CHECK(oracle::offline_eval(eventually({1, 2}, p), tr({false, false, false, true}), 1));
}

TEST_CASE("offline needs the horizon") {
  CHECK_THROWS_AS(oracle::offline_eval(always({0, 3}, p), tr({true, true, true}), 0),
                  oracle::TraceTooShort);
  CHECK_THROWS_AS(oracle::offline_eval(always({0, 2}, p), tr({true, true, true}), 1),
                  oracle::TraceTooShort);
  CHECK_THROWS_AS(oracle::three_valued_eval(p, tr({true}), 1), oracle::TraceTooShort);
}

TEST_CASE("three-valued examples") {
  CHECK(oracle::three_valued_eval(always({0, 10}, p), tr(Bits(9, true)), 8) == U);
  CHECK(oracle::three_valued_eval(eventually({2, 4}, p), tr({false, false, false, true}), 3) == T);
  CHECK(oracle::three_valued_eval(until({1, 3}, p, q), tr({false}, {true}), 0) == F);
  const Formula both = conjunction(eventually({0, 2}, p), always({0, 2}, q));
  CHECK(oracle::three_valued_eval(both, tr({false}, {false}), 0) == F);
  CHECK(oracle::three_valued_eval(negation(both), tr({true}, {true}), 0) == U);
}

TEST_CASE("three-valued semantics equals the completion reference") {
  for (TemporalKind kind : {TemporalKind::eventually, TemporalKind::always, TemporalKind::until}) {
    const bool two = kind == TemporalKind::until;
    for (Tick b = 1; b <= 3; ++b) {
      for (Tick a = 0; a < b; ++a) {
        const Formula f = conformance::operator_formula(kind, {a, b});
        const auto traces = conformance::enumerate_traces(two ? 2 : 1, b + 2);
        for (std::uint64_t i = 0; i < traces.size(); ++i) {
          const auto cols = traces.columns(i);
          const Trace t = traces.trace(i);
          for (Tick tau = 0; tau < b + 2; ++tau) {
            REQUIRE(oracle::three_valued_eval(f, t, tau) ==
                    ideal::verdict(kind, a, b, cols[0], two ? cols[1] : Bits(b + 2), tau));
          }
        }
      }
    }
  }
}

TEST_CASE("offline agrees with the verdict at the horizon") {
  for (TemporalKind kind : {TemporalKind::eventually, TemporalKind::always, TemporalKind::until}) {
    const Formula f = conformance::operator_formula(kind, {1, 3});
    const auto traces = conformance::enumerate_traces(kind == TemporalKind::until ? 2 : 1, 4);
    for (std::uint64_t i = 0; i < traces.size(); ++i) {
      const Trace t = traces.trace(i);
      CHECK(oracle::three_valued_eval(f, t, 3) == from_bool(oracle::offline_eval(f, t, 0)));
    }
  }
}

TEST_CASE("explicit forms") {
  CHECK(oracle::explicit_eval(TemporalKind::eventually, {1, 2}, {false, true, false}, {},
                              Polarity::positive));
  CHECK_FALSE(oracle::explicit_eval(TemporalKind::always, {0, 2}, {true, true, false}, {},
                                    Polarity::positive));
  CHECK(oracle::explicit_eval(TemporalKind::until, {1, 2}, {true, true, true},
                              {false, false, true}, Polarity::positive));
  CHECK(oracle::explicit_eval(TemporalKind::always, {1, 3}, {true, true, false, true}, {},
                              Polarity::negative));
  CHECK(oracle::explicit_eval(TemporalKind::eventually, {0, 1}, {false, false}, {},
                              Polarity::negative));
  CHECK_THROWS_AS(oracle::explicit_eval(TemporalKind::always, {0, 3}, {true, true}, {},
                                        Polarity::positive),
                  oracle::TraceTooShort);
}

TEST_CASE("until-false explicit readings") {
  // Smallest case on which the two index readings part ways.
  const Bits p1 = {true, true, false}, p2 = {true, false, true};
  const Interval iv{1, 2};
  const bool set_based = oracle::three_valued_eval(until(iv, p, q), tr(p1, p2), 2) == F;
  CHECK(set_based);
  CHECK(oracle::until_false_explicit(iv, p1, p2, oracle::UntilFalseReading::shifted) == set_based);
  CHECK(oracle::until_false_explicit(iv, p1, p2, oracle::UntilFalseReading::as_printed) != set_based);
}

TEST_CASE("identities") {
  CHECK(oracle::identity_check(always({1, 3}, p), tr({true, false, true, true})));
  CHECK(oracle::identity_check(eventually({0, 2}, p), tr({false, true, false})));
  CHECK_FALSE(oracle::offline_eval(always({1, 3}, p), tr({true, false, true, true}), 0));
  CHECK_FALSE(oracle::offline_eval(negation(eventually({1, 3}, negation(p))),
                                   tr({true, false, true, true}), 0));
  CHECK(oracle::offline_eval(until({0, 2}, constant(true), p), tr({false, true, false}), 0));
  CHECK_THROWS_AS(oracle::identity_check(eventually({0, 2}, p), tr({false, true})),
                  oracle::TraceTooShort);
}

TEST_CASE("atoms compare exactly") {
  const Formula eq = parse("x = 0.1", {"x"});
  Trace t({"x"});
  t.push_back(std::vector<double>{0.1});
  t.push_back(std::vector<double>{0.3 - 0.2});
  CHECK(oracle::eval_propositional(eq, t, 0));
  CHECK_FALSE(oracle::eval_propositional(eq, t, 1));
}

}
