#include <doctest.h>

#include <set>

#include <json.hpp>

#include "stlobs/conformance.hpp"
#include "stlobs/oracle.hpp"
#include "stlobs/parser.hpp"

using namespace stlobs;
using namespace stlobs::conformance;

namespace {

const std::vector<TemporalKind> kKinds = {TemporalKind::eventually, TemporalKind::always,
                                          TemporalKind::until};

std::string word(const std::vector<bool>& column) {
  std::string s;
  for (bool b : column) s += b ? 'T' : 'F';
  return s;
}

Options single_thread() {
  Options o;
  o.threads = 1;
  return o;
}

}  // namespace

TEST_SUITE("conformance") {

TEST_CASE("enumeration") {
  const auto e = enumerate_traces(1, 2);
  REQUIRE(e.size() == 4);
  std::vector<std::string> words;
  for (std::uint64_t i = 0; i < e.size(); ++i) words.push_back(word(e.columns(i)[0]));
  CHECK(words == std::vector<std::string>{"FF", "FT", "TF", "TT"});
  CHECK(enumerate_traces(2, 1).size() == 4);
  CHECK(enumerate_traces(1, 7).size() == 128);
  CHECK(enumerate_traces(2, 7).size() == 16384);
  CHECK_THROWS_AS(enumerate_traces(2, 11), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_traces(1, 0), std::invalid_argument);
  CHECK(enumerate_traces(2, 11, std::uint64_t{1} << 22).size() == (std::uint64_t{1} << 22));

  const auto two = enumerate_traces(2, 2);
  std::set<std::string> seen;
  for (std::uint64_t i = 0; i < two.size(); ++i) {
    const auto c = two.columns(i);
    seen.insert(word(c[0]) + "/" + word(c[1]));
    const Trace t = two.trace(i);
    CHECK(t.signals() == atom_signals(TemporalKind::until));
    CHECK(t.length() == 2);
  }
  CHECK(seen.size() == 16);
}

TEST_CASE("differential sweep passes") {
  for (TemporalKind kind : kKinds) {
    CAPTURE(to_string(kind));
    const auto r = differential_sweep({kind}, 4);
    CHECK(r.passing());
    CHECK(r.failures.empty());
    CHECK(r.cases > 0);
  }
}

TEST_CASE("sweep results do not depend on the thread count") {
  Options o = single_thread();
  o.mutation = Mutation::drop_latch;
  const auto one = differential_sweep(kKinds, 3, o);
  o.threads = 4;
  const auto four = differential_sweep(kKinds, 3, o);
  CHECK(one.cases == four.cases);
  CHECK(one.failure_count == four.failure_count);
  REQUIRE(one.failures.size() == four.failures.size());
  for (std::size_t i = 0; i < one.failures.size(); ++i) {
    CHECK(one.failures[i].formula == four.failures[i].formula);
    CHECK(one.failures[i].tick == four.failures[i].tick);
  }
}

TEST_CASE("a dropped latch is caught and replayable") {
  Options o;
  o.mutation = Mutation::drop_latch;
  const auto r = differential_sweep({TemporalKind::eventually}, 3, o);
  REQUIRE_FALSE(r.passing());
  REQUIRE_FALSE(r.failures.empty());
  CHECK(r.failures.size() <= o.max_failures);
  const Failure& f = r.failures.front();
  CHECK(f.check == "monitor-vs-oracle");
  REQUIRE(f.tick.has_value());
  // Replay: the recorded formula and trace give the same first divergence.
  const Formula g = parse(f.formula, f.trace.signals());
  Monitor m = Monitor::compile(g, f.trace.signals(), {Mutation::drop_latch});
  const auto rs = m.run(f.trace);
  std::optional<Tick> first;
  for (Tick t = 0; t < rs.size() && !first; ++t) {
    if (rs[t].verdict != oracle::three_valued_eval(g, f.trace, t)) first = t;
  }
  CHECK(first == f.tick);
  CHECK(std::string(1, to_char(rs[*first].verdict)) == f.monitor);
}

TEST_CASE("induction base examples") {
  CHECK(check_induction_base(TemporalKind::eventually, 0, Polarity::positive));
  CHECK(check_induction_base(TemporalKind::always, 1, Polarity::negative));
  CHECK(check_induction_base(TemporalKind::until, 2, Polarity::positive));
  CHECK(check_induction_base(TemporalKind::until, 3, Polarity::negative));
}

TEST_CASE("induction step examples") {
  CHECK(check_induction_step(TemporalKind::eventually, 0, 2, Polarity::positive));
  CHECK(check_induction_step(TemporalKind::always, 1, 3, Polarity::positive));
  CHECK(check_induction_step(TemporalKind::eventually, 0, 2, Polarity::negative));
  CHECK(check_induction_step(TemporalKind::until, 1, 3, Polarity::negative));
}

TEST_CASE("induction checks catch a mutated monitor") {
  Options o;
  o.mutation = Mutation::drop_latch;
  ConformanceReport r;
  CHECK_FALSE(check_induction_base(TemporalKind::eventually, 0, Polarity::positive, &r, o));
  CHECK(r.failure_count > 0);
  CHECK_FALSE(induction_suite(2, 3, o).passing());
  CHECK(induction_suite(2, 3).passing());
}

TEST_CASE("identity and unrolled sweeps") {
  CHECK(identity_sweep(3).passing());
  const auto ex = explicit_sweep(3);
  CHECK(ex.passing());
  CHECK(ex.cases > 0);
}

TEST_CASE("property suite") {
  const auto r = property_suite(42, 500);
  CHECK(r.passing());
  CHECK(r.cases == 500);

  PropertyOptions empty;
  empty.max_length = 0;
  const auto vacuous = property_suite(1, 50, empty);
  CHECK(vacuous.passing());
  CHECK(vacuous.cases == 50);

  PropertyOptions broken;
  broken.base.mutation = Mutation::kleene_and_unknown;
  const auto bad = property_suite(42, 2000, broken);
  CHECK_FALSE(bad.passing());
  REQUIRE_FALSE(bad.failures.empty());
  CHECK_FALSE(bad.failures.front().formula.empty());
}

TEST_CASE("verdict shape") {
  auto rec = [](std::vector<Trilean> vs) {
    std::vector<VerdictRecord> out;
    for (Tick t = 0; t < vs.size(); ++t) out.push_back({t, to_flags(vs[t]), vs[t]});
    return out;
  };
  using enum Trilean;
  CHECK(has_verdict_shape(rec({})));
  CHECK(has_verdict_shape(rec({U, U, T, T})));
  CHECK(has_verdict_shape(rec({F, F})));
  CHECK_FALSE(has_verdict_shape(rec({U, T, U})));
  CHECK_FALSE(has_verdict_shape(rec({T, F})));
}

TEST_CASE("report rendering") {
  ConformanceReport r;
  r.cases = 3;
  r.add_failure({"check", "(p > 0)", boolean_trace({"p"}, {{true}}), 0, "T", "F", ""}, 1);
  r.add_failure({"check", "(p > 0)", boolean_trace({"p"}, {{true}}), 0, "T", "F", ""}, 1);
  CHECK(r.failure_count == 2);
  CHECK(r.failures.size() == 1);
  CHECK_FALSE(r.passing());
  const auto j = nlohmann::json::parse(render_json(r));
  CHECK(j["cases"] == 3);
  CHECK(j["failures"].size() == 1);
  CHECK(j.contains("wall_time_s"));
  CHECK(render_text(r).find("status: FAIL") != std::string::npos);
  ConformanceReport ok;
  ok.cases = 1;
  CHECK(render_text(ok).find("status: PASS") != std::string::npos);
}

}
