#include <doctest.h>

#include "ideal.hpp"
#include "stlobs/monitor.hpp"
#include "stlobs/parser.hpp"

using namespace stlobs;

namespace {

using Bits = std::vector<bool>;

constexpr Trilean F = Trilean::F, U = Trilean::U, T = Trilean::T;
const Formula p = positive("p");
const Formula q = positive("q");

std::vector<Trilean> verdicts(const Formula& f, const std::vector<Bits>& columns,
                              CompileOptions opts = {}) {
  const std::vector<std::string> signals =
      columns.size() == 1 ? std::vector<std::string>{"p"} : std::vector<std::string>{"p", "q"};
  Monitor m = Monitor::compile(f, signals, opts);
  std::vector<Trilean> out;
  for (const auto& r : m.run(boolean_trace(signals, columns))) out.push_back(r.verdict);
  return out;
}

Bits bits(std::uint64_t mask, std::size_t n) {
  Bits out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = (mask >> k) & 1;
  return out;
}

Formula op(TemporalKind kind, Interval iv) {
  switch (kind) {
    case TemporalKind::eventually: return eventually(iv, p);
    case TemporalKind::always: return always(iv, p);
    case TemporalKind::until: return until(iv, p, q);
  }
  return p;
}

// Exhaustive comparison with the completion-based reference; returns the
// number of mismatching (trace, tick) pairs.
int mismatches(TemporalKind kind, Tick max_b, CompileOptions opts = {}) {
  int bad = 0;
  const bool two = kind == TemporalKind::until;
  for (Tick b = 1; b <= max_b; ++b) {
    for (Tick a = 0; a < b; ++a) {
      const std::size_t n = b + 2;
      const std::uint64_t masks = std::uint64_t{1} << n;
      for (std::uint64_t pm = 0; pm < masks; ++pm) {
        for (std::uint64_t qm = 0; qm < (two ? masks : 1); ++qm) {
          const Bits pb = bits(pm, n), qb = bits(qm, n);
          const auto got = verdicts(op(kind, {a, b}), two ? std::vector<Bits>{pb, qb}
                                                          : std::vector<Bits>{pb},
                                    opts);
          for (Tick t = 0; t < n; ++t) {
            if (got[t] != ideal::verdict(kind, a, b, pb, qb, t)) ++bad;
          }
        }
      }
    }
  }
  return bad;
}

}  // namespace

TEST_SUITE("monitor") {

TEST_CASE("cell counts") {
  CHECK(Monitor::compile(always({0, 10}, p)).temporal_cell_count() == 2);
  CHECK(Monitor::compile(until({1, 3}, p, q)).temporal_cell_count() == 2);
  CHECK(Monitor::compile(p).temporal_cell_count() == 0);
  CHECK(Monitor::compile(conjunction(always({1, 3}, p), eventually({2, 7}, q)))
            .temporal_cell_count() == 4);
}

TEST_CASE("examples") {
  const auto g = verdicts(always({0, 10}, p), {Bits(9, true)});
  REQUIRE(g.size() == 9);
  CHECK(g[8] == U);

  const auto ev = verdicts(eventually({2, 4}, p), {{false, false, false, true, false, false}});
  CHECK(ev == std::vector<Trilean>{U, U, U, T, T, T});

  CHECK(verdicts(until({1, 3}, p, q), {{false}, {true}}) == std::vector<Trilean>{F});

  CHECK(verdicts(always({1, 2}, p), {{true, true, true}}) == std::vector<Trilean>{U, U, T});
  CHECK(verdicts(eventually({1, 2}, p), {{false, false, false}}) == std::vector<Trilean>{U, U, F});
  CHECK(verdicts(always({1, 2}, p), {Bits{}}).empty());
}

TEST_CASE("single operators agree with brute-force completions") {
  CHECK(mismatches(TemporalKind::eventually, 4) == 0);
  CHECK(mismatches(TemporalKind::always, 4) == 0);
  CHECK(mismatches(TemporalKind::until, 3) == 0);
}

TEST_CASE("boolean structure uses the Kleene connectives") {
  // F[0,2] p & !G[1,3] q: both U until the G part fails at tick 1.
  const Formula f = conjunction(eventually({0, 2}, p), negation(always({1, 3}, q)));
  CHECK(verdicts(f, {{false, false, false, false}, {true, false, true, true}}) ==
        std::vector<Trilean>{U, U, F, F});
  CHECK(verdicts(f, {{false, true, false, false}, {true, false, true, true}}) ==
        std::vector<Trilean>{U, T, T, T});
  // G[0,2] p | p: the propositional part is read at tick 0 only.
  CHECK(verdicts(disjunction(always({0, 2}, p), p), {{true, false, true}}) ==
        std::vector<Trilean>{T, T, T});
  CHECK(verdicts(implication(p, eventually({1, 2}, q)), {{false, true, true}, {false, false, false}}) ==
        std::vector<Trilean>{T, T, T});
  // Not simplified: F[0,1] p & !F[0,1] p stays U until determined.
  const Formula contra = conjunction(eventually({0, 1}, p), negation(eventually({0, 1}, p)));
  CHECK(verdicts(contra, {{false, false}}) == std::vector<Trilean>{U, F});
}

TEST_CASE("propositional formulas are decided at tick 0") {
  Monitor m = Monitor::compile(parse("x - 2*y >= 1", {"x", "y"}));
  CHECK(m.step(std::vector<double>{3.0, 1.0}).verdict == T);
  CHECK(m.step(std::vector<double>{0.0, 5.0}).verdict == T);
  CHECK(m.tick() == 2);
}

TEST_CASE("records are consistent with their flags") {
  Monitor m = Monitor::compile(until({1, 3}, p, q), {"p", "q"});
  const auto rs = m.run(boolean_trace({"p", "q"}, {{true, true, false, true}, {false, false, true, false}}));
  for (std::size_t k = 0; k < rs.size(); ++k) {
    CHECK(rs[k].tick == k);
    CHECK(rs[k].verdict == from_flags(rs[k].flags));
  }
}

TEST_CASE("early stop") {
  Monitor m = Monitor::compile(eventually({2, 4}, p), {"p"});
  const auto rs =
      m.run(boolean_trace({"p"}, {{false, false, false, true, false}}), RunOptions{true});
  REQUIRE(rs.size() == 4);
  CHECK(rs.back().verdict == T);
  CHECK(m.tick() == 4);
}

TEST_CASE("sample errors") {
  Monitor m = Monitor::compile(until({0, 2}, p, q), {"p", "q"});
  CHECK_THROWS_AS(m.step(std::vector<double>{1.0}), SampleError);
  CHECK_THROWS_AS(m.step(std::map<std::string, double>{{"p", 1.0}}), SampleError);
  CHECK_THROWS_AS(m.step(std::map<std::string, double>{{"p", 1.0}, {"q", 0.0}, {"r", 1.0}}),
                  SampleError);
  CHECK(m.tick() == 0);
  CHECK(m.step(std::map<std::string, double>{{"q", 1.0}, {"p", 1.0}}).verdict == T);
  CHECK_THROWS_AS(m.run(boolean_trace({"p"}, {{true}})), SampleError);
}

TEST_CASE("invalid formulas are rejected") {
  CHECK_THROWS_AS(Monitor::compile(always({2, 2}, p)), CompileError);
  CHECK_THROWS_AS(Monitor::compile(eventually({0, 3}, always({0, 1}, p))), CompileError);
  CHECK_THROWS_AS(Monitor::compile(p, {"q"}), CompileError);
}

TEST_CASE("state size is fixed by the formula shape") {
  for (TemporalKind kind : {TemporalKind::eventually, TemporalKind::always, TemporalKind::until}) {
    const std::size_t small = Monitor::compile(op(kind, {1, 2})).state().size();
    CHECK(small > 0);
    CHECK(Monitor::compile(op(kind, {0, 50})).state().size() == small);
    CHECK(Monitor::compile(op(kind, {999, 1000})).state().size() == small);
    Monitor m = Monitor::compile(op(kind, {3, 1000}));
    for (int k = 0; k < 2000; ++k) m.step(std::vector<double>(m.signals().size(), 1.0));
    CHECK(m.state().size() == small);
  }
}

TEST_CASE("mutations are observable") {
  CHECK(mismatches(TemporalKind::eventually, 3, {Mutation::drop_latch}) > 0);
  const Formula f = conjunction(eventually({0, 2}, p), eventually({0, 2}, q));
  CHECK(verdicts(f, {{false}, {false}}) == std::vector<Trilean>{U});
  CHECK(verdicts(f, {{false}, {false}}, {Mutation::kleene_and_unknown}) == std::vector<Trilean>{F});
}

}
