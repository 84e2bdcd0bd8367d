#include "stlobs/oracle.hpp"

#include <algorithm>

namespace stlobs::oracle {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string too_short(std::size_t have, Tick need) {
  return "trace has " + std::to_string(have) + " ticks, evaluation needs " +
         std::to_string(need);
}

// Read access to an observed prefix: any tick past `last` is a look-ahead bug.
struct Observed {
  const Trace& trace;
  Tick last;

  bool holds(const Formula& phi, Tick t) const {
    if (t > last) {
      throw Inconsistency("three-valued evaluation read tick " + std::to_string(t) +
                          " beyond the observed prefix ending at " + std::to_string(last));
    }
    return eval_propositional(phi, trace, t);
  }
};

struct Flags {
  bool pos;
  bool neg;
  bool unknown_stated;
};

Flags eventually_flags(const Observed& x, const Interval& iv, const Formula& phi) {
  const Tick tau = x.last, a = iv.lo, b = iv.hi;
  bool pos = false;
  if (tau >= a) {
    for (Tick t = a; t <= std::min(tau, b); ++t) pos = pos || x.holds(phi, t);
  }
  bool neg = false;
  if (tau >= b) {
    neg = true;
    for (Tick t = a; t <= b; ++t) neg = neg && !x.holds(phi, t);
  }
  bool unknown = tau < a;
  if (!unknown && tau < b) {
    unknown = true;
    for (Tick t = a; t <= tau; ++t) unknown = unknown && !x.holds(phi, t);
  }
  return {pos, neg, unknown};
}

Flags always_flags(const Observed& x, const Interval& iv, const Formula& phi) {
  const Tick tau = x.last, a = iv.lo, b = iv.hi;
  bool pos = false;
  if (tau >= b) {
    pos = true;
    for (Tick t = a; t <= b; ++t) pos = pos && x.holds(phi, t);
  }
  bool neg = false;
  if (tau >= a) {
    for (Tick t = a; t <= std::min(tau, b); ++t) neg = neg || !x.holds(phi, t);
  }
  bool unknown = tau < a;
  if (!unknown && tau < b) {
    unknown = true;
    for (Tick t = a; t <= tau; ++t) unknown = unknown && x.holds(phi, t);
  }
  return {pos, neg, unknown};
}

Flags until_flags(const Observed& x, const Interval& iv, const Formula& phi1,
                  const Formula& phi2) {
  const Tick tau = x.last, a = iv.lo, b = iv.hi;
  auto lhs_throughout = [&](Tick from, Tick to) {
    bool all = true;
    for (Tick t = from; t <= to; ++t) all = all && x.holds(phi1, t);
    return all;
  };
  // exists t1 in [from, to]: phi2 at t1 and phi1 on [0, t1]
  auto satisfied_within = [&](Tick from, Tick to) {
    bool any = false;
    for (Tick t1 = from; t1 <= to; ++t1) any = any || (x.holds(phi2, t1) && lhs_throughout(0, t1));
    return any;
  };

  const bool pos = tau >= a && satisfied_within(a, std::min(tau, b));

  bool early_failure = false;
  for (Tick t6 = 0; t6 <= std::min(tau, a); ++t6) early_failure = early_failure || !x.holds(phi1, t6);
  bool inside_failure = false;
  if (tau >= a && tau < b) {
    bool lhs_failed = false;
    for (Tick t7 = a; t7 <= tau; ++t7) lhs_failed = lhs_failed || !x.holds(phi1, t7);
    inside_failure = lhs_failed && !satisfied_within(a, tau);
  }
  const bool exhausted = tau >= b && !satisfied_within(a, b);
  const bool neg = early_failure || inside_failure || exhausted;

  bool unknown = false;
  if (tau < a) {
    unknown = lhs_throughout(0, tau);
  } else if (tau < b) {
    bool rhs_absent = true;
    for (Tick t5 = a; t5 <= tau; ++t5) rhs_absent = rhs_absent && !x.holds(phi2, t5);
    unknown = lhs_throughout(0, tau) && rhs_absent;
  }
  return {pos, neg, unknown};
}

Trilean resolve(const Flags& f, std::string_view op) {
  if (f.pos && f.neg) {
    throw Inconsistency(std::string(op) + ": positive and negative definitions both hold");
  }
  if (f.unknown_stated != (!f.pos && !f.neg)) {
    throw Inconsistency(std::string(op) +
                        ": stated Unknown definition disagrees with neither-positive-nor-negative");
  }
  return f.pos ? Trilean::T : (f.neg ? Trilean::F : Trilean::U);
}

Trilean three_valued(const Formula& f, const Observed& x) {
  if (is_propositional(f)) return from_bool(x.holds(f, 0));
  return std::visit(
      overloaded{
          [&](const Not& n) { return not3(three_valued(n.operand, x)); },
          [&](const And& n) { return and3(three_valued(n.lhs, x), three_valued(n.rhs, x)); },
          [&](const Or& n) { return or3(three_valued(n.lhs, x), three_valued(n.rhs, x)); },
          [&](const Implies& n) {
            return implies3(three_valued(n.lhs, x), three_valued(n.rhs, x));
          },
          [&](const Eventually& n) {
            return resolve(eventually_flags(x, n.interval, n.operand), "eventually");
          },
          [&](const Always& n) {
            return resolve(always_flags(x, n.interval, n.operand), "always");
          },
          [&](const Until& n) {
            return resolve(until_flags(x, n.interval, n.lhs, n.rhs), "until");
          },
          [&](const auto&) -> Trilean { throw Inconsistency("unreachable propositional leaf"); },
      },
      f.node().v);
}

void require_cover(std::size_t have, Tick last) {
  if (have <= last) throw TraceTooShort(too_short(have, last + 1));
}

}  // namespace

bool eval_propositional(const Formula& f, const Trace& trace, Tick t) {
  return std::visit(
      overloaded{
          [&](const Atom& x) {
            double sum = 0.0;
            for (const auto& term : x.pred.terms) {
              sum += term.coeff * trace.at(t, trace.index_of(term.signal));
            }
            return compare(sum + x.pred.constant, x.pred.cmp, 0.0);
          },
          [&](const Constant& x) { return x.value; },
          [&](const Not& x) { return !eval_propositional(x.operand, trace, t); },
          [&](const And& x) {
            return eval_propositional(x.lhs, trace, t) && eval_propositional(x.rhs, trace, t);
          },
          [&](const Or& x) {
            return eval_propositional(x.lhs, trace, t) || eval_propositional(x.rhs, trace, t);
          },
          [&](const Implies& x) {
            return !eval_propositional(x.lhs, trace, t) || eval_propositional(x.rhs, trace, t);
          },
          [&](const auto&) -> bool {
            throw std::invalid_argument("eval_propositional: formula has a temporal operator");
          },
      },
      f.node().v);
}

bool offline_eval(const Formula& f, const Trace& trace, Tick t) {
  require_cover(trace.length(), t + horizon(f));
  return std::visit(
      overloaded{
          [&](const Atom&) { return eval_propositional(f, trace, t); },
          [&](const Constant& x) { return x.value; },
          [&](const Not& x) { return !offline_eval(x.operand, trace, t); },
          [&](const And& x) {
            return offline_eval(x.lhs, trace, t) && offline_eval(x.rhs, trace, t);
          },
          [&](const Or& x) {
            return offline_eval(x.lhs, trace, t) || offline_eval(x.rhs, trace, t);
          },
          [&](const Implies& x) {
            return !offline_eval(x.lhs, trace, t) || offline_eval(x.rhs, trace, t);
          },
          [&](const Until& x) {
            for (Tick t1 = t + x.interval.lo; t1 <= t + x.interval.hi; ++t1) {
              if (!offline_eval(x.rhs, trace, t1)) continue;
              bool lhs = true;
              for (Tick t2 = t; t2 <= t1; ++t2) lhs = lhs && offline_eval(x.lhs, trace, t2);
              if (lhs) return true;
            }
            return false;
          },
          [&](const Eventually& x) {
            for (Tick t1 = t + x.interval.lo; t1 <= t + x.interval.hi; ++t1) {
              if (offline_eval(x.operand, trace, t1)) return true;
            }
            return false;
          },
          [&](const Always& x) {
            for (Tick t1 = t + x.interval.lo; t1 <= t + x.interval.hi; ++t1) {
              if (!offline_eval(x.operand, trace, t1)) return false;
            }
            return true;
          },
      },
      f.node().v);
}

Trilean three_valued_eval(const Formula& f, const Trace& prefix, Tick tau) {
  require_cover(prefix.length(), tau);
  return three_valued(f, Observed{prefix, tau});
}

std::string_view to_string(Polarity p) {
  return p == Polarity::positive ? "positive" : "negative";
}

bool until_false_explicit(Interval iv, const std::vector<bool>& phi1,
                          const std::vector<bool>& phi2, UntilFalseReading reading) {
  const Tick a = iv.lo, b = iv.hi;
  require_cover(std::min(phi1.size(), phi2.size()), b);
  bool early = false;
  for (Tick n = 0; n <= a; ++n) early = early || !phi1[n];
  bool middle = false;
  for (Tick n1 = a + 1; n1 <= b; ++n1) {
    bool rhs_absent = true;
    if (reading == UntilFalseReading::as_printed) {
      for (Tick n2 = a; n2 <= n1; ++n2) rhs_absent = rhs_absent && (n2 == 0 || !phi2[n2 - 1]);
    } else {
      for (Tick n2 = a; n2 < n1; ++n2) rhs_absent = rhs_absent && !phi2[n2];
    }
    middle = middle || (!phi1[n1] && rhs_absent);
  }
  bool exhausted = true;
  for (Tick n = a; n <= b; ++n) exhausted = exhausted && !phi2[n];
  return early || middle || exhausted;
}

bool explicit_eval(TemporalKind kind, Interval iv, const std::vector<bool>& phi,
                   const std::vector<bool>& phi2, Polarity polarity) {
  const Tick a = iv.lo, b = iv.hi;
  require_cover(phi.size(), b);
  const bool pos = polarity == Polarity::positive;
  switch (kind) {
    case TemporalKind::eventually:
    case TemporalKind::always: {
      // Eventually+ and Always- are disjunctions; Eventually- and Always+ conjunctions.
      const bool disjunction = (kind == TemporalKind::eventually) == pos;
      const bool want = pos;  // term is phi for positive forms, !phi for negative ones
      bool acc = !disjunction;
      for (Tick n = a; n <= b; ++n) {
        const bool term = phi[n] == want;
        acc = disjunction ? (acc || term) : (acc && term);
      }
      return acc;
    }
    case TemporalKind::until: {
      require_cover(phi2.size(), b);
      if (pos) {
        bool any = false;
        for (Tick n = a; n <= b; ++n) {
          bool prefix = true;
          for (Tick m = 0; m <= n; ++m) prefix = prefix && phi[m];
          any = any || (prefix && phi2[n]);
        }
        return any;
      }
      // Set-based negative form at tau >= b.
      bool early = false;
      for (Tick t6 = 0; t6 <= a; ++t6) early = early || !phi[t6];
      bool satisfied = false;
      for (Tick t10 = a; t10 <= b; ++t10) {
        bool lhs = true;
        for (Tick t11 = 0; t11 <= t10; ++t11) lhs = lhs && phi[t11];
        satisfied = satisfied || (phi2[t10] && lhs);
      }
      return early || !satisfied;
    }
  }
  return false;
}

namespace {

bool identities_hold(const Interval& iv, const Formula& phi, const Trace& trace) {
  const bool ev = offline_eval(eventually(iv, phi), trace, 0);
  const bool via_until = offline_eval(until(iv, constant(true), phi), trace, 0);
  const bool al = offline_eval(always(iv, phi), trace, 0);
  const bool via_dual = offline_eval(negation(eventually(iv, negation(phi))), trace, 0);
  return ev == via_until && al == via_dual;
}

bool identity_walk(const Formula& f, const Trace& trace) {
  return std::visit(
      overloaded{
          [&](const Atom&) { return true; },
          [&](const Constant&) { return true; },
          [&](const Not& x) { return identity_walk(x.operand, trace); },
          [&](const Eventually& x) { return identities_hold(x.interval, x.operand, trace); },
          [&](const Always& x) { return identities_hold(x.interval, x.operand, trace); },
          [&](const Until& x) { return identities_hold(x.interval, x.rhs, trace); },
          [&](const auto& x) { return identity_walk(x.lhs, trace) && identity_walk(x.rhs, trace); },
      },
      f.node().v);
}

}  // namespace

bool identity_check(const Formula& f, const Trace& trace) {
  require_cover(trace.length(), horizon(f));
  return identity_walk(f, trace);
}

}  // namespace stlobs::oracle
