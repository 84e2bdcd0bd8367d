#include "stlobs/formula.hpp"

#include <algorithm>
#include <cmath>

#include "numbers.hpp"

namespace stlobs {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Formula make(auto node) {
  return Formula(std::make_shared<const detail::Node>(detail::Node{std::move(node)}));
}

}  // namespace

std::string_view to_string(Comparator c) {
  switch (c) {
    case Comparator::gt: return ">";
    case Comparator::ge: return ">=";
    case Comparator::lt: return "<";
    case Comparator::le: return "<=";
    case Comparator::eq: return "==";
    case Comparator::ne: return "!=";
  }
  return "?";
}

bool compare(double lhs, Comparator c, double rhs) {
  switch (c) {
    case Comparator::gt: return lhs > rhs;
    case Comparator::ge: return lhs >= rhs;
    case Comparator::lt: return lhs < rhs;
    case Comparator::le: return lhs <= rhs;
    case Comparator::eq: return lhs == rhs;
    case Comparator::ne: return lhs != rhs;
  }
  return false;
}

bool operator==(const Formula& lhs, const Formula& rhs) {
  if (lhs.node_ == rhs.node_) return true;
  const auto& a = lhs.node().v;
  const auto& b = rhs.node().v;
  if (a.index() != b.index()) return false;
  return std::visit(
      overloaded{
          [&](const Atom& x) { return x.pred == std::get<Atom>(b).pred; },
          [&](const Constant& x) { return x.value == std::get<Constant>(b).value; },
          [&](const Not& x) { return x.operand == std::get<Not>(b).operand; },
          [&](const And& x) {
            const auto& y = std::get<And>(b);
            return x.lhs == y.lhs && x.rhs == y.rhs;
          },
          [&](const Or& x) {
            const auto& y = std::get<Or>(b);
            return x.lhs == y.lhs && x.rhs == y.rhs;
          },
          [&](const Implies& x) {
            const auto& y = std::get<Implies>(b);
            return x.lhs == y.lhs && x.rhs == y.rhs;
          },
          [&](const Always& x) {
            const auto& y = std::get<Always>(b);
            return x.interval == y.interval && x.operand == y.operand;
          },
          [&](const Eventually& x) {
            const auto& y = std::get<Eventually>(b);
            return x.interval == y.interval && x.operand == y.operand;
          },
          [&](const Until& x) {
            const auto& y = std::get<Until>(b);
            return x.interval == y.interval && x.lhs == y.lhs && x.rhs == y.rhs;
          },
      },
      a);
}

Formula atom(AtomicPredicate pred) { return make(Atom{std::move(pred)}); }
Formula constant(bool value) { return make(Constant{value}); }
Formula negation(Formula f) { return make(Not{std::move(f)}); }
Formula conjunction(Formula lhs, Formula rhs) { return make(And{std::move(lhs), std::move(rhs)}); }
Formula disjunction(Formula lhs, Formula rhs) { return make(Or{std::move(lhs), std::move(rhs)}); }
Formula implication(Formula lhs, Formula rhs) {
  return make(Implies{std::move(lhs), std::move(rhs)});
}
Formula always(Interval interval, Formula operand) {
  return make(Always{interval, std::move(operand)});
}
Formula eventually(Interval interval, Formula operand) {
  return make(Eventually{interval, std::move(operand)});
}
Formula until(Interval interval, Formula lhs, Formula rhs) {
  return make(Until{interval, std::move(lhs), std::move(rhs)});
}

Formula positive(const std::string& signal) {
  return atom(AtomicPredicate{{LinearTerm{1.0, signal}}, 0.0, Comparator::gt});
}

std::string_view to_string(TemporalKind k) {
  switch (k) {
    case TemporalKind::eventually: return "eventually";
    case TemporalKind::always: return "always";
    case TemporalKind::until: return "until";
  }
  return "?";
}

std::string_view operator_symbol(TemporalKind k) {
  switch (k) {
    case TemporalKind::eventually: return "F";
    case TemporalKind::always: return "G";
    case TemporalKind::until: return "U";
  }
  return "?";
}

bool is_temporal(const Formula& f) {
  return f.as<Always>() || f.as<Eventually>() || f.as<Until>();
}

bool is_propositional(const Formula& f) { return temporal_count(f) == 0; }

std::size_t temporal_count(const Formula& f) {
  return std::visit(
      overloaded{
          [](const Atom&) -> std::size_t { return 0; },
          [](const Constant&) -> std::size_t { return 0; },
          [](const Not& x) { return temporal_count(x.operand); },
          [](const And& x) { return temporal_count(x.lhs) + temporal_count(x.rhs); },
          [](const Or& x) { return temporal_count(x.lhs) + temporal_count(x.rhs); },
          [](const Implies& x) { return temporal_count(x.lhs) + temporal_count(x.rhs); },
          [](const Always& x) { return 1 + temporal_count(x.operand); },
          [](const Eventually& x) { return 1 + temporal_count(x.operand); },
          [](const Until& x) { return 1 + temporal_count(x.lhs) + temporal_count(x.rhs); },
      },
      f.node().v);
}

namespace {

void check_interval(const Interval& i, const std::string& path, std::vector<Violation>& out) {
  if (i.lo >= i.hi) {
    out.push_back({Violation::Kind::bad_interval, path,
                   "interval [" + std::to_string(i.lo) + "," + std::to_string(i.hi) +
                       "] is not a non-singleton bounded interval (need a < b)"});
  }
}

void validate_into(const Formula& f, const std::string& path, bool under_temporal,
                   std::vector<Violation>& out) {
  auto temporal_node = [&](std::string_view name, const Interval& interval) {
    if (under_temporal) {
      out.push_back({Violation::Kind::nested_temporal, path,
                     std::string(name) + " nested inside another temporal operator"});
    }
    check_interval(interval, path, out);
  };
  std::visit(overloaded{
                 [&](const Atom& x) {
                   if (x.pred.terms.empty()) {
                     out.push_back({Violation::Kind::empty_atom, path,
                                    "atomic predicate references no signal"});
                   }
                   bool finite = std::isfinite(x.pred.constant);
                   for (const auto& t : x.pred.terms) finite = finite && std::isfinite(t.coeff);
                   if (!finite) {
                     out.push_back({Violation::Kind::non_finite, path,
                                    "atomic predicate has a non-finite coefficient"});
                   }
                 },
                 [&](const Constant&) {},
                 [&](const Not& x) {
                   validate_into(x.operand, path + ".operand", under_temporal, out);
                 },
                 [&](const auto& x) requires requires { x.lhs; x.rhs; } {
                   if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Until>) {
                     temporal_node("until", x.interval);
                     validate_into(x.lhs, path + ".lhs", true, out);
                     validate_into(x.rhs, path + ".rhs", true, out);
                   } else {
                     validate_into(x.lhs, path + ".lhs", under_temporal, out);
                     validate_into(x.rhs, path + ".rhs", under_temporal, out);
                   }
                 },
                 [&](const Always& x) {
                   temporal_node("always", x.interval);
                   validate_into(x.operand, path + ".operand", true, out);
                 },
                 [&](const Eventually& x) {
                   temporal_node("eventually", x.interval);
                   validate_into(x.operand, path + ".operand", true, out);
                 },
             },
             f.node().v);
}

}  // namespace

std::vector<Violation> validate(const Formula& f) {
  std::vector<Violation> out;
  validate_into(f, "root", false, out);
  return out;
}

Tick horizon(const Formula& f) {
  return std::visit(
      overloaded{
          [](const Atom&) -> Tick { return 0; },
          [](const Constant&) -> Tick { return 0; },
          [](const Not& x) { return horizon(x.operand); },
          [](const And& x) { return std::max(horizon(x.lhs), horizon(x.rhs)); },
          [](const Or& x) { return std::max(horizon(x.lhs), horizon(x.rhs)); },
          [](const Implies& x) { return std::max(horizon(x.lhs), horizon(x.rhs)); },
          [](const Always& x) { return x.interval.hi; },
          [](const Eventually& x) { return x.interval.hi; },
          [](const Until& x) { return x.interval.hi; },
      },
      f.node().v);
}

namespace {

void collect_signals(const Formula& f, std::vector<std::string>& out) {
  auto add = [&](const std::string& s) {
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  };
  std::visit(overloaded{
                 [&](const Atom& x) {
                   for (const auto& t : x.pred.terms) add(t.signal);
                 },
                 [&](const Constant&) {},
                 [&](const Not& x) { collect_signals(x.operand, out); },
                 [&](const Always& x) { collect_signals(x.operand, out); },
                 [&](const Eventually& x) { collect_signals(x.operand, out); },
                 [&](const auto& x) {
                   collect_signals(x.lhs, out);
                   collect_signals(x.rhs, out);
                 },
             },
             f.node().v);
}

std::string render_interval(const Interval& i) {
  return "[" + std::to_string(i.lo) + "," + std::to_string(i.hi) + "]";
}

std::string render_atom(const AtomicPredicate& p) {
  std::string s;
  bool first = true;
  for (const auto& t : p.terms) {
    const bool neg = std::signbit(t.coeff);
    const double mag = std::fabs(t.coeff);
    if (first) {
      s += neg ? "-" : "";
    } else {
      s += neg ? " - " : " + ";
    }
    if (mag != 1.0) s += detail::format_double(mag) + "*";
    s += t.signal;
    first = false;
  }
  if (first) {
    s += detail::format_double(p.constant);
  } else if (p.constant != 0.0) {
    s += std::signbit(p.constant) ? " - " : " + ";
    s += detail::format_double(std::fabs(p.constant));
  }
  s += " ";
  s += to_string(p.cmp);
  s += " 0";
  return s;
}

}  // namespace

std::vector<std::string> referenced_signals(const Formula& f) {
  std::vector<std::string> out;
  collect_signals(f, out);
  return out;
}

std::string render(const Formula& f) {
  return std::visit(
      overloaded{
          [](const Atom& x) { return render_atom(x.pred); },
          [](const Constant& x) { return std::string(x.value ? "true" : "false"); },
          [](const Not& x) { return "!(" + render(x.operand) + ")"; },
          [](const And& x) { return "(" + render(x.lhs) + " & " + render(x.rhs) + ")"; },
          [](const Or& x) { return "(" + render(x.lhs) + " | " + render(x.rhs) + ")"; },
          [](const Implies& x) { return "(" + render(x.lhs) + " -> " + render(x.rhs) + ")"; },
          [](const Always& x) {
            return "G" + render_interval(x.interval) + "(" + render(x.operand) + ")";
          },
          [](const Eventually& x) {
            return "F" + render_interval(x.interval) + "(" + render(x.operand) + ")";
          },
          [](const Until& x) {
            return "(" + render(x.lhs) + ") U" + render_interval(x.interval) + " (" +
                   render(x.rhs) + ")";
          },
      },
      f.node().v);
}

}  // namespace stlobs
