#include "stlobs/monitor.hpp"

#include <algorithm>

namespace stlobs {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

Monitor Monitor::compile(const Formula& f, std::vector<std::string> signals,
                         CompileOptions options) {
  if (auto violations = validate(f); !violations.empty()) {
    std::string msg = "formula rejected:";
    for (const auto& v : violations) msg += " [" + v.path + "] " + v.message + ";";
    throw CompileError(msg, std::move(violations));
  }
  for (const auto& s : referenced_signals(f)) {
    if (std::find(signals.begin(), signals.end(), s) == signals.end()) {
      throw CompileError("formula references undeclared signal '" + s + "'", {});
    }
  }
  return Monitor(f, std::move(signals), options);
}

Monitor Monitor::compile(const Formula& f, CompileOptions options) {
  return compile(f, referenced_signals(f), options);
}

Monitor::Monitor(Formula f, std::vector<std::string> signals, CompileOptions options)
    : formula_(std::move(f)), signals_(std::move(signals)), options_(options) {
  compile_node(formula_);
  outputs_.resize(nodes_.size());
}

std::size_t Monitor::compile_prop(const Formula& f) {
  Prop p{};
  std::visit(overloaded{
                 [&](const Atom& x) {
                   p.op = Prop::Op::atom;
                   for (const auto& t : x.pred.terms) {
                     const auto idx = static_cast<std::size_t>(
                         std::find(signals_.begin(), signals_.end(), t.signal) - signals_.begin());
                     p.atom.terms.emplace_back(idx, t.coeff);
                   }
                   p.atom.constant = x.pred.constant;
                   p.atom.cmp = x.pred.cmp;
                 },
                 [&](const Constant& x) {
                   p.op = Prop::Op::constant;
                   p.value = x.value;
                 },
                 [&](const Not& x) {
                   p.op = Prop::Op::negate;
                   p.lhs = compile_prop(x.operand);
                 },
                 [&](const And& x) {
                   p.op = Prop::Op::conj;
                   p.lhs = compile_prop(x.lhs);
                   p.rhs = compile_prop(x.rhs);
                 },
                 [&](const Or& x) {
                   p.op = Prop::Op::disj;
                   p.lhs = compile_prop(x.lhs);
                   p.rhs = compile_prop(x.rhs);
                 },
                 [&](const Implies& x) {
                   p.op = Prop::Op::impl;
                   p.lhs = compile_prop(x.lhs);
                   p.rhs = compile_prop(x.rhs);
                 },
                 [&](const auto&) {
                   throw std::logic_error("temporal operator in propositional position");
                 },
             },
             f.node().v);
  props_.push_back(std::move(p));
  return props_.size() - 1;
}

std::size_t Monitor::compile_node(const Formula& f) {
  using Variant = decltype(Node::v);
  Variant v = [&]() -> Variant {
    if (is_propositional(f)) return Anchored{compile_prop(f)};
    return std::visit(
        overloaded{
            [&](const Not& x) -> Variant { return NotNode{compile_node(x.operand)}; },
            [&](const And& x) -> Variant {
              const auto l = compile_node(x.lhs);
              return BinaryNode{BinaryNode::Op::conj, l, compile_node(x.rhs)};
            },
            [&](const Or& x) -> Variant {
              const auto l = compile_node(x.lhs);
              return BinaryNode{BinaryNode::Op::disj, l, compile_node(x.rhs)};
            },
            [&](const Implies& x) -> Variant {
              const auto l = compile_node(x.lhs);
              return BinaryNode{BinaryNode::Op::impl, l, compile_node(x.rhs)};
            },
            [&](const Eventually& x) -> Variant {
              return EventuallyUnit{compile_prop(x.operand), EventuallyTrueCell(x.interval),
                                    EventuallyFalseCell(x.interval)};
            },
            [&](const Always& x) -> Variant {
              return AlwaysUnit{compile_prop(x.operand), AlwaysTrueCell(x.interval),
                                AlwaysFalseCell(x.interval)};
            },
            [&](const Until& x) -> Variant {
              const auto l = compile_prop(x.lhs);
              return UntilUnit{l, compile_prop(x.rhs), UntilTrueCell(x.interval),
                               UntilFalseCell(x.interval)};
            },
            [&](const auto&) -> Variant {
              throw std::logic_error("unreachable: propositional leaf");
            },
        },
        f.node().v);
  }();
  nodes_.push_back(Node{std::move(v)});
  return nodes_.size() - 1;
}

bool Monitor::eval(std::size_t idx, std::span<const double> sample) const {
  const Prop& p = props_[idx];
  switch (p.op) {
    case Prop::Op::atom: {
      double sum = 0.0;
      for (const auto& [signal, coeff] : p.atom.terms) sum += coeff * sample[signal];
      return compare(sum + p.atom.constant, p.atom.cmp, 0.0);
    }
    case Prop::Op::constant: return p.value;
    case Prop::Op::negate: return !eval(p.lhs, sample);
    case Prop::Op::conj: return eval(p.lhs, sample) && eval(p.rhs, sample);
    case Prop::Op::disj: return eval(p.lhs, sample) || eval(p.rhs, sample);
    case Prop::Op::impl: return !eval(p.lhs, sample) || eval(p.rhs, sample);
  }
  return false;
}

VerdictRecord Monitor::step(std::span<const double> sample) {
  if (sample.size() != signals_.size()) {
    throw SampleError("sample has " + std::to_string(sample.size()) + " values, monitor expects " +
                      std::to_string(signals_.size()));
  }
  const bool drop_latch = options_.mutation == Mutation::drop_latch;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    Node& node = nodes_[i];
    auto temporal = [&](bool pos, bool neg) {
      const bool fired_now = pos && !node.last_positive;
      node.last_positive = pos;
      return FlagPair(drop_latch ? fired_now : pos, neg);
    };
    outputs_[i] = std::visit(
        overloaded{
            [&](Anchored& x) {
              const bool v = x.at_zero.step(eval(x.expr, sample));
              return FlagPair(v, !v);
            },
            [&](EventuallyUnit& x) {
              const bool phi = eval(x.phi, sample);
              return temporal(x.pos.step(phi), x.neg.step(phi));
            },
            [&](AlwaysUnit& x) {
              const bool phi = eval(x.phi, sample);
              return temporal(x.pos.step(phi), x.neg.step(phi));
            },
            [&](UntilUnit& x) {
              const bool phi1 = eval(x.phi1, sample);
              const bool phi2 = eval(x.phi2, sample);
              return temporal(x.pos.step(phi1, phi2), x.neg.step(phi1, phi2));
            },
            [&](NotNode& x) { return to_flags(not3(from_flags(outputs_[x.child]))); },
            [&](BinaryNode& x) {
              const Trilean l = from_flags(outputs_[x.lhs]);
              const Trilean r = from_flags(outputs_[x.rhs]);
              switch (x.op) {
                case BinaryNode::Op::conj:
                  if (options_.mutation == Mutation::kleene_and_unknown && l == Trilean::U &&
                      r == Trilean::U) {
                    return to_flags(Trilean::F);
                  }
                  return to_flags(and3(l, r));
                case BinaryNode::Op::disj: return to_flags(or3(l, r));
                case BinaryNode::Op::impl: return to_flags(implies3(l, r));
              }
              return FlagPair();
            },
        },
        node.v);
  }
  const FlagPair root = outputs_.back();
  return VerdictRecord{tick_++, root, from_flags(root)};
}

VerdictRecord Monitor::step(const std::map<std::string, double>& sample) {
  std::vector<double> row(signals_.size());
  for (std::size_t i = 0; i < signals_.size(); ++i) {
    auto it = sample.find(signals_[i]);
    if (it == sample.end()) throw SampleError("missing value for signal '" + signals_[i] + "'");
    row[i] = it->second;
  }
  if (sample.size() != signals_.size()) {
    for (const auto& [name, value] : sample) {
      if (std::find(signals_.begin(), signals_.end(), name) == signals_.end()) {
        throw SampleError("sample carries undeclared signal '" + name + "'");
      }
    }
  }
  return step(row);
}

std::vector<VerdictRecord> Monitor::run(const Trace& trace, RunOptions options) {
  std::vector<std::size_t> columns(signals_.size());
  for (std::size_t i = 0; i < signals_.size(); ++i) {
    const auto& sig = trace.signals();
    auto it = std::find(sig.begin(), sig.end(), signals_[i]);
    if (it == sig.end()) throw SampleError("trace has no signal '" + signals_[i] + "'");
    columns[i] = static_cast<std::size_t>(it - sig.begin());
  }
  std::vector<VerdictRecord> out;
  out.reserve(trace.length());
  std::vector<double> row(signals_.size());
  for (Tick t = 0; t < trace.length(); ++t) {
    for (std::size_t i = 0; i < columns.size(); ++i) row[i] = trace.at(t, columns[i]);
    out.push_back(step(row));
    if (options.early_stop && out.back().verdict != Trilean::U) break;
  }
  return out;
}

std::size_t Monitor::temporal_cell_count() const {
  std::size_t n = 0;
  for (const auto& node : nodes_) {
    if (std::holds_alternative<EventuallyUnit>(node.v) ||
        std::holds_alternative<AlwaysUnit>(node.v) || std::holds_alternative<UntilUnit>(node.v)) {
      n += 2;
    }
  }
  return n;
}

StateVector Monitor::state() const {
  StateVector out;
  for (const auto& node : nodes_) {
    std::visit(overloaded{
                   [&](const Anchored& x) { x.at_zero.append_state(out); },
                   [&](const EventuallyUnit& x) {
                     x.pos.append_state(out);
                     x.neg.append_state(out);
                   },
                   [&](const AlwaysUnit& x) {
                     x.pos.append_state(out);
                     x.neg.append_state(out);
                   },
                   [&](const UntilUnit& x) {
                     x.pos.append_state(out);
                     x.neg.append_state(out);
                   },
                   [](const auto&) {},
               },
               node.v);
    if (options_.mutation == Mutation::drop_latch) out.push_back(node.last_positive);
  }
  return out;
}

}  // namespace stlobs
