// Copyright 2026 The Metamorph Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <limits>

#include "metamorph/ast_walk.hpp"
#include "metamorph/interp.hpp"

namespace metamorph {

std::string to_string(const Value& v) {
  switch (v.type) {
    case Type::Int: return std::to_string(v.i);
    case Type::Boolean: return v.b ? "true" : "false";
    case Type::Void: return "void";
  }
  return "?";
}

std::string_view to_string(RuntimeErrorKind kind) {
  return kind == RuntimeErrorKind::DivByZero ? "DivByZero" : "MissingReturn";
}

std::string_view to_string(Outcome::Kind kind) {
  switch (kind) {
    case Outcome::Kind::Returned: return "Returned";
    case Outcome::Kind::RuntimeError: return "RuntimeError";
    case Outcome::Kind::FuelExhausted: return "FuelExhausted";
  }
  return "?";
}

bool Outcome::matches(const Outcome& other) const {
  if (kind != other.kind) return false;
  switch (kind) {
    case Kind::Returned: return value == other.value;
    case Kind::RuntimeError: return error == other.error;
    case Kind::FuelExhausted: return true;
  }
  return false;
}

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
constexpr std::int32_t kIntMin = std::numeric_limits<std::int32_t>::min();

std::int32_t wrap(std::uint32_t bits) { return static_cast<std::int32_t>(bits); }
std::uint32_t bits(std::int32_t v) { return static_cast<std::uint32_t>(v); }

struct OutOfFuel {};
struct Fault {
  RuntimeErrorKind kind;
  NodeId at;
};

enum class Flow { Normal, Break, Continue, Return };

}  // namespace

class Execution {
 public:
  Execution(const Interpreter& in, std::uint64_t fuel, AccessTracer* tracer)
      : in_(in), fuel_(fuel), tracer_(tracer) {}

  std::uint64_t used() const { return used_; }

  Value call(std::size_t mi, std::vector<Value> args) {
    if (depth_ >= kMaxCallDepth) throw OutOfFuel{};
    const MethodDecl& m = in_.unit_.methods[mi];
    const auto& info = in_.methods_[mi];
    std::vector<Value> frame(info.slots);
    for (std::size_t i = 0; i < args.size(); ++i) frame[info.param_slots[i]] = args[i];

    std::vector<Value>* saved = frame_;
    frame_ = &frame;
    ++depth_;
    const Flow flow = exec_list(m.body.stmts);
    --depth_;
    frame_ = saved;

    if (flow == Flow::Return) return ret_;
    if (m.return_type == Type::Void) return Value::void_value();
    throw Fault{RuntimeErrorKind::MissingReturn, m.id};
  }

 private:
  void tick() {
    if (used_ >= fuel_) throw OutOfFuel{};
    ++used_;
  }

  int frame_depth() const { return depth_ - 1; }

  Value load(NodeId node) {
    if (tracer_ != nullptr) tracer_->read(in_.table_.at(node), frame_depth());
    return (*frame_)[in_.slot_of_[node]];
  }

  void store(NodeId node, Value v) {
    if (tracer_ != nullptr) tracer_->write(in_.table_.at(node), frame_depth());
    (*frame_)[in_.slot_of_[node]] = v;
  }

  Flow exec_list(const std::vector<Stmt>& stmts) {
    for (const auto& s : stmts) {
      const Flow f = exec(s);
      if (f != Flow::Normal) return f;
    }
    return Flow::Normal;
  }

  Flow exec(const Stmt& s) {
    tick();
    if (tracer_ != nullptr) tracer_->enter(s, frame_depth());
    const Flow f = std::visit([&](const auto& n) { return run(s, n); }, s.node);
    if (tracer_ != nullptr) tracer_->leave(s, frame_depth());
    return f;
  }

  Flow run(const Stmt& s, const VarDecl& d) {
    Value v = d.type == Type::Int ? Value::of_int(0) : Value::of_bool(false);
    if (d.init) v = eval(*d.init);
    store(s.id, v);
    return Flow::Normal;
  }

  Flow run(const Stmt&, const ExprStmt& e) {
    eval(e.expr);
    return Flow::Normal;
  }

  Flow run(const Stmt&, const If& n) {
    if (eval(n.cond).b) return exec_list(n.then_block.stmts);
    if (n.else_block) return exec_list(n.else_block->stmts);
    return Flow::Normal;
  }

  Flow run(const Stmt&, const While& n) {
    while (eval(n.cond).b) {
      const Flow f = exec_list(n.body.stmts);
      if (f == Flow::Break) break;
      if (f == Flow::Return) return f;
    }
    return Flow::Normal;
  }

  Flow run(const Stmt&, const For& n) {
    if (n.init) {
      const Flow f = exec(**n.init);
      if (f != Flow::Normal) return f;
    }
    while (!n.cond || eval(*n.cond).b) {
      const Flow f = exec_list(n.body.stmts);
      if (f == Flow::Break) break;
      if (f == Flow::Return) return f;
      if (n.update) eval(*n.update);
    }
    return Flow::Normal;
  }

  Flow run(const Stmt&, const Switch& n) {
    const std::int32_t key = eval(n.scrutinee).i;
    std::size_t start = n.cases.size();
    for (std::size_t i = 0; i < n.cases.size(); ++i) {
      if (n.cases[i].label == key) {
        start = i;
        break;
      }
    }
    if (start == n.cases.size() && !n.default_body) return Flow::Normal;
    auto finish = [](Flow f) { return f == Flow::Break ? Flow::Normal : f; };
    for (std::size_t i = start; i < n.cases.size(); ++i) {
      const Flow f = exec_list(n.cases[i].body);
      if (f != Flow::Normal) return finish(f);
    }
    if (n.default_body) return finish(exec_list(*n.default_body));
    return Flow::Normal;
  }

  Flow run(const Stmt&, const Return& r) {
    ret_ = r.value ? eval(*r.value) : Value::void_value();
    return Flow::Return;
  }

  Flow run(const Stmt&, const Break&) { return Flow::Break; }
  Flow run(const Stmt&, const Continue&) { return Flow::Continue; }
  Flow run(const Stmt&, const Block& b) { return exec_list(b.stmts); }

  Value eval(const Expr& e) {
    tick();
    return std::visit([&](const auto& n) { return value_of(e, n); }, e.node);
  }

  Value value_of(const Expr&, const IntLit& n) { return Value::of_int(n.value); }
  Value value_of(const Expr&, const BoolLit& n) { return Value::of_bool(n.value); }
  Value value_of(const Expr& e, const Var&) { return load(e.id); }

  Value value_of(const Expr&, const Unary& u) {
    const Value v = eval(*u.operand);
    if (u.op == UnaryOp::Not) return Value::of_bool(!v.b);
    return Value::of_int(wrap(0u - bits(v.i)));
  }

  std::int32_t arith(BinaryOp op, std::int32_t a, std::int32_t b, NodeId at) {
    switch (op) {
      case BinaryOp::Add: return wrap(bits(a) + bits(b));
      case BinaryOp::Sub: return wrap(bits(a) - bits(b));
      case BinaryOp::Mul: return wrap(bits(a) * bits(b));
      case BinaryOp::Div:
        if (b == 0) throw Fault{RuntimeErrorKind::DivByZero, at};
        if (a == kIntMin && b == -1) return kIntMin;
        return a / b;
      case BinaryOp::Rem:
        if (b == 0) throw Fault{RuntimeErrorKind::DivByZero, at};
        if (b == -1) return 0;
        return a % b;
      default: return 0;
    }
  }

  Value value_of(const Expr& e, const Binary& n) {
    if (n.op == BinaryOp::And) {
      if (!eval(*n.lhs).b) return Value::of_bool(false);
      return Value::of_bool(eval(*n.rhs).b);
    }
    if (n.op == BinaryOp::Or) {
      if (eval(*n.lhs).b) return Value::of_bool(true);
      return Value::of_bool(eval(*n.rhs).b);
    }
    const Value a = eval(*n.lhs);
    const Value b = eval(*n.rhs);
    switch (n.op) {
      case BinaryOp::Lt: return Value::of_bool(a.i < b.i);
      case BinaryOp::Le: return Value::of_bool(a.i <= b.i);
      case BinaryOp::Gt: return Value::of_bool(a.i > b.i);
      case BinaryOp::Ge: return Value::of_bool(a.i >= b.i);
      case BinaryOp::Eq: return Value::of_bool(a == b);
      case BinaryOp::Ne: return Value::of_bool(!(a == b));
      default: return Value::of_int(arith(n.op, a.i, b.i, e.id));
    }
  }

  Value value_of(const Expr& e, const Assign& n) {
    const NodeId target = n.target->id;
    Value v;
    if (n.op == AssignOp::Set) {
      v = eval(*n.value);
    } else {
      // Java reads the target before evaluating the right-hand side.
      const std::int32_t current = load(target).i;
      const std::int32_t rhs = eval(*n.value).i;
      BinaryOp op = BinaryOp::Add;
      switch (n.op) {
        case AssignOp::Add: op = BinaryOp::Add; break;
        case AssignOp::Sub: op = BinaryOp::Sub; break;
        case AssignOp::Mul: op = BinaryOp::Mul; break;
        case AssignOp::Div: op = BinaryOp::Div; break;
        case AssignOp::Rem: op = BinaryOp::Rem; break;
        case AssignOp::Set: break;
      }
      v = Value::of_int(arith(op, current, rhs, e.id));
    }
    store(target, v);
    return v;
  }

  Value value_of(const Expr&, const IncDec& n) {
    const NodeId target = n.target->id;
    const std::int32_t old = load(target).i;
    const std::int32_t updated =
        n.op == IncDecOp::Inc ? wrap(bits(old) + 1u) : wrap(bits(old) - 1u);
    store(target, Value::of_int(updated));
    return Value::of_int(n.fixity == Fixity::Prefix ? updated : old);
  }

  Value value_of(const Expr& e, const Call& c) {
    std::vector<Value> args;
    args.reserve(c.args.size());
    for (const auto& a : c.args) args.push_back(eval(a));
    return call(in_.callee_of_[e.id], std::move(args));
  }

  const Interpreter& in_;
  std::uint64_t fuel_;
  std::uint64_t used_ = 0;
  AccessTracer* tracer_;
  int depth_ = 0;
  std::vector<Value>* frame_ = nullptr;
  Value ret_;
};

Interpreter::Interpreter(const CompilationUnit& unit) : unit_(unit), table_(resolve(unit_)) {
  slot_of_.assign(unit_.next_id, kNone);
  callee_of_.assign(unit_.next_id, kNone);
  methods_.resize(unit_.methods.size());

  std::vector<std::uint32_t> slot_of_symbol(table_.symbols().size(), kNone);
  for (SymbolId id = 0; id < table_.symbols().size(); ++id) {
    const Symbol& sym = table_.symbol(id);
    slot_of_symbol[id] = static_cast<std::uint32_t>(methods_[sym.method].slots++);
  }
  for (const auto& [node, sym] : table_.bindings()) slot_of_[node] = slot_of_symbol[sym];

  for (std::size_t mi = 0; mi < unit_.methods.size(); ++mi) {
    const MethodDecl& m = unit_.methods[mi];
    for (const auto& p : m.params) methods_[mi].param_slots.push_back(slot_of_[p.id]);
    walk_method(m, Overloaded{
                       [&](const Expr& e) {
                         if (const auto* c = std::get_if<Call>(&e.node)) {
                           for (std::size_t k = 0; k < unit_.methods.size(); ++k) {
                             if (unit_.methods[k].name == c->callee) {
                               callee_of_[e.id] = static_cast<std::uint32_t>(k);
                             }
                           }
                         }
                       },
                       [](const auto&) {},
                   });
  }
}

Outcome Interpreter::run(std::string_view method, const std::vector<Value>& args,
                         std::uint64_t fuel, AccessTracer* tracer) const {
  std::size_t mi = unit_.methods.size();
  for (std::size_t k = 0; k < unit_.methods.size(); ++k) {
    if (unit_.methods[k].name == method) mi = k;
  }
  if (mi == unit_.methods.size()) {
    throw ContractError("no method named '" + std::string(method) + "'");
  }
  const MethodDecl& m = unit_.methods[mi];
  if (args.size() != m.params.size()) throw ContractError("argument count mismatch");
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i].type != m.params[i].type) throw ContractError("argument type mismatch");
  }
  if (fuel == 0) throw ContractError("fuel must be positive");

  Execution exec(*this, fuel, tracer);
  Outcome out;
  try {
    out.value = exec.call(mi, args);
    out.kind = Outcome::Kind::Returned;
  } catch (const OutOfFuel&) {
    out.kind = Outcome::Kind::FuelExhausted;
  } catch (const Fault& f) {
    out.kind = Outcome::Kind::RuntimeError;
    out.error = f.kind;
    out.at = f.at;
  }
  out.fuel_used = exec.used();
  return out;
}

Outcome evaluate(const CompilationUnit& unit, std::string_view method,
                 const std::vector<Value>& args, std::uint64_t fuel) {
  return Interpreter(unit).run(method, args, fuel);
}

}  // namespace metamorph
