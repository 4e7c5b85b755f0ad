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

#include <sstream>

#include "metamorph/syntax.hpp"

namespace metamorph {

namespace {

constexpr int kAssignPrec = 0;
constexpr int kUnaryPrec = 7;
constexpr int kAtomPrec = 9;

int precedence(BinaryOp op) {
  switch (op) {
    case BinaryOp::Or: return 1;
    case BinaryOp::And: return 2;
    case BinaryOp::Eq:
    case BinaryOp::Ne: return 3;
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge: return 4;
    case BinaryOp::Add:
    case BinaryOp::Sub: return 5;
    case BinaryOp::Mul:
    case BinaryOp::Div:
    case BinaryOp::Rem: return 6;
  }
  return 0;
}

int precedence(const Expr& e) {
  return std::visit(
      [](const auto& n) -> int {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Binary>) {
          return precedence(n.op);
        } else if constexpr (std::is_same_v<T, Assign>) {
          return kAssignPrec;
        } else if constexpr (std::is_same_v<T, Unary>) {
          return kUnaryPrec;
        } else if constexpr (std::is_same_v<T, IncDec>) {
          return n.fixity == Fixity::Prefix ? kUnaryPrec : kAtomPrec - 1;
        } else {
          return kAtomPrec;
        }
      },
      e.node);
}

void print_expr(std::ostream& out, const Expr& e, int min_prec);

// Operands of unary operators stay bare only when no token can fuse with the
// operator ("- -x" vs "--x") and no precedence question arises.
void print_unary_operand(std::ostream& out, const Expr& operand) {
  if (precedence(operand) > kUnaryPrec) {
    print_expr(out, operand, 0);
  } else {
    out << '(';
    print_expr(out, operand, 0);
    out << ')';
  }
}

void print_expr(std::ostream& out, const Expr& e, int min_prec) {
  const bool parens = precedence(e) < min_prec;
  if (parens) out << '(';
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, IntLit>) {
          out << n.value;
        } else if constexpr (std::is_same_v<T, BoolLit>) {
          out << (n.value ? "true" : "false");
        } else if constexpr (std::is_same_v<T, Var>) {
          out << n.name;
        } else if constexpr (std::is_same_v<T, Unary>) {
          out << to_string(n.op);
          print_unary_operand(out, *n.operand);
        } else if constexpr (std::is_same_v<T, Binary>) {
          const int p = precedence(n.op);
          print_expr(out, *n.lhs, p);
          out << ' ' << to_string(n.op) << ' ';
          print_expr(out, *n.rhs, p + 1);
        } else if constexpr (std::is_same_v<T, Assign>) {
          print_expr(out, *n.target, kAtomPrec);
          out << ' ' << to_string(n.op) << ' ';
          print_expr(out, *n.value, kAssignPrec);
        } else if constexpr (std::is_same_v<T, IncDec>) {
          if (n.fixity == Fixity::Prefix) out << to_string(n.op);
          print_expr(out, *n.target, kAtomPrec);
          if (n.fixity == Fixity::Postfix) out << to_string(n.op);
        } else if constexpr (std::is_same_v<T, Call>) {
          out << n.callee << '(';
          for (std::size_t i = 0; i < n.args.size(); ++i) {
            if (i > 0) out << ", ";
            print_expr(out, n.args[i], kAssignPrec);
          }
          out << ')';
        }
      },
      e.node);
  if (parens) out << ')';
}

class StmtPrinter {
 public:
  explicit StmtPrinter(std::ostream& out) : out_(out) {}

  void stmt(const Stmt& s, int depth) {
    std::visit([&](const auto& n) { emit(n, depth); }, s.node);
  }

  void block_body(const Block& b, int depth) {
    for (const auto& s : b.stmts) stmt(s, depth);
  }

  // Inline form used inside for headers: no indentation, no semicolon.
  void header_part(const Stmt& s) {
    if (const auto* d = std::get_if<VarDecl>(&s.node)) {
      out_ << to_string(d->type) << ' ' << d->name;
      if (d->init) {
        out_ << " = ";
        print_expr(out_, *d->init, kAssignPrec);
      }
    } else if (const auto* e = std::get_if<ExprStmt>(&s.node)) {
      print_expr(out_, e->expr, kAssignPrec);
    }
  }

 private:
  void indent(int depth) {
    for (int i = 0; i < depth; ++i) out_ << "    ";
  }

  void emit(const VarDecl& d, int depth) {
    indent(depth);
    out_ << to_string(d.type) << ' ' << d.name;
    if (d.init) {
      out_ << " = ";
      print_expr(out_, *d.init, kAssignPrec);
    }
    out_ << ";\n";
  }

  void emit(const ExprStmt& e, int depth) {
    indent(depth);
    print_expr(out_, e.expr, kAssignPrec);
    out_ << ";\n";
  }

  void emit_if_chain(const If& n, int depth) {
    out_ << "if (";
    print_expr(out_, n.cond, kAssignPrec);
    out_ << ") {\n";
    block_body(n.then_block, depth + 1);
    indent(depth);
    out_ << '}';
    if (n.else_block) {
      const auto& stmts = n.else_block->stmts;
      if (stmts.size() == 1 && std::holds_alternative<If>(stmts.front().node)) {
        out_ << " else ";
        emit_if_chain(std::get<If>(stmts.front().node), depth);
        return;
      }
      out_ << " else {\n";
      block_body(*n.else_block, depth + 1);
      indent(depth);
      out_ << '}';
    }
  }

  void emit(const If& n, int depth) {
    indent(depth);
    emit_if_chain(n, depth);
    out_ << '\n';
  }

  void emit(const While& n, int depth) {
    indent(depth);
    out_ << "while (";
    print_expr(out_, n.cond, kAssignPrec);
    out_ << ") {\n";
    block_body(n.body, depth + 1);
    indent(depth);
    out_ << "}\n";
  }

  void emit(const For& n, int depth) {
    indent(depth);
    out_ << "for (";
    if (n.init) header_part(**n.init);
    out_ << ';';
    if (n.cond) {
      out_ << ' ';
      print_expr(out_, *n.cond, kAssignPrec);
    }
    out_ << ';';
    if (n.update) {
      out_ << ' ';
      print_expr(out_, *n.update, kAssignPrec);
    }
    out_ << ") {\n";
    block_body(n.body, depth + 1);
    indent(depth);
    out_ << "}\n";
  }

  void emit(const Switch& n, int depth) {
    indent(depth);
    out_ << "switch (";
    print_expr(out_, n.scrutinee, kAssignPrec);
    out_ << ") {\n";
    for (const auto& c : n.cases) {
      indent(depth + 1);
      out_ << "case " << c.label << ":\n";
      for (const auto& s : c.body) stmt(s, depth + 2);
    }
    if (n.default_body) {
      indent(depth + 1);
      out_ << "default:\n";
      for (const auto& s : *n.default_body) stmt(s, depth + 2);
    }
    indent(depth);
    out_ << "}\n";
  }

  void emit(const Return& n, int depth) {
    indent(depth);
    out_ << "return";
    if (n.value) {
      out_ << ' ';
      print_expr(out_, *n.value, kAssignPrec);
    }
    out_ << ";\n";
  }

  void emit(const Break&, int depth) {
    indent(depth);
    out_ << "break;\n";
  }

  void emit(const Continue&, int depth) {
    indent(depth);
    out_ << "continue;\n";
  }

  void emit(const Block& b, int depth) {
    indent(depth);
    out_ << "{\n";
    block_body(b, depth + 1);
    indent(depth);
    out_ << "}\n";
  }

  std::ostream& out_;
};

void print_method(std::ostream& out, const MethodDecl& m) {
  out << to_string(m.return_type) << ' ' << m.name << '(';
  for (std::size_t i = 0; i < m.params.size(); ++i) {
    if (i > 0) out << ", ";
    out << to_string(m.params[i].type) << ' ' << m.params[i].name;
  }
  out << ") {\n";
  StmtPrinter(out).block_body(m.body, 1);
  out << "}\n";
}

}  // namespace

std::string print(const CompilationUnit& unit) {
  std::ostringstream out;
  for (std::size_t i = 0; i < unit.methods.size(); ++i) {
    if (i > 0) out << '\n';
    print_method(out, unit.methods[i]);
  }
  return out.str();
}

std::string print(const MethodDecl& method) {
  std::ostringstream out;
  print_method(out, method);
  return out.str();
}

std::string print(const Expr& expr) {
  std::ostringstream out;
  print_expr(out, expr, kAssignPrec);
  return out.str();
}

std::string print(const Stmt& stmt) {
  std::ostringstream out;
  StmtPrinter(out).stmt(stmt, 0);
  return out.str();
}

}  // namespace metamorph
