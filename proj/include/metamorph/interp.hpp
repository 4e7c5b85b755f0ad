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

// Fuel-bounded reference interpreter with Java int semantics, and the
// differential check that compares an original unit against a variant.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "metamorph/ast.hpp"
#include "metamorph/scope.hpp"

namespace metamorph {

struct Value {
  Type type = Type::Void;
  std::int32_t i = 0;
  bool b = false;

  static Value of_int(std::int32_t v) { return Value{Type::Int, v, false}; }
  static Value of_bool(bool v) { return Value{Type::Boolean, 0, v}; }
  static Value void_value() { return Value{}; }

  bool operator==(const Value& o) const {
    if (type != o.type) return false;
    if (type == Type::Int) return i == o.i;
    if (type == Type::Boolean) return b == o.b;
    return true;
  }
};

std::string to_string(const Value& v);

enum class RuntimeErrorKind { DivByZero, MissingReturn };
std::string_view to_string(RuntimeErrorKind kind);

struct Outcome {
  enum class Kind { Returned, RuntimeError, FuelExhausted };
  Kind kind = Kind::Returned;
  Value value;                                        // Returned
  RuntimeErrorKind error = RuntimeErrorKind::DivByZero;  // RuntimeError
  NodeId at = 0;                                      // RuntimeError
  std::uint64_t fuel_used = 0;

  /// Observable agreement: values for returns, error kinds for errors.
  bool matches(const Outcome& other) const;
  bool operator==(const Outcome&) const = default;
};

std::string_view to_string(Outcome::Kind kind);

class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Receives every variable access of a traced run. depth is the call depth
/// of the frame that owns the symbol (0 for the entry method).
class AccessTracer {
 public:
  virtual ~AccessTracer() = default;
  virtual void enter(const Stmt& stmt, int depth) = 0;
  virtual void leave(const Stmt& stmt, int depth) = 0;
  virtual void read(SymbolId symbol, int depth) = 0;
  virtual void write(SymbolId symbol, int depth) = 0;
};

inline constexpr std::uint64_t kDefaultFuel = 100000;
inline constexpr std::size_t kDefaultTrials = 64;
// Deeper recursion is reported as FuelExhausted.
inline constexpr int kMaxCallDepth = 256;

/// Immutable, resolved view of a unit. run() is reentrant and may be called
/// from several threads at once.
class Interpreter {
 public:
  explicit Interpreter(const CompilationUnit& unit);

  const CompilationUnit& unit() const { return unit_; }
  const SymbolTable& symbols() const { return table_; }

  Outcome run(std::string_view method, const std::vector<Value>& args, std::uint64_t fuel,
              AccessTracer* tracer = nullptr) const;

 private:
  friend class Execution;
  struct MethodInfo {
    std::size_t slots = 0;
    std::vector<std::uint32_t> param_slots;
  };

  CompilationUnit unit_;
  SymbolTable table_;
  std::vector<MethodInfo> methods_;
  // Indexed by NodeId: frame slot for Var/VarDecl nodes, callee index for calls.
  std::vector<std::uint32_t> slot_of_;
  std::vector<std::uint32_t> callee_of_;
};

Outcome evaluate(const CompilationUnit& unit, std::string_view method,
                 const std::vector<Value>& args, std::uint64_t fuel = kDefaultFuel);

/// n argument vectors for the given parameter types. Ints mix a fixed boundary
/// set with uniform samples from [-1000, 1000]; booleans alternate on even
/// trials and are random on odd ones.
std::vector<std::vector<Value>> gen_inputs(const std::vector<Type>& signature, std::uint64_t seed,
                                           std::size_t n);

/// Full cartesian domain: ints in [lo, hi], both booleans.
std::vector<std::vector<Value>> exhaustive_inputs(const std::vector<Type>& signature,
                                                  std::int32_t lo, std::int32_t hi);

inline constexpr std::int32_t kBoundaryInts[] = {
    -2147483647 - 1, -100, -2, -1, 0, 1, 2, 7, 100, 2147483647,
};

struct Trial {
  std::vector<Value> args;
  Outcome original;
  Outcome variant;

  bool operator==(const Trial&) const = default;
};

struct EquivalenceVerdict {
  enum class Status { Equivalent, Divergent, Inconclusive };
  Status status = Status::Equivalent;
  std::optional<Trial> witness;   // first divergent trial
  std::size_t trials = 0;
  std::size_t exhausted = 0;      // trials where either side ran out of fuel

  bool operator==(const EquivalenceVerdict&) const = default;
};

std::string_view to_string(EquivalenceVerdict::Status status);

struct EquivalenceOptions {
  std::size_t trials = kDefaultTrials;
  std::uint64_t seed = 0;
  std::uint64_t fuel = kDefaultFuel;
};

/// Differential execution over gen_inputs. Divergent on the first trial (in
/// trial order) whose conclusive outcomes disagree. Inconclusive when no trial
/// diverges but fuel ran out in more than half of them.
EquivalenceVerdict check_equivalence(const CompilationUnit& original,
                                     const CompilationUnit& variant, std::string_view method,
                                     const EquivalenceOptions& options = {});

/// Same verdict over caller-supplied inputs. Trials run in parallel; the
/// merge is in input order so the witness does not depend on scheduling.
EquivalenceVerdict check_equivalence_on(const Interpreter& original, const Interpreter& variant,
                                        std::string_view method,
                                        const std::vector<std::vector<Value>>& inputs,
                                        std::uint64_t fuel);

/// Single-threaded reference for check_equivalence_on, kept for testing and
/// benchmarking the parallel path.
EquivalenceVerdict check_equivalence_serial(const Interpreter& original,
                                            const Interpreter& variant, std::string_view method,
                                            const std::vector<std::vector<Value>>& inputs,
                                            std::uint64_t fuel);

}  // namespace metamorph
