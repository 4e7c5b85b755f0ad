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

#include "metamorph/interp.hpp"
#include "metamorph/rng.hpp"

namespace metamorph {

std::string_view to_string(EquivalenceVerdict::Status status) {
  switch (status) {
    case EquivalenceVerdict::Status::Equivalent: return "Equivalent";
    case EquivalenceVerdict::Status::Divergent: return "Divergent";
    case EquivalenceVerdict::Status::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::vector<std::vector<Value>> gen_inputs(const std::vector<Type>& signature, std::uint64_t seed,
                                           std::size_t n) {
  constexpr std::size_t kBoundaryCount = std::size(kBoundaryInts);
  std::vector<std::vector<Value>> inputs(n);
  for (std::size_t t = 0; t < n; ++t) {
    SplitMix64 rng(mix_seed(seed, t));
    const bool even = t % 2 == 0;
    auto& args = inputs[t];
    args.reserve(signature.size());
    for (std::size_t j = 0; j < signature.size(); ++j) {
      if (signature[j] == Type::Boolean) {
        const bool v = even ? ((t / 2 + j) % 2 == 0) : (rng.next() & 1) != 0;
        args.push_back(Value::of_bool(v));
      } else if (even) {
        args.push_back(Value::of_int(kBoundaryInts[rng.below(kBoundaryCount)]));
      } else {
        args.push_back(Value::of_int(static_cast<std::int32_t>(rng.between(-1000, 1000))));
      }
    }
  }
  return inputs;
}

std::vector<std::vector<Value>> exhaustive_inputs(const std::vector<Type>& signature,
                                                  std::int32_t lo, std::int32_t hi) {
  std::vector<std::vector<Value>> out{{}};
  for (Type t : signature) {
    std::vector<Value> domain;
    if (t == Type::Boolean) {
      domain = {Value::of_bool(false), Value::of_bool(true)};
    } else {
      for (std::int32_t v = lo; v <= hi; ++v) domain.push_back(Value::of_int(v));
    }
    std::vector<std::vector<Value>> next;
    next.reserve(out.size() * domain.size());
    for (const auto& prefix : out) {
      for (const auto& v : domain) {
        auto args = prefix;
        args.push_back(v);
        next.push_back(std::move(args));
      }
    }
    out = std::move(next);
  }
  return out;
}

namespace {

void check_signatures(const Interpreter& original, const Interpreter& variant,
                      std::string_view method) {
  const MethodDecl* a = original.unit().find_method(method);
  const MethodDecl* b = variant.unit().find_method(method);
  if (a == nullptr || b == nullptr) {
    throw ContractError("method '" + std::string(method) + "' missing from one side");
  }
  if (signature(*a) != signature(*b) || a->return_type != b->return_type) {
    throw ContractError("method '" + std::string(method) + "' signatures differ");
  }
}

bool exhausted(const Trial& t) {
  return t.original.kind == Outcome::Kind::FuelExhausted ||
         t.variant.kind == Outcome::Kind::FuelExhausted;
}

// Folds trials in order into a verdict.
EquivalenceVerdict fold(std::vector<Trial>& trials, std::size_t total) {
  EquivalenceVerdict v;
  v.trials = total;
  for (auto& t : trials) {
    if (exhausted(t)) {
      ++v.exhausted;
      continue;
    }
    if (!t.original.matches(t.variant)) {
      v.status = EquivalenceVerdict::Status::Divergent;
      v.witness = std::move(t);
      return v;
    }
  }
  if (v.exhausted * 2 > total) v.status = EquivalenceVerdict::Status::Inconclusive;
  return v;
}

}  // namespace

EquivalenceVerdict check_equivalence_on(const Interpreter& original, const Interpreter& variant,
                                        std::string_view method,
                                        const std::vector<std::vector<Value>>& inputs,
                                        std::uint64_t fuel) {
  check_signatures(original, variant, method);
  const auto n = static_cast<std::int64_t>(inputs.size());
  std::vector<Trial> trials(inputs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& args = inputs[static_cast<std::size_t>(i)];
    Trial& t = trials[static_cast<std::size_t>(i)];
    t.args = args;
    t.original = original.run(method, args, fuel);
    t.variant = variant.run(method, args, fuel);
  }
  return fold(trials, inputs.size());
}

EquivalenceVerdict check_equivalence_serial(const Interpreter& original,
                                            const Interpreter& variant, std::string_view method,
                                            const std::vector<std::vector<Value>>& inputs,
                                            std::uint64_t fuel) {
  check_signatures(original, variant, method);
  EquivalenceVerdict v;
  v.trials = inputs.size();
  for (const auto& args : inputs) {
    Trial t{args, original.run(method, args, fuel), variant.run(method, args, fuel)};
    if (exhausted(t)) {
      ++v.exhausted;
      continue;
    }
    if (!t.original.matches(t.variant)) {
      v.status = EquivalenceVerdict::Status::Divergent;
      v.witness = std::move(t);
      return v;
    }
  }
  if (v.exhausted * 2 > v.trials) v.status = EquivalenceVerdict::Status::Inconclusive;
  return v;
}

EquivalenceVerdict check_equivalence(const CompilationUnit& original,
                                     const CompilationUnit& variant, std::string_view method,
                                     const EquivalenceOptions& options) {
  const Interpreter a(original);
  const Interpreter b(variant);
  check_signatures(a, b, method);
  const MethodDecl* m = original.find_method(method);
  const auto inputs = gen_inputs(signature(*m), options.seed, options.trials);
  return check_equivalence_on(a, b, method, inputs, options.fuel);
}

}  // namespace metamorph
