#pragma once

#include <string>
#include <vector>

#include "core/instance.hpp"
#include "core/solver.hpp"
#include "core/verifier.hpp"

namespace propavg {

// Instance documents look like:
//   { "agents": 3, "goods": 4, "valuations": [[10,7,7,6], [10,7,7,6], [10,7,7,6]] }
// Good indices are 0-based everywhere. Emission uses a fixed key order and
// indentation, so equal instances serialize to identical bytes.
std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);

// Accepts either a bare array of bundles or any object with an "allocation"
// key (a result document works). Bundles are sorted on input; duplicate or
// out-of-range indices are input errors. Partition-ness is not enforced here;
// callers decide with validate_allocation.
Allocation allocation_from_json(const Instance& inst, const std::string& text);

// Result document: the allocation, a certificate block per requested notion
// (per-agent verdict and the deciding lhs/rhs integers), and the solver trace
// when one is supplied. Byte-deterministic for equal inputs.
std::string result_to_json(const Instance& inst, const Allocation& alloc, const SolverTrace* trace,
                           const std::vector<Notion>& notions);

}  // namespace propavg
