#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rvvport/error.hpp"
#include "rvvport/function_ir.hpp"

namespace rvvport {

/// IN and OUT sets per statement, indexed by statement id.
struct LivenessResult {
  std::vector<VarSet> live_in;
  std::vector<VarSet> live_out;
  int passes = 0;  // sweeps over the blocks until nothing changed

  friend bool operator==(const LivenessResult& a, const LivenessResult& b) {
    return a.live_in == b.live_in && a.live_out == b.live_out;
  }
};

/// Backward iterative liveness: IN(i) = (OUT(i) - DEF(i)) u USE(i), OUT(i) the
/// union of IN over successors. Blocks are swept in `block_order` (default:
/// reverse program order) until no set changes.
LivenessResult solve_liveness(const FunctionIr& ir, std::span<const int> block_order = {});

/// Thrown when path enumeration would exceed the configured budget.
class OracleRefusal : public AnalysisError {
 public:
  using AnalysisError::AnalysisError;
};

/// Brute-force liveness by enumerating statement paths of at most
/// `path_bound` statements (0 selects statement count + 1, enough for every
/// simple path plus one return to the start). v is live into i when some
/// path from i reads v before writing it.
LivenessResult oracle_liveness(const FunctionIr& ir, int path_bound = 0, std::size_t max_paths = 2'000'000);

/// Statements where IN(i) != (OUT(i) - DEF(i)) u USE(i) or OUT(i) differs
/// from the union of successor INs. Empty for a fixpoint.
std::vector<int> fixpoint_violations(const FunctionIr& ir, const LivenessResult& live);

/// Successor statements of each statement, looking through empty blocks.
std::vector<std::vector<int>> statement_successors(const FunctionIr& ir);

}  // namespace rvvport
