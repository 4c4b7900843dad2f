#include "random_ir.hpp"

#include <algorithm>
#include <deque>

namespace rvvport::testing {

FunctionIr random_ir(std::mt19937_64& rng, const RandomIrLimits& limits) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto coin = [&](double p) { return std::bernoulli_distribution(p)(rng); };

  FunctionIr ir;
  ir.name = "random";
  ir.return_type = "void";

  static const char* const kTypes[] = {"vint32mf2_t", "vint32m1_t", "vint32m2_t", "vint32m4_t"};
  const int nvars = pick(1, limits.max_vars);
  std::vector<std::string> vars;
  for (int v = 0; v < nvars; ++v) {
    vars.push_back("v" + std::to_string(v));
    ir.symbols[vars.back()] = *parse_vector_type(kTypes[pick(0, 3)]);
  }

  const int nblocks = pick(1, limits.max_blocks - 1);
  const int exit = nblocks;
  const int nstmts = pick(0, limits.max_stmts);
  ir.cfg.blocks.assign(nblocks + 1, {});
  ir.cfg.successors.assign(nblocks + 1, {});
  ir.cfg.entry = 0;
  ir.cfg.exit = exit;

  // Statements are spread over the blocks in program order.
  std::vector<int> owner;
  for (int s = 0; s < nstmts; ++s) owner.push_back(pick(0, nblocks - 1));
  std::sort(owner.begin(), owner.end());
  for (int s = 0; s < nstmts; ++s) {
    Stmt st;
    st.id = s;
    st.block = owner[s];
    st.kind = StmtKind::kAssign;
    st.text = "s" + std::to_string(s);
    st.span.line = s + 1;
    for (const auto& v : vars) {
      if (coin(0.3)) st.uses.insert(v);
      if (coin(0.2)) st.defs.insert(v);
    }
    ir.cfg.blocks[st.block].push_back(s);
    ir.stmts.push_back(std::move(st));
  }

  // A fall-through chain keeps every block reachable; extra edges add
  // branches and loops.
  for (int b = 0; b < nblocks; ++b) {
    ir.cfg.successors[b].insert(b + 1);
    if (coin(0.6)) ir.cfg.successors[b].insert(pick(0, nblocks));
  }
  return ir;
}

LivenessResult reference_liveness(const FunctionIr& ir) {
  const int n = static_cast<int>(ir.stmts.size());
  // Successor statements, skipping over empty blocks.
  std::vector<std::set<int>> next(n);
  auto first_stmts = [&](int block) {
    std::set<int> found;
    std::set<int> seen;
    std::deque<int> work{block};
    while (!work.empty()) {
      const int b = work.front();
      work.pop_front();
      if (!seen.insert(b).second) continue;
      if (!ir.cfg.blocks[b].empty()) {
        found.insert(ir.cfg.blocks[b].front());
        continue;
      }
      for (int s : ir.cfg.successors[b]) work.push_back(s);
    }
    return found;
  };
  for (std::size_t b = 0; b < ir.cfg.blocks.size(); ++b) {
    const auto& body = ir.cfg.blocks[b];
    for (std::size_t k = 0; k < body.size(); ++k) {
      if (k + 1 < body.size()) {
        next[body[k]].insert(body[k + 1]);
      } else {
        for (int s : ir.cfg.successors[b]) {
          for (int f : first_stmts(s)) next[body[k]].insert(f);
        }
      }
    }
  }

  // v read on some walk starting at statement `from` before being written.
  auto read_ahead = [&](int from, const std::string& v) {
    std::vector<bool> seen(n, false);
    std::deque<int> work{from};
    while (!work.empty()) {
      const int s = work.front();
      work.pop_front();
      if (seen[s]) continue;
      seen[s] = true;
      if (ir.stmts[s].uses.count(v)) return true;
      if (ir.stmts[s].defs.count(v)) continue;
      for (int t : next[s]) work.push_back(t);
    }
    return false;
  };

  LivenessResult r;
  r.live_in.assign(n, {});
  r.live_out.assign(n, {});
  for (int s = 0; s < n; ++s) {
    for (const auto& [v, type] : ir.symbols) {
      if (read_ahead(s, v)) r.live_in[s].insert(v);
      for (int t : next[s]) {
        if (read_ahead(t, v)) r.live_out[s].insert(v);
      }
    }
  }
  return r;
}

std::vector<double> reference_pressure(const FunctionIr& ir, const LivenessResult& live) {
  std::vector<double> out;
  for (std::size_t s = 0; s < ir.stmts.size(); ++s) {
    VarSet both = live.live_in[s];
    both.insert(live.live_out[s].begin(), live.live_out[s].end());
    double sum = 0;
    for (const auto& v : both) {
      const auto& t = ir.symbols.at(v);
      sum += static_cast<double>(t.lmul.numerator()) / t.lmul.denominator() * t.tuple_fields;
    }
    out.push_back(sum);
  }
  return out;
}

}  // namespace rvvport::testing
