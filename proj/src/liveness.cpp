#include "rvvport/liveness.hpp"

#include <algorithm>
#include <boost/dynamic_bitset.hpp>
#include <map>
#include <numeric>
#include <stdexcept>

namespace rvvport {
namespace {

using Bits = boost::dynamic_bitset<>;

class Universe {
 public:
  explicit Universe(const FunctionIr& ir) {
    for (const auto& [name, type] : ir.symbols) {
      (void)type;
      index_.emplace(name, names_.size());
      names_.push_back(name);
    }
  }

  Bits bits(const VarSet& vars) const {
    Bits b(names_.size());
    for (const auto& v : vars) b.set(index_.at(v));
    return b;
  }

  VarSet vars(const Bits& b) const {
    VarSet out;
    for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i)) out.insert(names_[i]);
    return out;
  }

  std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::map<std::string, std::size_t> index_;
};

}  // namespace

LivenessResult solve_liveness(const FunctionIr& ir, std::span<const int> block_order) {
  const Universe u(ir);
  const auto& cfg = ir.cfg;
  const std::size_t nb = cfg.blocks.size();
  LivenessResult result;
  result.live_in.resize(ir.stmts.size());
  result.live_out.resize(ir.stmts.size());
  if (nb == 0) return result;

  std::vector<int> order(block_order.begin(), block_order.end());
  if (order.empty()) {
    order.resize(nb);
    std::iota(order.rbegin(), order.rend(), 0);
  }

  // Upward-exposed uses and kills per block.
  std::vector<Bits> gen(nb, Bits(u.size())), kill(nb, Bits(u.size()));
  for (std::size_t b = 0; b < nb; ++b) {
    const auto& ids = cfg.blocks[b];
    for (auto it = ids.rbegin(); it != ids.rend(); ++it) {
      const auto& s = ir.stmts[*it];
      const Bits def = u.bits(s.defs);
      gen[b] = (gen[b] - def) | u.bits(s.uses);
      kill[b] |= def;
    }
  }

  std::vector<Bits> in(nb, Bits(u.size())), out(nb, Bits(u.size()));
  const int bound = static_cast<int>(nb * std::max<std::size_t>(u.size(), 1)) + 1;
  bool changed = true;
  while (changed) {
    changed = false;
    if (++result.passes > bound) throw std::logic_error("liveness failed to converge");
    for (int b : order) {
      Bits o(u.size());
      for (int s : cfg.successors[b]) o |= in[s];
      Bits i = gen[b] | (o - kill[b]);
      if (o != out[b] || i != in[b]) {
        out[b] = std::move(o);
        in[b] = std::move(i);
        changed = true;
      }
    }
  }

  for (std::size_t b = 0; b < nb; ++b) {
    Bits live = out[b];
    const auto& ids = cfg.blocks[b];
    for (auto it = ids.rbegin(); it != ids.rend(); ++it) {
      const auto& s = ir.stmts[*it];
      result.live_out[*it] = u.vars(live);
      live = (live - u.bits(s.defs)) | u.bits(s.uses);
      result.live_in[*it] = u.vars(live);
    }
  }
  return result;
}

std::vector<std::vector<int>> statement_successors(const FunctionIr& ir) {
  const auto& cfg = ir.cfg;
  // First statements reachable from a block entry, skipping empty blocks.
  auto heads = [&](int start) {
    std::vector<int> found;
    std::vector<bool> seen(cfg.blocks.size(), false);
    std::vector<int> work{start};
    while (!work.empty()) {
      const int b = work.back();
      work.pop_back();
      if (seen[b]) continue;
      seen[b] = true;
      if (!cfg.blocks[b].empty()) {
        found.push_back(cfg.blocks[b].front());
        continue;
      }
      for (int s : cfg.successors[b]) work.push_back(s);
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
  };

  std::vector<std::vector<int>> succ(ir.stmts.size());
  for (std::size_t b = 0; b < cfg.blocks.size(); ++b) {
    const auto& ids = cfg.blocks[b];
    for (std::size_t k = 0; k < ids.size(); ++k) {
      if (k + 1 < ids.size()) {
        succ[ids[k]] = {ids[k + 1]};
        continue;
      }
      std::vector<int> all;
      for (int s : cfg.successors[b]) {
        auto h = heads(s);
        all.insert(all.end(), h.begin(), h.end());
      }
      std::sort(all.begin(), all.end());
      all.erase(std::unique(all.begin(), all.end()), all.end());
      succ[ids[k]] = std::move(all);
    }
  }
  return succ;
}

LivenessResult oracle_liveness(const FunctionIr& ir, int path_bound, std::size_t max_paths) {
  const auto succ = statement_successors(ir);
  const int n = static_cast<int>(ir.stmts.size());
  if (path_bound <= 0) path_bound = n + 1;

  VarSet all_vars;
  for (const auto& [name, type] : ir.symbols) all_vars.insert(name);

  LivenessResult result;
  result.live_in.resize(n);
  result.live_out.resize(n);
  std::size_t paths = 0;

  for (int start = 0; start < n; ++start) {
    VarSet& live = result.live_in[start];
    // Depth-first walk; `killed` holds variables written earlier on the path.
    struct Frame {
      int stmt;
      int depth;
      VarSet killed;
    };
    std::vector<Frame> stack{{start, 1, {}}};
    while (!stack.empty()) {
      Frame f = std::move(stack.back());
      stack.pop_back();
      const auto& s = ir.stmts[f.stmt];
      for (const auto& v : s.uses) {
        if (!f.killed.count(v)) live.insert(v);
      }
      f.killed.insert(s.defs.begin(), s.defs.end());
      // Nothing left to discover along this path.
      bool open = false;
      for (const auto& v : all_vars) {
        if (!f.killed.count(v) && !live.count(v)) {
          open = true;
          break;
        }
      }
      if (!open || f.depth >= path_bound) continue;
      for (int next : succ[f.stmt]) {
        if (++paths > max_paths) {
          throw OracleRefusal("oracle refused: more than " + std::to_string(max_paths) +
                              " path extensions within bound " + std::to_string(path_bound));
        }
        stack.push_back({next, f.depth + 1, f.killed});
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int s : succ[i]) result.live_out[i].insert(result.live_in[s].begin(), result.live_in[s].end());
  }
  return result;
}

std::vector<int> fixpoint_violations(const FunctionIr& ir, const LivenessResult& live) {
  const auto succ = statement_successors(ir);
  std::vector<int> bad;
  for (std::size_t i = 0; i < ir.stmts.size(); ++i) {
    const auto& s = ir.stmts[i];
    VarSet expect_in = s.uses;
    for (const auto& v : live.live_out[i]) {
      if (!s.defs.count(v)) expect_in.insert(v);
    }
    VarSet expect_out;
    for (int n : succ[i]) expect_out.insert(live.live_in[n].begin(), live.live_in[n].end());
    if (expect_in != live.live_in[i] || expect_out != live.live_out[i]) bad.push_back(static_cast<int>(i));
  }
  return bad;
}

}  // namespace rvvport
