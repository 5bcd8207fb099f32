// Copyright 2026 The rampmatch Authors
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

#include "rampmatch/program.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <string>

#include "rampmatch/lp_format.hpp"
#include "rampmatch/pwl.hpp"

namespace rampmatch {
namespace {

std::string DemandRow(int p) { return "dem_p" + std::to_string(p); }

// Fixed marginals indexed for lookup by pair.
class FixedMass {
 public:
  explicit FixedMass(const std::vector<FractionalEntry>& fixed)
      : entries_(fixed) {
    std::sort(entries_.begin(), entries_.end(),
              [](const FractionalEntry& a, const FractionalEntry& b) {
                return a.paper != b.paper ? a.paper < b.paper
                                          : a.reviewer < b.reviewer;
              });
  }

  bool empty() const { return entries_.empty(); }

  double at(int p, int r) const {
    const auto it = std::lower_bound(
        entries_.begin(), entries_.end(), PairKey{p, r},
        [](const FractionalEntry& e, const PairKey& k) {
          return e.paper != k.paper ? e.paper < k.paper
                                    : e.reviewer < k.reviewer;
        });
    if (it == entries_.end() || it->paper != p || it->reviewer != r) return 0.0;
    return it->x;
  }

  // Entries of paper p.
  std::pair<const FractionalEntry*, const FractionalEntry*> paper(int p) const {
    const auto lo = std::lower_bound(
        entries_.begin(), entries_.end(), p,
        [](const FractionalEntry& e, int key) { return e.paper < key; });
    auto hi = lo;
    while (hi != entries_.end() && hi->paper == p) ++hi;
    return {entries_.data() + (lo - entries_.begin()),
            entries_.data() + (hi - entries_.begin())};
  }

  std::vector<double> reviewer_loads(int num_reviewers) const {
    std::vector<double> load(num_reviewers, 0.0);
    for (const FractionalEntry& e : entries_) load[e.reviewer] += e.x;
    return load;
  }

 private:
  std::vector<FractionalEntry> entries_;
};

// Dinic's algorithm on real-valued capacities.
class MaxFlow {
 public:
  explicit MaxFlow(int n) : head_(n, -1), level_(n), it_(n) {}

  void AddEdge(int u, int v, double cap) {
    to_.push_back(v);
    cap_.push_back(cap);
    next_.push_back(head_[u]);
    head_[u] = static_cast<int>(to_.size()) - 1;
    to_.push_back(u);
    cap_.push_back(0.0);
    next_.push_back(head_[v]);
    head_[v] = static_cast<int>(to_.size()) - 1;
  }

  double Run(int s, int t) {
    double total = 0.0;
    while (Bfs(s, t)) {
      it_ = head_;
      for (;;) {
        const double f = Dfs(s, t, std::numeric_limits<double>::infinity());
        if (f <= kEps) break;
        total += f;
      }
    }
    return total;
  }

  // Nodes reachable from s in the residual graph after Run().
  std::vector<char> Reachable(int s) const {
    std::vector<char> seen(head_.size(), 0);
    std::queue<int> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int e = head_[u]; e >= 0; e = next_[e]) {
        if (cap_[e] > kEps && !seen[to_[e]]) {
          seen[to_[e]] = 1;
          q.push(to_[e]);
        }
      }
    }
    return seen;
  }

  double Residual(int edge) const { return cap_[edge]; }
  int LastEdge() const { return static_cast<int>(to_.size()) - 2; }

 private:
  static constexpr double kEps = 1e-12;

  bool Bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int e = head_[u]; e >= 0; e = next_[e]) {
        if (cap_[e] > kEps && level_[to_[e]] < 0) {
          level_[to_[e]] = level_[u] + 1;
          q.push(to_[e]);
        }
      }
    }
    return level_[t] >= 0;
  }

  double Dfs(int u, int t, double pushed) {
    if (u == t) return pushed;
    for (int& e = it_[u]; e >= 0; e = next_[e]) {
      const int v = to_[e];
      if (cap_[e] <= kEps || level_[v] != level_[u] + 1) continue;
      const double f = Dfs(v, t, std::min(pushed, cap_[e]));
      if (f > kEps) {
        cap_[e] -= f;
        cap_[e ^ 1] += f;
        return f;
      }
    }
    return 0.0;
  }

  std::vector<int> head_, level_, it_;
  std::vector<int> to_, next_;
  std::vector<double> cap_;
};

}  // namespace

int SparsifiedSupport::find(int paper, int reviewer) const {
  const auto begin = pairs.begin() + paper_start[paper];
  const auto end = pairs.begin() + paper_start[paper + 1];
  const auto it = std::lower_bound(begin, end, PairKey{paper, reviewer});
  if (it == end || it->reviewer != reviewer) return -1;
  return static_cast<int>(it - pairs.begin());
}

SparsifiedSupport sparsify(const Instance& inst, int k_paper, int k_rev,
                           const ProgramScope& scope) {
  if (k_paper < 1 || k_rev < 1) {
    throw Error("sparsification caps must be positive");
  }
  const int np = inst.num_papers();
  const int nr = inst.num_reviewers();
  const auto& sim = inst.similarity;
  std::vector<char> eligible(sim.size(), 0);
  for (std::size_t k = 0; k < sim.size(); ++k) {
    eligible[k] = scope.active(sim[k].reviewer) &&
                  !inst.is_conflict(sim[k].paper, sim[k].reviewer);
  }
  std::vector<char> keep(sim.size(), 0);

  // Per paper: entries are contiguous and already ordered by reviewer.
  std::vector<std::size_t> cand;
  for (std::size_t k = 0; k < sim.size();) {
    std::size_t end = k;
    while (end < sim.size() && sim[end].paper == sim[k].paper) ++end;
    cand.clear();
    for (std::size_t i = k; i < end; ++i) {
      if (eligible[i]) cand.push_back(i);
    }
    const auto by_value = [&](std::size_t a, std::size_t b) {
      return sim[a].value != sim[b].value ? sim[a].value > sim[b].value
                                          : sim[a].reviewer < sim[b].reviewer;
    };
    const std::size_t take = std::min<std::size_t>(cand.size(), k_paper);
    std::partial_sort(cand.begin(), cand.begin() + take, cand.end(), by_value);
    for (std::size_t i = 0; i < take; ++i) keep[cand[i]] = 1;
    k = end;
  }

  // Per reviewer: bucket entry indices by reviewer, in paper order.
  std::vector<int> rstart(nr + 1, 0);
  for (std::size_t k = 0; k < sim.size(); ++k) {
    if (eligible[k]) ++rstart[sim[k].reviewer + 1];
  }
  for (int r = 0; r < nr; ++r) rstart[r + 1] += rstart[r];
  std::vector<std::size_t> by_rev(rstart[nr]);
  {
    std::vector<int> fill(rstart.begin(), rstart.end() - 1);
    for (std::size_t k = 0; k < sim.size(); ++k) {
      if (eligible[k]) by_rev[fill[sim[k].reviewer]++] = k;
    }
  }
  for (int r = 0; r < nr; ++r) {
    const auto b = by_rev.begin() + rstart[r];
    const auto e = by_rev.begin() + rstart[r + 1];
    const std::size_t take =
        std::min<std::size_t>(static_cast<std::size_t>(e - b), k_rev);
    std::partial_sort(b, b + take, e, [&](std::size_t x, std::size_t y) {
      return sim[x].value != sim[y].value ? sim[x].value > sim[y].value
                                          : sim[x].paper < sim[y].paper;
    });
    for (std::size_t i = 0; i < take; ++i) keep[b[i]] = 1;
  }

  SparsifiedSupport s;
  s.paper_start.assign(np + 1, 0);
  s.per_reviewer.assign(nr, 0);
  for (std::size_t k = 0; k < sim.size(); ++k) {
    if (!keep[k]) continue;
    s.pairs.push_back({sim[k].paper, sim[k].reviewer});
    s.similarity.push_back(sim[k].value);
    ++s.paper_start[sim[k].paper + 1];
    ++s.per_reviewer[sim[k].reviewer];
  }
  for (int p = 0; p < np; ++p) s.paper_start[p + 1] += s.paper_start[p];
  for (int p = 0; p < np; ++p) {
    const int need = scope.demand_of(inst, p);
    if (s.per_paper(p) < need) {
      throw InfeasibleError("paper " + inst.papers[p].id + " retains " +
                                std::to_string(s.per_paper(p)) +
                                " candidate reviewers but needs " +
                                std::to_string(need),
                            DemandRow(p));
    }
  }
  return s;
}

std::vector<TwoCycle> enumerate_two_cycles(const Instance& inst,
                                           const SparsifiedSupport* support) {
  const int nr = inst.num_reviewers();
  std::vector<std::vector<int>> authored(nr);
  for (int p = 0; p < inst.num_papers(); ++p) {
    if (!inst.papers[p].authors) continue;
    for (int a : *inst.papers[p].authors) authored[a].push_back(p);
  }
  std::vector<TwoCycle> out;
  for (const BidEntry& bid : inst.bids) {
    if (!is_positive_bid(bid.level)) continue;
    const int r1 = bid.reviewer;
    const int p2 = bid.paper;
    const Paper& paper2 = inst.papers[p2];
    if (!paper2.authors || authored[r1].empty()) continue;
    for (int r2 : *paper2.authors) {
      if (r2 == r1) continue;
      for (int p1 : authored[r1]) {
        if (p1 == p2 || !is_positive_bid(inst.bid_of(p1, r2))) continue;
        TwoCycle c = r1 < r2 ? TwoCycle{r1, r2, p1, p2}
                             : TwoCycle{r2, r1, p2, p1};
        if (support != nullptr && (support->find(c.p2, c.r1) < 0 ||
                                   support->find(c.p1, c.r2) < 0)) {
          continue;
        }
        out.push_back(c);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

AssignmentProgram build_base_program(const Instance& inst,
                                     const Hyperparameters& hp,
                                     SparsifiedSupport support,
                                     const ProgramScope& scope) {
  AssignmentProgram prog;
  prog.support = std::move(support);
  prog.scope = scope;
  const SparsifiedSupport& s = prog.support;
  LinearProgram& lp = prog.lp;
  const int n = static_cast<int>(s.size());
  lp.reserve(n, inst.num_papers() + inst.num_reviewers(), 2LL * n);

  const bool linear_f = hp.f.is_linear();
  for (int k = 0; k < n; ++k) {
    const double sim = s.similarity[k];
    const int j = lp.add_variable({VarKind::kX, s.pairs[k].paper,
                                   s.pairs[k].reviewer},
                                  0.0, hp.q, linear_f ? sim * hp.f.a : 0.0);
    if (!linear_f && sim > 0.0) {
      lp.add_concave({j, sim * hp.f.a, sim * hp.f.b});
    }
  }

  std::vector<int> cols;
  std::vector<double> ones;
  for (int p = 0; p < inst.num_papers(); ++p) {
    const int need = scope.demand_of(inst, p);
    if (s.per_paper(p) == 0 && need == 0) continue;
    cols.clear();
    for (int k = s.paper_start[p]; k < s.paper_start[p + 1]; ++k) {
      cols.push_back(k);
    }
    ones.assign(cols.size(), 1.0);
    lp.add_row({RowKind::kDemand, p, 0}, cols, ones, Relation::kEq, need);
  }

  const FixedMass fixed(scope.fixed);
  const std::vector<double> fixed_load =
      fixed.reviewer_loads(inst.num_reviewers());
  std::vector<std::vector<int>> by_rev(inst.num_reviewers());
  for (int k = 0; k < n; ++k) by_rev[s.pairs[k].reviewer].push_back(k);
  for (int r = 0; r < inst.num_reviewers(); ++r) {
    if (by_rev[r].empty()) continue;
    ones.assign(by_rev[r].size(), 1.0);
    lp.add_row({RowKind::kCapacity, r, 0}, by_rev[r], ones, Relation::kLe,
               inst.reviewers[r].capacity - fixed_load[r]);
  }
  return prog;
}

void add_diversity_component(AssignmentProgram& prog, const Instance& inst,
                             double lambda_div) {
  const SparsifiedSupport& s = prog.support;
  LinearProgram& lp = prog.lp;
  const FixedMass fixed(prog.scope.fixed);
  std::map<int, std::vector<int>> groups;
  std::vector<int> cols;
  std::vector<double> vals;
  for (int p = 0; p < inst.num_papers(); ++p) {
    groups.clear();
    for (int k = s.paper_start[p]; k < s.paper_start[p + 1]; ++k) {
      groups[inst.reviewers[s.pairs[k].reviewer].region].push_back(k);
    }
    std::map<int, double> fixed_by_region;
    const auto [fb, fe] = fixed.paper(p);
    for (auto it = fb; it != fe; ++it) {
      fixed_by_region[inst.reviewers[it->reviewer].region] += it->x;
    }
    for (const auto& [g, members] : groups) {
      const int sv = lp.add_variable({VarKind::kSDiv, p, g}, 0.0, 1.0,
                                     lambda_div);
      cols.assign(1, sv);
      vals.assign(1, 1.0);
      for (int k : members) {
        cols.push_back(k);
        vals.push_back(-1.0);
      }
      const auto f = fixed_by_region.find(g);
      lp.add_row({RowKind::kDiv, p, g}, cols, vals, Relation::kLe,
                 f == fixed_by_region.end() ? 0.0 : f->second);
    }
  }
}

void add_coauthor_component(AssignmentProgram& prog, const Instance& inst,
                            double lambda_co, bool bid_filter) {
  const SparsifiedSupport& s = prog.support;
  LinearProgram& lp = prog.lp;
  const FixedMass fixed(prog.scope.fixed);
  std::vector<int> cols, nb;
  std::vector<double> vals;
  for (int k = 0; k < static_cast<int>(s.size()); ++k) {
    const int p = s.pairs[k].paper;
    const int r = s.pairs[k].reviewer;
    if (bid_filter && !is_positive_bid(inst.bid_of(p, r))) continue;
    const int sv = lp.add_variable({VarKind::kSCo, p, r}, 1.0, kInf, -lambda_co);
    cols.assign(1, sv);
    vals.assign(1, 1.0);
    double rhs = 0.0;
    // Closed neighborhood: r itself plus its coauthors.
    nb.assign(inst.reviewers[r].coauthors.begin(),
              inst.reviewers[r].coauthors.end());
    const auto at = std::lower_bound(nb.begin(), nb.end(), r);
    if (at == nb.end() || *at != r) nb.insert(at, r);
    for (int other : nb) {
      const int idx = s.find(p, other);
      if (idx >= 0) {
        cols.push_back(idx);
        vals.push_back(-1.0);
      }
      if (!fixed.empty()) rhs += fixed.at(p, other);
    }
    lp.add_row({RowKind::kCo, p, r}, cols, vals, Relation::kGe, rhs);
  }
}

void add_two_cycle_component(AssignmentProgram& prog,
                             const std::vector<TwoCycle>& cycles,
                             double lambda_cyc, double q) {
  const SparsifiedSupport& s = prog.support;
  LinearProgram& lp = prog.lp;
  for (const TwoCycle& c : cycles) {
    const int a = s.find(c.p2, c.r1);
    const int b = s.find(c.p1, c.r2);
    if (a < 0 || b < 0) continue;
    const int m = static_cast<int>(prog.cycles.size());
    const int y = lp.add_variable({VarKind::kY, m, 0}, 0.0, 2.0 * q);
    const int cols[3] = {y, a, b};
    const double vals[3] = {1.0, -1.0, -1.0};
    lp.add_row({RowKind::kCyc, m, 0}, cols, vals, Relation::kEq, 0.0);
    lp.add_concave({y, 0.0, lambda_cyc});
    prog.cycles.push_back(c);
  }
}

void add_seniority_component(AssignmentProgram& prog, const Instance& inst,
                             double lambda_sen) {
  const SparsifiedSupport& s = prog.support;
  LinearProgram& lp = prog.lp;
  const FixedMass fixed(prog.scope.fixed);
  std::vector<int> cols;
  std::vector<double> vals;
  for (int p = 0; p < inst.num_papers(); ++p) {
    cols.clear();
    vals.clear();
    for (int k = s.paper_start[p]; k < s.paper_start[p + 1]; ++k) {
      if (inst.reviewers[s.pairs[k].reviewer].senior) {
        cols.push_back(k);
        vals.push_back(-1.0);
      }
    }
    if (cols.empty()) continue;
    double rhs = 0.0;
    const auto [fb, fe] = fixed.paper(p);
    for (auto it = fb; it != fe; ++it) {
      if (inst.reviewers[it->reviewer].senior) rhs += it->x;
    }
    const int sv = lp.add_variable({VarKind::kSSen, p, 0}, 0.0, 1.0, lambda_sen);
    cols.insert(cols.begin(), sv);
    vals.insert(vals.begin(), 1.0);
    lp.add_row({RowKind::kSen, p, 0}, cols, vals, Relation::kLe, rhs);
  }
}

LinearProgram piecewise_linearize(const LinearProgram& lp, double delta) {
  LinearProgram out = lp;
  out.clear_concave();
  std::vector<ConcaveTerm> terms = lp.concave();
  std::stable_sort(terms.begin(), terms.end(),
                   [](const ConcaveTerm& a, const ConcaveTerm& b) {
                     return a.var < b.var;
                   });
  std::vector<ConcaveTerm> merged;
  for (const ConcaveTerm& t : terms) {
    if (!merged.empty() && merged.back().var == t.var) {
      merged.back().lin += t.lin;
      merged.back().quad += t.quad;
    } else {
      merged.push_back(t);
    }
  }
  int n_t = 0;
  for (const ConcaveTerm& t : merged) {
    if (t.quad < 0.0) throw Error("concave term with negative curvature");
    if (t.quad == 0.0) {
      out.add_objective(t.var, t.lin);
      continue;
    }
    const double lo = lp.lower(t.var);
    const double hi = lp.upper(t.var);
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
      throw Error("concave term on an unbounded variable");
    }
    const PiecewiseLinear g = interpolate(t, lo, hi, delta);
    const int tv = out.add_variable({VarKind::kT, n_t, 0}, -kInf, kInf, 1.0);
    for (std::size_t j = 0; j < g.num_segments(); ++j) {
      const Chord ch = g.chord(j);
      const int cols[2] = {tv, t.var};
      const double vals[2] = {1.0, ch.slope == 0.0 ? 0.0 : -ch.slope};
      out.add_row({RowKind::kPwl, n_t, static_cast<int>(j)}, cols, vals,
                  Relation::kLe, ch.intercept);
    }
    ++n_t;
  }
  return out;
}

void precheck_feasibility(const Instance& inst, const SparsifiedSupport& support,
                          double q, const ProgramScope& scope) {
  const int np = inst.num_papers();
  const int nr = inst.num_reviewers();
  const FixedMass fixed(scope.fixed);
  const std::vector<double> fixed_load = fixed.reviewer_loads(nr);
  // Nodes: 0 source, 1..np papers, np+1..np+nr reviewers, np+nr+1 sink.
  const int src = 0;
  const int sink = np + nr + 1;
  MaxFlow flow(np + nr + 2);
  std::vector<int> source_edge(np);
  double demand = 0.0;
  for (int p = 0; p < np; ++p) {
    const int need = scope.demand_of(inst, p);
    demand += need;
    flow.AddEdge(src, 1 + p, need);
    source_edge[p] = flow.LastEdge();
  }
  for (std::size_t k = 0; k < support.size(); ++k) {
    flow.AddEdge(1 + support.pairs[k].paper, 1 + np + support.pairs[k].reviewer,
                 q);
  }
  for (int r = 0; r < nr; ++r) {
    const double cap =
        scope.active(r) ? inst.reviewers[r].capacity - fixed_load[r] : 0.0;
    flow.AddEdge(1 + np + r, sink, std::max(cap, 0.0));
  }
  const double routed = flow.Run(src, sink);
  if (routed >= demand - 1e-7) return;

  // Prefer a paper that cannot be covered even on its own.
  for (int p = 0; p < np; ++p) {
    double reach = 0.0;
    for (int k = support.paper_start[p]; k < support.paper_start[p + 1]; ++k) {
      const int r = support.pairs[k].reviewer;
      reach += std::min(q, std::max(0.0, inst.reviewers[r].capacity -
                                             fixed_load[r]));
    }
    if (reach < scope.demand_of(inst, p) - 1e-9) {
      throw InfeasibleError("paper " + inst.papers[p].id +
                                " cannot be covered: demand " +
                                std::to_string(scope.demand_of(inst, p)) +
                                " exceeds reachable capacity",
                            DemandRow(p));
    }
  }
  for (int p = 0; p < np; ++p) {
    if (flow.Residual(source_edge[p]) > 1e-7) {
      throw InfeasibleError("demand of paper " + inst.papers[p].id +
                                " cannot be met together with the other "
                                "papers (total demand " +
                                format_double(demand) + ", routable " +
                                format_double(routed) + ")",
                            DemandRow(p));
    }
  }
  throw InfeasibleError("total demand exceeds routable capacity", "");
}

AssignmentProgram build_program(const Instance& inst,
                                const Hyperparameters& hp,
                                const BuildOptions& options) {
  validate_hyperparameters(hp);
  SparsifiedSupport support =
      sparsify(inst, hp.k_paper, hp.k_rev, options.scope);
  precheck_feasibility(inst, support, hp.q, options.scope);
  AssignmentProgram prog =
      build_base_program(inst, hp, std::move(support), options.scope);
  if (hp.lambda_div > 0.0) add_diversity_component(prog, inst, hp.lambda_div);
  if (hp.lambda_co > 0.0) {
    add_coauthor_component(prog, inst, hp.lambda_co, hp.coauthor_bid_filter);
  }
  if (hp.lambda_cyc > 0.0) {
    add_two_cycle_component(prog, enumerate_two_cycles(inst, &prog.support),
                            hp.lambda_cyc, hp.q);
  }
  if (hp.seniority == SeniorityMode::kSoft && hp.lambda_sen > 0.0) {
    add_seniority_component(prog, inst, hp.lambda_sen);
  }
  if (options.linearize) prog.lp = piecewise_linearize(prog.lp, hp.delta);
  return prog;
}

}  // namespace rampmatch
