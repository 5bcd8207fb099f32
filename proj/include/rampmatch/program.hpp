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

#ifndef RAMPMATCH_PROGRAM_HPP_
#define RAMPMATCH_PROGRAM_HPP_

// Assembly of the assignment program: sparsified candidate pairs, the
// demand/capacity core, the soft components (region diversity, coauthor
// overlap, bid two-cycles, seniority) and piecewise linearization of the
// concave terms.

#include <vector>

#include "rampmatch/linear_program.hpp"
#include "rampmatch/model.hpp"

namespace rampmatch {

struct SparsifiedSupport {
  std::vector<PairKey> pairs;      // sorted by (paper, reviewer)
  std::vector<double> similarity;  // parallel to pairs
  std::vector<int> paper_start;    // pairs of paper p: [start[p], start[p+1])
  std::vector<int> per_reviewer;   // retained pair count per reviewer

  std::size_t size() const { return pairs.size(); }
  int per_paper(int p) const { return paper_start[p + 1] - paper_start[p]; }
  // Index into pairs, or -1.
  int find(int paper, int reviewer) const;
};

// Restricts a solve to part of the instance. Used by the two-stage
// seniority procedure; the default scope is the whole instance.
struct ProgramScope {
  std::vector<int> demand;             // per paper; empty = instance demand
  std::vector<char> reviewer_active;   // empty = all reviewers
  std::vector<FractionalEntry> fixed;  // marginals decided by an earlier stage

  int demand_of(const Instance& inst, int p) const {
    return demand.empty() ? inst.papers[p].demand : demand[p];
  }
  bool active(int r) const {
    return reviewer_active.empty() || reviewer_active[r] != 0;
  }
};

// Union of each paper's top-K_paper and each reviewer's top-K_rev pairs by
// similarity, ties broken by ascending index. Conflicts never appear.
// Throws InfeasibleError if a paper keeps fewer candidates than its demand.
SparsifiedSupport sparsify(const Instance& inst, int k_paper, int k_rev,
                           const ProgramScope& scope = {});

struct TwoCycle {
  int r1, r2, p1, p2;  // r1 < r2; r1 authors p1, r2 authors p2
  friend bool operator==(const TwoCycle&, const TwoCycle&) = default;
  friend auto operator<=>(const TwoCycle&, const TwoCycle&) = default;
};

// All cycles with positive bids r1 -> p2 and r2 -> p1, r1 != r2, p1 != p2.
// With a support, cycles whose two pairs are not both retained are dropped.
std::vector<TwoCycle> enumerate_two_cycles(
    const Instance& inst, const SparsifiedSupport* support = nullptr);

struct AssignmentProgram {
  LinearProgram lp;
  SparsifiedSupport support;
  std::vector<TwoCycle> cycles;  // those carried by the program
  ProgramScope scope;
  // Variable j < support.size() is x for support pair j.
};

AssignmentProgram build_base_program(const Instance& inst,
                                     const Hyperparameters& hp,
                                     SparsifiedSupport support,
                                     const ProgramScope& scope = {});
void add_diversity_component(AssignmentProgram& prog, const Instance& inst,
                             double lambda_div);
void add_coauthor_component(AssignmentProgram& prog, const Instance& inst,
                            double lambda_co, bool bid_filter);
void add_two_cycle_component(AssignmentProgram& prog,
                             const std::vector<TwoCycle>& cycles,
                             double lambda_cyc, double q);
void add_seniority_component(AssignmentProgram& prog, const Instance& inst,
                             double lambda_sen);

// Replaces every concave term by an epigraph variable t bounded by the
// chords of its interpolant on uniform breakpoints. Terms on the same
// variable are summed first; purely linear terms go to the objective.
// Throws Error if delta <= 0 or delta exceeds a term's domain.
LinearProgram piecewise_linearize(const LinearProgram& lp, double delta);

struct BuildOptions {
  bool linearize = true;  // false keeps concave terms for a native solve
  ProgramScope scope;
};

// sparsify + base + components enabled by the weights + linearize.
AssignmentProgram build_program(const Instance& inst,
                                const Hyperparameters& hp,
                                const BuildOptions& options = {});

// Max-flow check that the support admits a fractional assignment. Throws
// InfeasibleError naming an uncoverable paper when it does not.
void precheck_feasibility(const Instance& inst, const SparsifiedSupport& support,
                          double q, const ProgramScope& scope = {});

}  // namespace rampmatch

#endif  // RAMPMATCH_PROGRAM_HPP_
