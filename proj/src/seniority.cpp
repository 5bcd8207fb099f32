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

#include <algorithm>
#include <string>

#include "rampmatch/pipeline.hpp"
#include "solve_stage.hpp"

namespace rampmatch {

FractionalAssignment two_stage_seniority(const Instance& inst,
                                         const Hyperparameters& hp,
                                         const SolveRequest& request,
                                         SolveInfo* info) {
  SolveInfo local;
  SolveInfo& out = info != nullptr ? *info : local;
  const int np = inst.num_papers();
  const int nr = inst.num_reviewers();

  long long senior_capacity = 0;
  std::vector<char> senior(nr, 0);
  for (int r = 0; r < nr; ++r) {
    senior[r] = inst.reviewers[r].senior ? 1 : 0;
    if (senior[r]) senior_capacity += inst.reviewers[r].capacity;
  }
  for (int p = 0; p < np; ++p) {
    if (inst.papers[p].demand < 1) {
      throw Error("paper " + inst.papers[p].id +
                  ": two-stage seniority needs demand >= 1");
    }
  }
  if (senior_capacity < np) {
    throw InfeasibleError("senior capacity " + std::to_string(senior_capacity) +
                              " cannot give each of " + std::to_string(np) +
                              " papers one senior review",
                          "senior_capacity");
  }

  Hyperparameters stage_hp = hp;
  stage_hp.seniority = SeniorityMode::kOff;

  ProgramScope first;
  first.demand.assign(np, 1);
  first.reviewer_active = senior;
  FractionalAssignment seniors =
      internal::solve_stage(inst, stage_hp, first, request, out);

  FractionalAssignment merged = seniors;
  const bool any_junior_demand =
      std::any_of(inst.papers.begin(), inst.papers.end(),
                  [](const Paper& p) { return p.demand > 1; });
  if (any_junior_demand) {
    ProgramScope second;
    second.demand.resize(np);
    for (int p = 0; p < np; ++p) second.demand[p] = inst.papers[p].demand - 1;
    second.reviewer_active.resize(nr);
    for (int r = 0; r < nr; ++r) second.reviewer_active[r] = senior[r] ? 0 : 1;
    second.fixed = seniors.entries;
    FractionalAssignment juniors =
        internal::solve_stage(inst, stage_hp, second, request, out);
    merged.entries.insert(merged.entries.end(), juniors.entries.begin(),
                          juniors.entries.end());
    std::sort(merged.entries.begin(), merged.entries.end(),
              [](const FractionalEntry& a, const FractionalEntry& b) {
                return a.paper != b.paper ? a.paper < b.paper
                                          : a.reviewer < b.reviewer;
              });
    merged.objective += juniors.objective;
  }
  merged.seniority_split = true;
  return merged;
}

}  // namespace rampmatch
