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

#ifndef RAMPMATCH_TESTS_ORACLES_HPP_
#define RAMPMATCH_TESTS_ORACLES_HPP_

// Test-side reference computations. Nothing here calls into the solver or
// the sampler.

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "rampmatch/model.hpp"

namespace rampmatch::testing {

// Exact best value of sum S over integral assignments meeting every demand
// exactly, every capacity and no conflict. Dynamic program over papers with
// the remaining capacity vector as state; every reviewer subset of each paper
// is enumerated. Returns -1 if no assignment exists.
double best_matching_value(const Instance& inst);

// True when some integral assignment meets every demand and capacity.
bool has_feasible_assignment(const Instance& inst);

struct SmallInstanceSpec {
  int papers = 6;
  int reviewers = 7;
  int max_demand = 2;
  int max_capacity = 3;
  double conflict_rate = 0.1;
  double missing_rate = 0.2;  // pairs without a similarity entry
  int regions = 3;
};

// Random instance that is always feasible for a complete bipartite support
// (checked with best_matching_value; resampled otherwise).
Instance random_small_instance(std::uint64_t seed, const SmallInstanceSpec& spec);

// Dense fractional solution with the given row sums built as an average of
// random integral assignments, so it is feasible by construction.
FractionalAssignment random_fractional(const Instance& inst, std::uint64_t seed,
                                       int num_mix);

// Per-edge inclusion counts of sampled assignments keyed by (paper, reviewer).
std::map<std::pair<int, int>, int> inclusion_counts(
    const std::vector<IntegralAssignment>& samples);

// Plain -sum x ln x over positive entries.
double entropy_reference(const std::vector<double>& xs);

}  // namespace rampmatch::testing

#endif  // RAMPMATCH_TESTS_ORACLES_HPP_
