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

#ifndef RAMPMATCH_SAMPLER_HPP_
#define RAMPMATCH_SAMPLER_HPP_

// Marginal-preserving dependent rounding of a fractional assignment.
//
// Marginals are held in 40-bit fixed point so that paper sums stay exact
// integers across rotations. Each rotation shifts mass around an alternating
// cycle, or along a path between two reviewers with fractional load, by
// +alpha with probability beta / (alpha + beta) and by -beta otherwise.
// Every pair therefore keeps its expected value, and the chain search only
// changes the joint distribution.
//
// In attribute-aware mode the search, when leaving a paper reached from
// reviewer r, tries coauthors of r first, then reviewers sharing r's region,
// then everyone else (ascending index within a tier). Reviewers coupled in
// the same rotation move in opposite directions on that paper, so at most
// one of them keeps it.
//
// RNG: std::mt19937_64 seeded with splitmix64(seed). Monte Carlo runs derive
// one seed per sample with stream_seed(seed, i).

#include <cstdint>
#include <random>
#include <vector>

#include "rampmatch/model.hpp"

namespace rampmatch {

using Fixed = std::int64_t;
inline constexpr Fixed kFixedOne = Fixed{1} << 40;

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream);

// Uniform integer in [0, n) by rejection; identical on every platform.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);

struct Chain {
  enum class Kind { kCycle, kPath } kind = Kind::kCycle;
  // Edge indices into RoundingState; edge i and i+1 share a node. Even
  // positions move with +alpha in the increase branch.
  std::vector<int> edges;
  // For paths: the reviewers at either end (first touches edges.front()).
  int start_reviewer = -1;
  int end_reviewer = -1;
};

struct Rotation {
  Fixed alpha = 0;  // increase step
  Fixed beta = 0;   // decrease step
};

class RoundingState {
 public:
  // Throws Error if a paper sum, capacity or bound is off by more than tol,
  // or if a conflicting pair carries mass.
  RoundingState(const Instance& inst, const FractionalAssignment& frac,
                double tol = kFeasTol);

  bool done() const { return fractional_edges_ == 0; }
  int fractional_edges() const { return fractional_edges_; }

  Chain find_chain(SampleMode mode) const;
  Rotation rotation(const Chain& chain) const;
  void apply(const Chain& chain, const Rotation& rot, bool increase);
  // Draws the branch with probability beta / (alpha + beta) for increase.
  void rotate(const Chain& chain, std::mt19937_64& rng);

  int num_edges() const { return static_cast<int>(paper_.size()); }
  int edge_paper(int e) const { return paper_[e]; }
  int edge_reviewer(int e) const { return reviewer_[e]; }
  Fixed value(int e) const { return value_[e]; }
  double value_double(int e) const;
  // Sum over every edge of the reviewer, in fixed point.
  Fixed load(int r) const { return load_[r]; }

  std::vector<PairKey> assigned() const;

 private:
  int row_node(int row) const { return row; }
  int reviewer_node(int r) const { return num_rows_ + r; }
  bool is_row(int node) const { return node < num_rows_; }
  int other_end(int e, int node) const;
  void drop_edge(int e);
  int pick_start() const;

  const Instance* inst_;
  int num_rows_ = 0;
  std::vector<int> row_paper_;  // row -> paper
  std::vector<int> paper_;
  std::vector<int> reviewer_;
  std::vector<int> row_;
  std::vector<Fixed> value_;
  std::vector<Fixed> load_;
  // Fractional edges per node, sorted by the index of the far endpoint.
  std::vector<std::vector<int>> adj_;
  int fractional_edges_ = 0;
};

struct SampleStats {
  int rotations = 0;
  int cycles = 0;
  int paths = 0;
};

IntegralAssignment sample(const Instance& inst,
                          const FractionalAssignment& frac, SampleMode mode,
                          std::uint64_t seed, SampleStats* stats = nullptr);

}  // namespace rampmatch

#endif  // RAMPMATCH_SAMPLER_HPP_
