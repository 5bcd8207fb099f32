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

#ifndef RAMPMATCH_SYNTHGEN_HPP_
#define RAMPMATCH_SYNTHGEN_HPP_

// Synthetic conference generator.
//
// Base affinity of paper p and reviewer r:
//
//   clip(mu + paper_sd z_p + reviewer_sd z_r
//        + [same area] (area_bonus + topic_bonus k(t_p, t_g(r)))
//        + noise_sd e, 0, 1)
//
// where z, e are standard normal, t_p is a topic position on the unit
// circle, t_g(r) the position of r's research group and
// k(a, b) = max(0, 1 - dist(a, b) / topic_width). Members of a group are
// mutual coauthors, so coauthors like the same papers. Bids then raise the
// affinity to the power 20, 1, 0.67, 0.4 or 0.25 (not willing .. eager), and
// the matrix is truncated to the union of the top k_paper reviewers of each
// paper and the top k_rev papers of each reviewer.
//
// All draws use Boost.Random distributions over std::mt19937_64 streams
// derived from the seed, so a config reproduces the same instance on every
// platform. The dense matrix is never stored; rows are generated one paper
// at a time.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rampmatch/model.hpp"

namespace rampmatch {

struct GenConfig {
  int n_papers = 200;
  int n_reviewers = 220;
  int demand = 4;
  int capacity = 0;  // 0: ceil(1.5 * demand * papers / reviewers), >= 2
  int n_areas = 5;
  std::vector<double> area_skew{0.35, 0.25, 0.18, 0.12, 0.10};
  int n_regions = 4;
  double senior_fraction = 0.5;

  double mu = 0.55;
  double paper_sd = 0.05;
  double reviewer_sd = 0.05;
  double area_bonus = 0.05;
  double topic_bonus = 0.15;
  double topic_width = 0.1;
  double noise_sd = 0.07;

  double bid_mean = 30.0;
  double bid_sd = 10.0;
  double same_area_bid_share = 0.5;
  // Level weights in order not willing, not entered, in a pinch, willing,
  // eager.
  std::array<double, 5> same_area_bid_weights{0.05, 0.05, 0.2, 0.35, 0.35};
  std::array<double, 5> other_area_bid_weights{0.2, 0.2, 0.2, 0.2, 0.2};

  double coauthor_mean = 8.0;   // research group size is 1 + Poisson(mean)
  double authored_mean = 2.0;   // papers authored per reviewer
  double conflict_scale = 3.0;  // extra conflicts per reviewer ~ Exp(scale)
  // Share of reviewers who bid eager on every paper of their coauthors.
  double collusion_rate = 0.1;

  int k_paper = 0;  // 0: max(50, round(reviewers / 22))
  int k_rev = 0;    // 0: max(50, round(papers / 22))
  std::uint64_t seed = 1;
};

// Sizes of the named presets: large, s2orc-scale, aamas-scale, iclr-scale.
GenConfig gen_preset(std::string_view name);

// Throws Error on out-of-range fields.
void validate_gen_config(const GenConfig& cfg);

inline constexpr std::array<double, 5> kBidExponents{20.0, 1.0, 0.67, 0.4,
                                                     0.25};
double bid_exponent(BidLevel level);
// base^exponent(level)
double aggregate_score(double base, BidLevel level);

struct GenStats {
  double pre_truncation_mean = 0.0;
  double post_truncation_mean = 0.0;
  std::vector<std::int64_t> paper_area_counts;
};

// Throws Error if truncation leaves a paper with fewer eligible reviewers
// than its demand.
Instance generate(const GenConfig& cfg, GenStats* stats = nullptr);

}  // namespace rampmatch

#endif  // RAMPMATCH_SYNTHGEN_HPP_
