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

#ifndef RAMPMATCH_METRICS_HPP_
#define RAMPMATCH_METRICS_HPP_

// Evaluation metrics for fractional and sampled assignments.

#include <cstdint>
#include <string>
#include <vector>

#include "rampmatch/model.hpp"
#include "rampmatch/program.hpp"

namespace rampmatch {

// Entries at or below this value count as zero.
inline constexpr double kSupportThreshold = 1e-9;

double raw_similarity(const Instance& inst, const FractionalAssignment& frac);
double raw_similarity(const Instance& inst, const IntegralAssignment& assignment);

// value / reference; throws Error unless reference > 0.
double quality(double value, double reference);

std::int64_t support_size(const FractionalAssignment& frac);
double entropy(const FractionalAssignment& frac);  // nats

// Mean over papers with positive demand of the number of distinct regions
// among the assigned reviewers, divided by the demand unless `raw`.
double diversity(const Instance& inst, const IntegralAssignment& assignment,
                 bool raw = false);

// Unordered pairs of distinct coauthors reviewing the same paper.
std::int64_t coauthor_pairs(const Instance& inst,
                            const IntegralAssignment& assignment);

// Cycles (r1, r2, p1, p2) with r1 on p2 and r2 on p1.
std::int64_t two_cycle_violations(const std::vector<TwoCycle>& cycles,
                                  const IntegralAssignment& assignment);
std::int64_t two_cycle_violations(const Instance& inst,
                                  const IntegralAssignment& assignment);

// Fraction of papers with at least one senior reviewer.
double seniority_coverage(const Instance& inst,
                          const IntegralAssignment& assignment);

struct MetricsReport {
  std::string run_id;
  std::string mode;
  std::uint64_t seed = 0;
  double quality_frac = 0.0;
  double quality_int = 0.0;
  std::int64_t support = 0;
  double entropy = 0.0;
  double diversity = 0.0;
  double coauthors = 0.0;  // averaged over samples, so not an integer
  double two_cycles = 0.0;
  double seniority = 0.0;
  double runtime_s = 0.0;
};

struct EvaluationContext {
  const Instance* inst = nullptr;
  double reference = 0.0;         // Default-mode optimum of sum S x
  std::vector<TwoCycle> cycles;   // all bid-induced 2-cycles of the instance
  bool diversity_raw = false;
};

EvaluationContext make_evaluation_context(const Instance& inst,
                                          double reference,
                                          bool diversity_raw = false);

// Fractional columns from `frac`; integral columns averaged over `samples`.
MetricsReport evaluate(const EvaluationContext& ctx,
                       const FractionalAssignment& frac,
                       const std::vector<IntegralAssignment>& samples);

// Column order is fixed:
// run_id,mode,seed,quality_frac,quality_int,support,entropy,diversity,
// coauthors,two_cycles,seniority,runtime_s
std::string metrics_csv_header();
std::string metrics_csv_row(const MetricsReport& report);
std::string metrics_table(const std::vector<MetricsReport>& reports);

}  // namespace rampmatch

#endif  // RAMPMATCH_METRICS_HPP_
