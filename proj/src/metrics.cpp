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

#include "rampmatch/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "rampmatch/lp_format.hpp"

namespace rampmatch {
namespace {

// Assigned reviewers per paper, in ascending order.
std::vector<std::vector<int>> ByPaper(const Instance& inst,
                                      const IntegralAssignment& assignment) {
  std::vector<std::vector<int>> out(inst.papers.size());
  for (const PairKey& k : assignment.pairs) out[k.paper].push_back(k.reviewer);
  return out;
}

}  // namespace

double raw_similarity(const Instance& inst, const FractionalAssignment& frac) {
  double total = 0.0;
  for (const FractionalEntry& e : frac.entries) {
    if (e.x <= kSupportThreshold) continue;
    total += inst.similarity_of(e.paper, e.reviewer).value_or(0.0) * e.x;
  }
  return total;
}

double raw_similarity(const Instance& inst,
                      const IntegralAssignment& assignment) {
  double total = 0.0;
  for (const PairKey& k : assignment.pairs) {
    total += inst.similarity_of(k.paper, k.reviewer).value_or(0.0);
  }
  return total;
}

double quality(double value, double reference) {
  if (!(reference > 0.0)) {
    throw Error("quality needs a positive reference optimum");
  }
  return value / reference;
}

std::int64_t support_size(const FractionalAssignment& frac) {
  return std::count_if(frac.entries.begin(), frac.entries.end(),
                       [](const FractionalEntry& e) {
                         return e.x > kSupportThreshold;
                       });
}

double entropy(const FractionalAssignment& frac) {
  double h = 0.0;
  for (const FractionalEntry& e : frac.entries) {
    if (e.x > 0.0) h -= e.x * std::log(e.x);
  }
  return h;
}

double diversity(const Instance& inst, const IntegralAssignment& assignment,
                 bool raw) {
  const auto by_paper = ByPaper(inst, assignment);
  double total = 0.0;
  int counted = 0;
  std::vector<int> regions;
  for (int p = 0; p < inst.num_papers(); ++p) {
    const int demand = inst.papers[p].demand;
    if (demand <= 0) continue;
    regions.clear();
    for (int r : by_paper[p]) regions.push_back(inst.reviewers[r].region);
    std::sort(regions.begin(), regions.end());
    const auto distinct = std::unique(regions.begin(), regions.end()) -
                          regions.begin();
    total += raw ? static_cast<double>(distinct)
                 : static_cast<double>(distinct) / demand;
    ++counted;
  }
  return counted == 0 ? 0.0 : total / counted;
}

std::int64_t coauthor_pairs(const Instance& inst,
                            const IntegralAssignment& assignment) {
  std::int64_t count = 0;
  for (const auto& reviewers : ByPaper(inst, assignment)) {
    for (std::size_t i = 0; i < reviewers.size(); ++i) {
      for (std::size_t j = i + 1; j < reviewers.size(); ++j) {
        const int a = reviewers[i], b = reviewers[j];
        if (a != b && (inst.is_coauthor(a, b) || inst.is_coauthor(b, a))) {
          ++count;
        }
      }
    }
  }
  return count;
}

std::int64_t two_cycle_violations(const std::vector<TwoCycle>& cycles,
                                  const IntegralAssignment& assignment) {
  const auto& pairs = assignment.pairs;
  auto has = [&](int p, int r) {
    return std::binary_search(pairs.begin(), pairs.end(), PairKey{p, r});
  };
  std::int64_t count = 0;
  for (const TwoCycle& c : cycles) {
    if (has(c.p2, c.r1) && has(c.p1, c.r2)) ++count;
  }
  return count;
}

std::int64_t two_cycle_violations(const Instance& inst,
                                  const IntegralAssignment& assignment) {
  return two_cycle_violations(enumerate_two_cycles(inst), assignment);
}

double seniority_coverage(const Instance& inst,
                          const IntegralAssignment& assignment) {
  if (inst.papers.empty()) return 0.0;
  std::vector<char> covered(inst.papers.size(), 0);
  for (const PairKey& k : assignment.pairs) {
    if (inst.reviewers[k.reviewer].senior) covered[k.paper] = 1;
  }
  const auto n = std::count(covered.begin(), covered.end(), 1);
  return static_cast<double>(n) / static_cast<double>(inst.papers.size());
}

EvaluationContext make_evaluation_context(const Instance& inst,
                                          double reference,
                                          bool diversity_raw) {
  EvaluationContext ctx;
  ctx.inst = &inst;
  ctx.reference = reference;
  ctx.cycles = enumerate_two_cycles(inst);
  ctx.diversity_raw = diversity_raw;
  return ctx;
}

MetricsReport evaluate(const EvaluationContext& ctx,
                       const FractionalAssignment& frac,
                       const std::vector<IntegralAssignment>& samples) {
  const Instance& inst = *ctx.inst;
  MetricsReport report;
  report.quality_frac = quality(raw_similarity(inst, frac), ctx.reference);
  report.support = support_size(frac);
  report.entropy = entropy(frac);
  if (samples.empty()) return report;
  report.seed = samples.front().seed;
  for (const IntegralAssignment& s : samples) {
    report.quality_int += quality(raw_similarity(inst, s), ctx.reference);
    report.diversity += diversity(inst, s, ctx.diversity_raw);
    report.coauthors += static_cast<double>(coauthor_pairs(inst, s));
    report.two_cycles +=
        static_cast<double>(two_cycle_violations(ctx.cycles, s));
    report.seniority += seniority_coverage(inst, s);
  }
  const double n = static_cast<double>(samples.size());
  report.quality_int /= n;
  report.diversity /= n;
  report.coauthors /= n;
  report.two_cycles /= n;
  report.seniority /= n;
  return report;
}

std::string metrics_csv_header() {
  return "run_id,mode,seed,quality_frac,quality_int,support,entropy,"
         "diversity,coauthors,two_cycles,seniority,runtime_s";
}

std::string metrics_csv_row(const MetricsReport& r) {
  std::string out = r.run_id;
  out += ',' + r.mode;
  out += ',' + std::to_string(r.seed);
  out += ',' + format_double(r.quality_frac);
  out += ',' + format_double(r.quality_int);
  out += ',' + std::to_string(r.support);
  out += ',' + format_double(r.entropy);
  out += ',' + format_double(r.diversity);
  out += ',' + format_double(r.coauthors);
  out += ',' + format_double(r.two_cycles);
  out += ',' + format_double(r.seniority);
  out += ',' + format_double(r.runtime_s);
  return out;
}

std::string metrics_table(const std::vector<MetricsReport>& reports) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line,
                "%-10s %8s %8s %9s %11s %7s %9s %8s %7s %9s\n", "mode",
                "Q(frac)", "Q(int)", "support", "entropy", "div", "coauth",
                "2cyc", "senior", "time(s)");
  out += line;
  for (const MetricsReport& r : reports) {
    std::snprintf(line, sizeof line,
                  "%-10s %8.4f %8.4f %9lld %11.2f %7.3f %9.2f %8.2f %7.3f "
                  "%9.2f\n",
                  r.mode.c_str(), r.quality_frac, r.quality_int,
                  static_cast<long long>(r.support), r.entropy, r.diversity,
                  r.coauthors, r.two_cycles, r.seniority, r.runtime_s);
    out += line;
  }
  return out;
}

}  // namespace rampmatch
