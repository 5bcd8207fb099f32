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

#include <cmath>

#include "doctest.h"
#include "rampmatch/metrics.hpp"
#include "support/oracles.hpp"

namespace rampmatch {
namespace {

Instance Regions(std::vector<int> region, std::vector<std::vector<int>> co,
                 int demand) {
  std::vector<Reviewer> revs;
  for (std::size_t r = 0; r < region.size(); ++r) {
    std::vector<int> c = co.empty() ? std::vector<int>{} : co[r];
    c.push_back(static_cast<int>(r));
    std::sort(c.begin(), c.end());
    revs.push_back({"r" + std::to_string(r), 2, region[r], r % 2 == 0, c});
  }
  std::vector<SimilarityEntry> sim;
  for (std::size_t r = 0; r < region.size(); ++r) {
    sim.push_back({0, static_cast<int>(r), 0.1 * (r + 1)});
  }
  return make_instance({{"p0", demand, std::nullopt}}, revs,
                       {"A", "B", "C", "D"}, sim, {}, {});
}

TEST_CASE("entropy") {
  FractionalAssignment f;
  f.entries = {{0, 0, 0.5}, {0, 1, 0.5}};
  CHECK(entropy(f) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  f.entries = {{0, 0, 1.0}};
  CHECK(entropy(f) == 0.0);
  f.entries = {{0, 0, 1.0}, {1, 1, 1.0}, {2, 0, 0.0}};
  CHECK(entropy(f) == 0.0);
  f.entries = {{0, 0, 0.2}, {0, 1, 0.3}, {0, 2, 0.5}};
  CHECK(entropy(f) == doctest::Approx(testing::entropy_reference({0.2, 0.3, 0.5})));
}

TEST_CASE("support counts entries above the threshold") {
  FractionalAssignment f;
  f.entries = {{0, 0, 0.5}, {0, 1, 1e-9}, {0, 2, 2e-9}, {0, 3, 0.0}};
  CHECK(support_size(f) == 2);
}

TEST_CASE("diversity") {
  const Instance inst = Regions({0, 0, 1, 1}, {}, 4);
  IntegralAssignment a;
  a.pairs = {{0, 0}, {0, 1}, {0, 2}, {0, 3}};
  CHECK(diversity(inst, a) == 0.5);
  CHECK(diversity(inst, a, true) == 2.0);
  const Instance spread = Regions({0, 1, 2, 3}, {}, 4);
  CHECK(diversity(spread, a) == 1.0);
}

TEST_CASE("coauthor pairs") {
  const Instance none = Regions({0, 1, 2}, {}, 3);
  IntegralAssignment a;
  a.pairs = {{0, 0}, {0, 1}, {0, 2}};
  CHECK(coauthor_pairs(none, a) == 0);
  const Instance clique = Regions({0, 1, 2}, {{1, 2}, {0, 2}, {0, 1}}, 3);
  CHECK(coauthor_pairs(clique, a) == 3);
  const Instance chain = Regions({0, 1, 2}, {{1}, {0, 2}, {1}}, 3);
  CHECK(coauthor_pairs(chain, a) == 2);
}

TEST_CASE("two-cycle violations and seniority coverage") {
  std::vector<Paper> papers{{"p0", 1, std::vector<int>{0}},
                            {"p1", 1, std::vector<int>{1}}};
  std::vector<Reviewer> revs{{"r0", 1, 0, true, {0}},
                             {"r1", 1, 0, false, {1}},
                             {"r2", 2, 0, false, {2}}};
  std::vector<SimilarityEntry> sim{{0, 1, 0.5}, {0, 2, 0.5}, {1, 0, 0.5},
                                   {1, 2, 0.5}};
  std::vector<BidEntry> bids{{1, 0, BidLevel::kWilling}, {0, 1, BidLevel::kEager}};
  const Instance inst = make_instance(papers, revs, {"g"}, sim, bids, {});
  IntegralAssignment hit;
  hit.pairs = {{0, 1}, {1, 0}};
  CHECK(two_cycle_violations(inst, hit) == 1);
  CHECK(seniority_coverage(inst, hit) == 0.5);
  IntegralAssignment miss;
  miss.pairs = {{0, 1}, {1, 2}};
  CHECK(two_cycle_violations(inst, miss) == 0);
  CHECK(seniority_coverage(inst, miss) == 0.0);
}

TEST_CASE("quality needs a positive reference") {
  CHECK(quality(0.5, 2.0) == 0.25);
  CHECK_THROWS_AS(quality(1.0, 0.0), Error);
}

TEST_CASE("evaluate averages integral columns over samples") {
  const Instance inst = Regions({0, 0, 1, 1}, {{1}, {0}, {}, {}}, 2);
  FractionalAssignment frac;
  frac.entries = {{0, 0, 0.5}, {0, 1, 0.5}, {0, 2, 0.5}, {0, 3, 0.5}};
  IntegralAssignment a, b;
  a.pairs = {{0, 0}, {0, 1}};  // coauthors, one region
  b.pairs = {{0, 2}, {0, 3}};
  const EvaluationContext ctx = make_evaluation_context(inst, 1.0);
  const MetricsReport m = evaluate(ctx, frac, {a, b});
  CHECK(m.support == 4);
  CHECK(m.entropy == doctest::Approx(4 * 0.5 * std::log(2.0)));
  CHECK(m.coauthors == 0.5);
  CHECK(m.diversity == 0.5);
  CHECK(m.quality_frac == doctest::Approx(0.5 * (0.1 + 0.2 + 0.3 + 0.4)));
  CHECK(m.quality_int == doctest::Approx(0.5 * (0.3 + 0.7)));
  CHECK(m.seniority == 1.0);
}

TEST_CASE("metrics CSV column order is fixed") {
  CHECK(metrics_csv_header() ==
        "run_id,mode,seed,quality_frac,quality_int,support,entropy,diversity,"
        "coauthors,two_cycles,seniority,runtime_s");
  MetricsReport m;
  m.run_id = "x";
  m.mode = "ramp";
  m.seed = 3;
  m.quality_frac = 0.5;
  m.support = 7;
  const std::string row = metrics_csv_row(m);
  CHECK(row.rfind("x,ramp,3,0.5,0,7,", 0) == 0);
  CHECK(std::count(row.begin(), row.end(), ',') == 11);
}

}  // namespace
}  // namespace rampmatch
