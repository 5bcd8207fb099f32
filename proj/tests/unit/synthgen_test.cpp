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
#include <numeric>

#include "doctest.h"
#include "rampmatch/instance_io.hpp"
#include "rampmatch/synthgen.hpp"

namespace rampmatch {
namespace {

TEST_CASE("bid exponents") {
  CHECK(bid_exponent(BidLevel::kNotWilling) == 20.0);
  CHECK(bid_exponent(BidLevel::kNotEntered) == 1.0);
  CHECK(bid_exponent(BidLevel::kInAPinch) == 0.67);
  CHECK(bid_exponent(BidLevel::kWilling) == 0.4);
  CHECK(bid_exponent(BidLevel::kEager) == 0.25);
  CHECK(aggregate_score(0.5, BidLevel::kEager) ==
        doctest::Approx(0.840896).epsilon(1e-6));
  CHECK(aggregate_score(0.5, BidLevel::kNotWilling) ==
        doctest::Approx(9.5367e-7).epsilon(1e-4));
}

TEST_CASE("aggregate score increases with the bid level") {
  for (double base = 0.01; base < 1.0; base += 0.01) {
    double prev = -1.0;
    for (int l = 0; l < 5; ++l) {
      const double v = aggregate_score(base, static_cast<BidLevel>(l));
      CHECK(v > prev);
      prev = v;
    }
  }
}

TEST_CASE("same config gives the same serialized instance") {
  GenConfig cfg;
  cfg.n_papers = 120;
  cfg.n_reviewers = 130;
  cfg.seed = 42;
  const std::string a = serialize_instance(generate(cfg));
  const std::string b = serialize_instance(generate(cfg));
  CHECK(a == b);
  cfg.seed = 43;
  CHECK(serialize_instance(generate(cfg)) != a);
}

TEST_CASE("generated instances are valid and feasible") {
  GenConfig cfg;
  cfg.seed = 5;
  const Instance inst = generate(cfg);
  CHECK(validate_instance(inst).ok());
  CHECK(inst.num_papers() == 200);
  CHECK(inst.num_reviewers() == 220);
  CHECK(inst.regions.size() == 4);
  CHECK(inst.total_capacity() >= inst.total_demand());
  for (const Reviewer& r : inst.reviewers) CHECK(r.capacity >= 2);
  int seniors = 0;
  for (const Reviewer& r : inst.reviewers) seniors += r.senior;
  CHECK(seniors > 0);
  CHECK(seniors < inst.num_reviewers());
  bool any_authors = false;
  for (const Paper& p : inst.papers) {
    CHECK(p.demand == 4);
    any_authors = any_authors || (p.authors && !p.authors->empty());
  }
  CHECK(any_authors);
  CHECK_FALSE(inst.bids.empty());
  for (const BidEntry& b : inst.bids) CHECK(b.level != BidLevel::kNotEntered);
}

TEST_CASE("affinity means before and after truncation") {
  double lo = 1.0, hi = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    GenStats stats;
    generate(cfg, &stats);
    lo = std::min(lo, stats.pre_truncation_mean);
    hi = std::max(hi, stats.pre_truncation_mean);
    CHECK(stats.post_truncation_mean > stats.pre_truncation_mean);
  }
  CHECK(lo >= 0.55);
  CHECK(hi <= 0.65);
}

TEST_CASE("paper areas follow the configured skew") {
  GenConfig cfg;
  cfg.n_papers = 10000;
  cfg.n_reviewers = 300;
  cfg.k_paper = 50;
  cfg.k_rev = 50;
  cfg.seed = 8;
  GenStats stats;
  generate(cfg, &stats);
  REQUIRE(stats.paper_area_counts.size() == cfg.area_skew.size());
  for (std::size_t a = 0; a < cfg.area_skew.size(); ++a) {
    const double freq = static_cast<double>(stats.paper_area_counts[a]) / 10000;
    CHECK(std::fabs(freq - cfg.area_skew[a]) <= 0.02);
  }
}

TEST_CASE("presets and validation") {
  CHECK(gen_preset("s2orc-scale").n_papers == 2446);
  CHECK(gen_preset("s2orc-scale").n_reviewers == 2483);
  CHECK(gen_preset("large").n_papers == 20000);
  CHECK(gen_preset("aamas-scale").demand == 3);
  CHECK_THROWS_AS(gen_preset("huge"), Error);
  GenConfig bad;
  bad.n_papers = 0;
  CHECK_THROWS_AS(validate_gen_config(bad), Error);
  bad = GenConfig{};
  bad.area_skew = {0.5, 0.6};
  CHECK_THROWS_AS(validate_gen_config(bad), Error);
}

}  // namespace
}  // namespace rampmatch
