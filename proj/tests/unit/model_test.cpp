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

#include <string>

#include "doctest.h"
#include "rampmatch/instance_io.hpp"
#include "rampmatch/model.hpp"
#include "rampmatch/synthgen.hpp"

namespace rampmatch {
namespace {

const char* kTiny = R"({
  "papers": [{"id": "a", "demand": 2, "authors": ["x"]},
             {"id": "b", "demand": 1}],
  "reviewers": [
    {"id": "x", "capacity": 2, "region": "eu", "senior": true,
     "coauthors": ["y"]},
    {"id": "y", "capacity": 1, "region": "us", "senior": false,
     "coauthors": []},
    {"id": "z", "capacity": 2, "region": "eu", "senior": false}],
  "similarity": [["a", "y", 0.5], ["a", "z", 0.25], ["b", "x", -1],
                 ["b", "y", 0.75], ["b", "z", 0.1], ["a", "x", 0.9]],
  "bids": [["a", "y", "eager"], ["b", "z", "not_willing"]],
  "conflicts": [["a", "x"]]
})";

TEST_CASE("parse_instance reads the document format") {
  const Instance inst = parse_instance(kTiny);
  REQUIRE(inst.num_papers() == 2);
  REQUIRE(inst.num_reviewers() == 3);
  CHECK(inst.papers[0].demand == 2);
  REQUIRE(inst.papers[0].authors.has_value());
  CHECK(*inst.papers[0].authors == std::vector<int>{0});
  CHECK_FALSE(inst.papers[1].authors.has_value());
  CHECK(inst.regions.size() == 2);
  CHECK(inst.reviewers[0].region == inst.reviewers[2].region);
  CHECK(inst.reviewers[0].region != inst.reviewers[1].region);
  CHECK(inst.is_coauthor(0, 1));
  CHECK(inst.is_coauthor(1, 0));
  // Negative similarity is a conflict and explicit conflicts drop the entry.
  CHECK(inst.is_conflict(1, 0));
  CHECK(inst.is_conflict(0, 0));
  CHECK_FALSE(inst.similarity_of(0, 0).has_value());
  CHECK_FALSE(inst.similarity_of(1, 0).has_value());
  CHECK(*inst.similarity_of(1, 1) == 0.75);
  CHECK(inst.bid_of(0, 1) == BidLevel::kEager);
  CHECK(inst.bid_of(1, 2) == BidLevel::kNotWilling);
  CHECK(inst.bid_of(1, 1) == BidLevel::kNotEntered);
  CHECK(inst.total_demand() == 3);
  CHECK(inst.total_capacity() == 5);
  CHECK(validate_instance(inst).ok());
}

TEST_CASE("serialize then parse gives an equal instance") {
  const Instance inst = parse_instance(kTiny);
  CHECK(parse_instance(serialize_instance(inst)) == inst);
  GenConfig cfg;
  cfg.n_papers = 60;
  cfg.n_reviewers = 70;
  cfg.seed = 11;
  const Instance gen = generate(cfg);
  const Instance back = parse_instance(serialize_instance(gen));
  CHECK(back == gen);
  CHECK(serialize_instance(back) == serialize_instance(gen));
}

TEST_CASE("apply_coi_convention is idempotent") {
  const std::vector<SimilarityEntry> raw{
      {1, 0, 0.5}, {0, 1, -0.2}, {0, 0, 0.0}, {2, 3, -1.0}, {1, 1, 0.3}};
  const CoiSplit once = apply_coi_convention(raw);
  CHECK(once.conflicts.size() == 2);
  CHECK(once.similarity.size() == 3);
  const CoiSplit twice = apply_coi_convention(once.similarity);
  CHECK(twice.similarity == once.similarity);
  CHECK(twice.conflicts.empty());
}

TEST_CASE("malformed documents are rejected") {
  CHECK_THROWS_AS(parse_instance("{"), Error);
  CHECK_THROWS_AS(parse_instance(R"({"papers": [{"id": "a", "demand": 1}],
      "reviewers": [], "similarity": [["a", "nobody", 0.5]]})"),
                  Error);
  CHECK_THROWS_AS(parse_instance(R"({"papers": [{"id": "a", "demand": 1}],
      "reviewers": [{"id": "x", "capacity": 1, "region": "r"}],
      "bids": [["a", "x", "keen"]]})"),
                  Error);
  CHECK_THROWS_AS(parse_bid_level("maybe"), Error);
}

TEST_CASE("mode names round trip") {
  for (Mode m : {Mode::kDefault, Mode::kPlra, Mode::kPm, Mode::kRamp}) {
    CHECK(parse_mode(mode_name(m)) == m);
    CHECK_NOTHROW(validate_hyperparameters(preset(m)));
  }
  for (SeniorityMode m :
       {SeniorityMode::kOff, SeniorityMode::kSoft, SeniorityMode::kTwoStage}) {
    CHECK(parse_seniority_mode(seniority_mode_name(m)) == m);
  }
  CHECK_THROWS_AS(parse_mode("fancy"), Error);
}

TEST_CASE("hyperparameter validation") {
  Hyperparameters hp = preset(Mode::kRamp);
  hp.q = 0.0;
  CHECK_THROWS_AS(validate_hyperparameters(hp), Error);
  hp = preset(Mode::kRamp);
  hp.delta = 0.0;
  CHECK_THROWS_AS(validate_hyperparameters(hp), Error);
  hp = preset(Mode::kRamp);
  hp.lambda_div = -1.0;
  CHECK_THROWS_AS(validate_hyperparameters(hp), Error);
}

TEST_CASE("check_fractional and check_integral report violations") {
  const Instance inst = parse_instance(kTiny);
  FractionalAssignment frac;
  frac.entries = {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}};
  CHECK(check_fractional(inst, frac).empty());
  frac.entries[2].x = 0.4;
  CHECK_FALSE(check_fractional(inst, frac).empty());
  frac.entries[2].x = 0.5;
  CHECK_FALSE(check_fractional(inst, frac, 0.9).empty());

  IntegralAssignment a;
  a.pairs = {{0, 1}, {0, 2}, {1, 2}};
  CHECK(check_integral(inst, frac, a).empty());
  a.pairs = {{0, 1}, {0, 2}, {1, 1}};
  CHECK_FALSE(check_integral(inst, frac, a).empty());  // y over capacity
  a.pairs = {{0, 1}, {1, 2}};
  CHECK_FALSE(check_integral(inst, frac, a).empty());  // demand short
}

}  // namespace
}  // namespace rampmatch
