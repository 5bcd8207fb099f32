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

#ifndef RAMPMATCH_MODEL_HPP_
#define RAMPMATCH_MODEL_HPP_

// Conference instances, hyperparameters and assignments.
//
// Papers and reviewers are addressed by their position in the instance
// (0-based). String identifiers are kept only for I/O.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rampmatch {

// Absolute tolerance for every feasibility check on fractional solutions.
inline constexpr double kFeasTol = 1e-6;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when no assignment can satisfy demands and capacities. `hint`
// names the paper (or row) that could not be covered when known.
class InfeasibleError : public Error {
 public:
  InfeasibleError(const std::string& what, std::string hint)
      : Error(what), hint_(std::move(hint)) {}
  const std::string& hint() const { return hint_; }

 private:
  std::string hint_;
};

enum class BidLevel : std::uint8_t {
  kNotWilling = 0,
  kNotEntered = 1,
  kInAPinch = 2,
  kWilling = 3,
  kEager = 4,
};

std::string_view bid_level_name(BidLevel level);
// Throws Error on anything outside the five known strings.
BidLevel parse_bid_level(std::string_view text);
inline bool is_positive_bid(BidLevel level) {
  return level >= BidLevel::kInAPinch;
}

struct Paper {
  std::string id;
  int demand = 1;
  // Reviewer indices. Absent means authorship is unknown.
  std::optional<std::vector<int>> authors;
};

struct Reviewer {
  std::string id;
  int capacity = 0;
  int region = 0;  // index into Instance::regions
  bool senior = false;
  // Sorted reviewer indices, normally including the reviewer itself.
  std::vector<int> coauthors;
};

struct SimilarityEntry {
  int paper;
  int reviewer;
  double value;
};

struct BidEntry {
  int paper;
  int reviewer;
  BidLevel level;
};

struct PairKey {
  int paper;
  int reviewer;
  friend bool operator==(const PairKey&, const PairKey&) = default;
  friend auto operator<=>(const PairKey&, const PairKey&) = default;
};

struct Instance {
  std::vector<Paper> papers;
  std::vector<Reviewer> reviewers;
  std::vector<std::string> regions;
  // Sorted by (paper, reviewer), no duplicates, no negative values.
  std::vector<SimilarityEntry> similarity;
  // Sorted by (paper, reviewer), no duplicates.
  std::vector<BidEntry> bids;
  // Sorted, unique.
  std::vector<PairKey> conflicts;

  int num_papers() const { return static_cast<int>(papers.size()); }
  int num_reviewers() const { return static_cast<int>(reviewers.size()); }

  std::optional<double> similarity_of(int paper, int reviewer) const;
  BidLevel bid_of(int paper, int reviewer) const;  // kNotEntered if absent
  bool is_conflict(int paper, int reviewer) const;
  bool is_coauthor(int reviewer, int other) const;

  long long total_demand() const;
  long long total_capacity() const;

  friend bool operator==(const Instance&, const Instance&);
};

bool operator==(const Paper&, const Paper&);
bool operator==(const Reviewer&, const Reviewer&);
bool operator==(const SimilarityEntry&, const SimilarityEntry&);
bool operator==(const BidEntry&, const BidEntry&);

struct CoiSplit {
  std::vector<SimilarityEntry> similarity;  // sorted, nonnegative
  std::vector<PairKey> conflicts;           // sorted, unique
};

// Negative entries become conflicts; everything else passes through.
CoiSplit apply_coi_convention(const std::vector<SimilarityEntry>& raw);

// Sorts and deduplicates the sparse tables, applies the COI convention,
// merges explicit conflicts, drops similarity on conflicting pairs and closes
// coauthor neighborhoods (self included, relation made mutual).
// Throws Error on out-of-range indices or duplicate keys.
Instance make_instance(std::vector<Paper> papers,
                       std::vector<Reviewer> reviewers,
                       std::vector<std::string> regions,
                       std::vector<SimilarityEntry> raw_similarity,
                       std::vector<BidEntry> bids,
                       std::vector<PairKey> conflicts);

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate_instance(const Instance& inst);

enum class Mode { kDefault, kPlra, kPm, kRamp };
enum class SeniorityMode { kOff, kSoft, kTwoStage };
enum class SampleMode { kVanilla, kAttribute };

std::string_view mode_name(Mode mode);
Mode parse_mode(std::string_view text);
std::string_view seniority_mode_name(SeniorityMode mode);
SeniorityMode parse_seniority_mode(std::string_view text);
std::string_view sample_mode_name(SampleMode mode);
SampleMode parse_sample_mode(std::string_view text);

// f(x) = a x - b x^2
struct Perturbation {
  double a = 1.0;
  double b = 0.0;
  double operator()(double x) const { return a * x - b * x * x; }
  bool is_linear() const { return b == 0.0; }
  friend bool operator==(const Perturbation&, const Perturbation&) = default;
};

struct Hyperparameters {
  Mode mode = Mode::kDefault;
  double q = 1.0;
  Perturbation f{};
  double lambda_div = 0.0;
  double lambda_co = 0.0;
  double lambda_cyc = 0.0;
  double lambda_sen = 0.2;  // used only with SeniorityMode::kSoft
  double delta = 0.1;
  int k_paper = 1000;
  int k_rev = 1000;
  SeniorityMode seniority = SeniorityMode::kOff;
  bool coauthor_bid_filter = false;

  friend bool operator==(const Hyperparameters&,
                         const Hyperparameters&) = default;
};

// The values each mode pins. ramp uses the weights of the per-component
// comparison (div 0.15, co 0.15, cyc 0.2).
Hyperparameters preset(Mode mode);

// Throws Error when a field is out of range or contradicts the mode.
void validate_hyperparameters(const Hyperparameters& hp);

struct FractionalEntry {
  int paper;
  int reviewer;
  double x;
};

struct FractionalAssignment {
  // Sorted by (paper, reviewer); only stored pairs may be positive.
  std::vector<FractionalEntry> entries;
  double objective = 0.0;
  // Set by the two-stage seniority procedure: the sampler then keeps one
  // senior review per paper.
  bool seniority_split = false;
};

// Lists demand, capacity, bound and conflict violations beyond `tol`.
std::vector<std::string> check_fractional(const Instance& inst,
                                          const FractionalAssignment& frac,
                                          double q = 1.0,
                                          double tol = kFeasTol);

struct IntegralAssignment {
  std::vector<PairKey> pairs;  // sorted
  std::uint64_t seed = 0;
  SampleMode mode = SampleMode::kVanilla;
};

// Lists demand, capacity, conflict and support violations (exact).
std::vector<std::string> check_integral(const Instance& inst,
                                        const FractionalAssignment& frac,
                                        const IntegralAssignment& assignment);

}  // namespace rampmatch

#endif  // RAMPMATCH_MODEL_HPP_
