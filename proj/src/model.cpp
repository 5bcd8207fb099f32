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

#include "rampmatch/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rampmatch {
namespace {

template <typename T>
bool KeyLess(const T& a, const T& b) {
  return a.paper != b.paper ? a.paper < b.paper : a.reviewer < b.reviewer;
}

template <typename T>
const T* FindPair(const std::vector<T>& v, int paper, int reviewer) {
  const auto it = std::lower_bound(
      v.begin(), v.end(), std::pair<int, int>(paper, reviewer),
      [](const T& e, const std::pair<int, int>& key) {
        return e.paper != key.first ? e.paper < key.first
                                    : e.reviewer < key.second;
      });
  if (it == v.end() || it->paper != paper || it->reviewer != reviewer) {
    return nullptr;
  }
  return &*it;
}

std::string PairText(const Instance& inst, int p, int r) {
  return "(" + inst.papers[p].id + ", " + inst.reviewers[r].id + ")";
}

void CheckIndex(int value, int size, const char* what) {
  if (value < 0 || value >= size) {
    throw Error(std::string(what) + " index " + std::to_string(value) +
                " out of range");
  }
}

}  // namespace

std::string_view bid_level_name(BidLevel level) {
  switch (level) {
    case BidLevel::kNotWilling:
      return "not_willing";
    case BidLevel::kNotEntered:
      return "not_entered";
    case BidLevel::kInAPinch:
      return "in_a_pinch";
    case BidLevel::kWilling:
      return "willing";
    case BidLevel::kEager:
      return "eager";
  }
  return "not_entered";
}

BidLevel parse_bid_level(std::string_view text) {
  if (text == "not_willing") return BidLevel::kNotWilling;
  if (text == "not_entered") return BidLevel::kNotEntered;
  if (text == "in_a_pinch") return BidLevel::kInAPinch;
  if (text == "willing") return BidLevel::kWilling;
  if (text == "eager") return BidLevel::kEager;
  throw Error("unknown bid level \"" + std::string(text) + "\"");
}

std::optional<double> Instance::similarity_of(int paper, int reviewer) const {
  const SimilarityEntry* e = FindPair(similarity, paper, reviewer);
  if (e == nullptr) return std::nullopt;
  return e->value;
}

BidLevel Instance::bid_of(int paper, int reviewer) const {
  const BidEntry* e = FindPair(bids, paper, reviewer);
  return e == nullptr ? BidLevel::kNotEntered : e->level;
}

bool Instance::is_conflict(int paper, int reviewer) const {
  return std::binary_search(conflicts.begin(), conflicts.end(),
                            PairKey{paper, reviewer});
}

bool Instance::is_coauthor(int reviewer, int other) const {
  const auto& n = reviewers[reviewer].coauthors;
  return std::binary_search(n.begin(), n.end(), other);
}

long long Instance::total_demand() const {
  long long total = 0;
  for (const Paper& p : papers) total += p.demand;
  return total;
}

long long Instance::total_capacity() const {
  long long total = 0;
  for (const Reviewer& r : reviewers) total += r.capacity;
  return total;
}

bool operator==(const Paper& a, const Paper& b) {
  return a.id == b.id && a.demand == b.demand && a.authors == b.authors;
}

bool operator==(const Reviewer& a, const Reviewer& b) {
  return a.id == b.id && a.capacity == b.capacity && a.region == b.region &&
         a.senior == b.senior && a.coauthors == b.coauthors;
}

bool operator==(const SimilarityEntry& a, const SimilarityEntry& b) {
  return a.paper == b.paper && a.reviewer == b.reviewer && a.value == b.value;
}

bool operator==(const BidEntry& a, const BidEntry& b) {
  return a.paper == b.paper && a.reviewer == b.reviewer && a.level == b.level;
}

bool operator==(const Instance& a, const Instance& b) {
  return a.papers == b.papers && a.reviewers == b.reviewers &&
         a.regions == b.regions && a.similarity == b.similarity &&
         a.bids == b.bids && a.conflicts == b.conflicts;
}

CoiSplit apply_coi_convention(const std::vector<SimilarityEntry>& raw) {
  CoiSplit out;
  for (const SimilarityEntry& e : raw) {
    if (e.value < 0.0) {
      out.conflicts.push_back({e.paper, e.reviewer});
    } else {
      out.similarity.push_back(e);
    }
  }
  std::stable_sort(out.similarity.begin(), out.similarity.end(),
                   KeyLess<SimilarityEntry>);
  std::sort(out.conflicts.begin(), out.conflicts.end());
  out.conflicts.erase(std::unique(out.conflicts.begin(), out.conflicts.end()),
                      out.conflicts.end());
  return out;
}

Instance make_instance(std::vector<Paper> papers,
                       std::vector<Reviewer> reviewers,
                       std::vector<std::string> regions,
                       std::vector<SimilarityEntry> raw_similarity,
                       std::vector<BidEntry> bids,
                       std::vector<PairKey> conflicts) {
  Instance inst;
  inst.papers = std::move(papers);
  inst.reviewers = std::move(reviewers);
  inst.regions = std::move(regions);
  const int np = inst.num_papers();
  const int nr = inst.num_reviewers();
  const int ng = static_cast<int>(inst.regions.size());

  for (Paper& p : inst.papers) {
    if (p.authors) {
      for (int a : *p.authors) CheckIndex(a, nr, "author");
      std::sort(p.authors->begin(), p.authors->end());
      p.authors->erase(std::unique(p.authors->begin(), p.authors->end()),
                       p.authors->end());
    }
  }
  // Region labels are renumbered by first use so that the table is a
  // function of the reviewer list alone.
  std::vector<int> remap(ng, -1);
  std::vector<std::string> used;
  for (Reviewer& r : inst.reviewers) {
    CheckIndex(r.region, ng, "region");
    if (remap[r.region] < 0) {
      remap[r.region] = static_cast<int>(used.size());
      used.push_back(inst.regions[r.region]);
    }
    r.region = remap[r.region];
    for (int c : r.coauthors) CheckIndex(c, nr, "coauthor");
  }
  inst.regions = std::move(used);
  // Coauthorship is mutual and every neighborhood contains its reviewer.
  for (int r = 0; r < nr; ++r) {
    inst.reviewers[r].coauthors.push_back(r);
    for (int c : inst.reviewers[r].coauthors) {
      if (c != r) inst.reviewers[c].coauthors.push_back(r);
    }
  }
  for (Reviewer& r : inst.reviewers) {
    std::sort(r.coauthors.begin(), r.coauthors.end());
    r.coauthors.erase(std::unique(r.coauthors.begin(), r.coauthors.end()),
                      r.coauthors.end());
  }

  for (const SimilarityEntry& e : raw_similarity) {
    CheckIndex(e.paper, np, "paper");
    CheckIndex(e.reviewer, nr, "reviewer");
    if (!std::isfinite(e.value)) throw Error("non-finite similarity value");
  }
  CoiSplit split = apply_coi_convention(raw_similarity);
  for (std::size_t i = 1; i < split.similarity.size(); ++i) {
    const auto& a = split.similarity[i - 1];
    const auto& b = split.similarity[i];
    if (a.paper == b.paper && a.reviewer == b.reviewer) {
      throw Error("duplicate similarity entry for pair (" +
                  std::to_string(a.paper) + ", " + std::to_string(a.reviewer) +
                  ")");
    }
  }

  for (const PairKey& c : conflicts) {
    CheckIndex(c.paper, np, "paper");
    CheckIndex(c.reviewer, nr, "reviewer");
  }
  conflicts.insert(conflicts.end(), split.conflicts.begin(),
                   split.conflicts.end());
  std::sort(conflicts.begin(), conflicts.end());
  conflicts.erase(std::unique(conflicts.begin(), conflicts.end()),
                  conflicts.end());
  inst.conflicts = std::move(conflicts);

  inst.similarity.reserve(split.similarity.size());
  for (const SimilarityEntry& e : split.similarity) {
    if (!inst.is_conflict(e.paper, e.reviewer)) inst.similarity.push_back(e);
  }

  for (const BidEntry& b : bids) {
    CheckIndex(b.paper, np, "paper");
    CheckIndex(b.reviewer, nr, "reviewer");
  }
  std::stable_sort(bids.begin(), bids.end(), KeyLess<BidEntry>);
  for (std::size_t i = 1; i < bids.size(); ++i) {
    if (bids[i - 1].paper == bids[i].paper &&
        bids[i - 1].reviewer == bids[i].reviewer) {
      throw Error("duplicate bid for pair (" + std::to_string(bids[i].paper) +
                  ", " + std::to_string(bids[i].reviewer) + ")");
    }
  }
  inst.bids = std::move(bids);
  return inst;
}

ValidationReport validate_instance(const Instance& inst) {
  ValidationReport report;
  auto& v = report.violations;
  for (const Paper& p : inst.papers) {
    if (p.demand < 1) {
      v.push_back("paper " + p.id + " has demand " + std::to_string(p.demand) +
                  " < 1");
    }
  }
  for (int r = 0; r < inst.num_reviewers(); ++r) {
    const Reviewer& rev = inst.reviewers[r];
    if (rev.capacity < 0) {
      v.push_back("reviewer " + rev.id + " has negative capacity");
    }
    if (!std::binary_search(rev.coauthors.begin(), rev.coauthors.end(), r)) {
      v.push_back("reviewer " + rev.id + ": neighborhood not closed");
    }
  }
  const long long demand = inst.total_demand();
  const long long capacity = inst.total_capacity();
  if (demand > capacity) {
    v.push_back("total demand " + std::to_string(demand) +
                " > total capacity " + std::to_string(capacity));
  }
  for (const SimilarityEntry& e : inst.similarity) {
    if (e.value < 0.0 && !inst.is_conflict(e.paper, e.reviewer)) {
      v.push_back("negative similarity on " +
                  PairText(inst, e.paper, e.reviewer) + " not in conflicts");
    }
    if (e.value > 0.0 && inst.is_conflict(e.paper, e.reviewer)) {
      v.push_back("conflict " + PairText(inst, e.paper, e.reviewer) +
                  " carries positive similarity");
    }
  }
  return report;
}

std::string_view mode_name(Mode mode) {
  switch (mode) {
    case Mode::kDefault:
      return "default";
    case Mode::kPlra:
      return "plra";
    case Mode::kPm:
      return "pm";
    case Mode::kRamp:
      return "ramp";
  }
  return "default";
}

Mode parse_mode(std::string_view text) {
  if (text == "default") return Mode::kDefault;
  if (text == "plra") return Mode::kPlra;
  if (text == "pm") return Mode::kPm;
  if (text == "ramp") return Mode::kRamp;
  throw Error("unknown mode \"" + std::string(text) + "\"");
}

std::string_view seniority_mode_name(SeniorityMode mode) {
  switch (mode) {
    case SeniorityMode::kOff:
      return "off";
    case SeniorityMode::kSoft:
      return "soft";
    case SeniorityMode::kTwoStage:
      return "two-stage";
  }
  return "off";
}

SeniorityMode parse_seniority_mode(std::string_view text) {
  if (text == "off") return SeniorityMode::kOff;
  if (text == "soft") return SeniorityMode::kSoft;
  if (text == "two-stage") return SeniorityMode::kTwoStage;
  throw Error("unknown seniority mode \"" + std::string(text) + "\"");
}

std::string_view sample_mode_name(SampleMode mode) {
  return mode == SampleMode::kVanilla ? "vanilla" : "attribute";
}

SampleMode parse_sample_mode(std::string_view text) {
  if (text == "vanilla") return SampleMode::kVanilla;
  if (text == "attribute") return SampleMode::kAttribute;
  throw Error("unknown sample mode \"" + std::string(text) + "\"");
}

Hyperparameters preset(Mode mode) {
  Hyperparameters hp;
  hp.mode = mode;
  switch (mode) {
    case Mode::kDefault:
      break;
    case Mode::kPlra:
      hp.q = 0.9;
      break;
    case Mode::kPm:
      hp.q = 0.9;
      hp.f = {1.0, 0.1};
      break;
    case Mode::kRamp:
      hp.q = 0.9;
      hp.f = {1.0, 0.1};
      hp.lambda_div = 0.15;
      hp.lambda_co = 0.15;
      hp.lambda_cyc = 0.2;
      hp.coauthor_bid_filter = true;
      break;
  }
  return hp;
}

void validate_hyperparameters(const Hyperparameters& hp) {
  if (!(hp.q > 0.0 && hp.q <= 1.0)) throw Error("Q must lie in (0, 1]");
  if (!(hp.delta > 0.0)) throw Error("PWL step must be positive");
  if (hp.delta > hp.q) throw Error("PWL step must not exceed Q");
  if (hp.lambda_div < 0.0 || hp.lambda_co < 0.0 || hp.lambda_cyc < 0.0 ||
      hp.lambda_sen < 0.0) {
    throw Error("penalty weights must be nonnegative");
  }
  if (hp.k_paper < 1 || hp.k_rev < 1) {
    throw Error("sparsification caps must be positive");
  }
  if (hp.f.b < 0.0 || hp.f.a < 2.0 * hp.f.b * hp.q) {
    throw Error("perturbation must be concave and nondecreasing on [0, Q]");
  }
  const bool any_lambda =
      hp.lambda_div != 0.0 || hp.lambda_co != 0.0 || hp.lambda_cyc != 0.0;
  const std::string name(mode_name(hp.mode));
  switch (hp.mode) {
    case Mode::kDefault:
      if (hp.q != 1.0) throw Error("mode default pins Q = 1");
      if (!hp.f.is_linear()) throw Error("mode default pins f to identity");
      if (any_lambda) throw Error("mode default pins all penalty weights to 0");
      break;
    case Mode::kPlra:
      if (!(hp.q < 1.0)) throw Error("mode plra requires Q < 1");
      if (!hp.f.is_linear()) throw Error("mode plra pins f to identity");
      if (any_lambda) throw Error("mode plra pins all penalty weights to 0");
      break;
    case Mode::kPm:
      if (!(hp.q < 1.0)) throw Error("mode pm requires Q < 1");
      if (hp.f.is_linear()) throw Error("mode pm requires a concave f");
      if (any_lambda) throw Error("mode pm pins all penalty weights to 0");
      break;
    case Mode::kRamp:
      break;
  }
}

std::vector<std::string> check_fractional(const Instance& inst,
                                          const FractionalAssignment& frac,
                                          double q, double tol) {
  std::vector<std::string> out;
  std::vector<double> row(inst.papers.size(), 0.0);
  std::vector<double> col(inst.reviewers.size(), 0.0);
  for (const FractionalEntry& e : frac.entries) {
    if (e.paper < 0 || e.paper >= inst.num_papers() || e.reviewer < 0 ||
        e.reviewer >= inst.num_reviewers()) {
      out.push_back("entry index out of range");
      continue;
    }
    if (e.x < -tol || e.x > q + tol) {
      out.push_back("value " + std::to_string(e.x) + " on " +
                    PairText(inst, e.paper, e.reviewer) + " outside [0, Q]");
    }
    if (e.x > tol && inst.is_conflict(e.paper, e.reviewer)) {
      out.push_back("conflict " + PairText(inst, e.paper, e.reviewer) +
                    " has positive mass");
    }
    row[e.paper] += e.x;
    col[e.reviewer] += e.x;
  }
  for (int p = 0; p < inst.num_papers(); ++p) {
    if (std::fabs(row[p] - inst.papers[p].demand) > tol) {
      out.push_back("paper " + inst.papers[p].id + " row sum " +
                    std::to_string(row[p]) + " != demand " +
                    std::to_string(inst.papers[p].demand));
    }
  }
  for (int r = 0; r < inst.num_reviewers(); ++r) {
    if (col[r] > inst.reviewers[r].capacity + tol) {
      out.push_back("reviewer " + inst.reviewers[r].id + " load " +
                    std::to_string(col[r]) + " exceeds capacity " +
                    std::to_string(inst.reviewers[r].capacity));
    }
  }
  return out;
}

std::vector<std::string> check_integral(const Instance& inst,
                                        const FractionalAssignment& frac,
                                        const IntegralAssignment& assignment) {
  std::vector<std::string> out;
  std::vector<int> row(inst.papers.size(), 0);
  std::vector<int> col(inst.reviewers.size(), 0);
  for (std::size_t i = 0; i < assignment.pairs.size(); ++i) {
    const PairKey& k = assignment.pairs[i];
    if (k.paper < 0 || k.paper >= inst.num_papers() || k.reviewer < 0 ||
        k.reviewer >= inst.num_reviewers()) {
      out.push_back("assigned pair index out of range");
      continue;
    }
    if (i > 0 && assignment.pairs[i - 1] == k) {
      out.push_back("duplicate pair " + PairText(inst, k.paper, k.reviewer));
    }
    if (inst.is_conflict(k.paper, k.reviewer)) {
      out.push_back("conflict " + PairText(inst, k.paper, k.reviewer) +
                    " assigned");
    }
    const FractionalEntry* e = FindPair(frac.entries, k.paper, k.reviewer);
    if (e == nullptr || !(e->x > 0.0)) {
      out.push_back("pair " + PairText(inst, k.paper, k.reviewer) +
                    " has no fractional mass");
    }
    ++row[k.paper];
    ++col[k.reviewer];
  }
  for (int p = 0; p < inst.num_papers(); ++p) {
    if (row[p] != inst.papers[p].demand) {
      out.push_back("paper " + inst.papers[p].id + " got " +
                    std::to_string(row[p]) + " reviewers, demand " +
                    std::to_string(inst.papers[p].demand));
    }
  }
  for (int r = 0; r < inst.num_reviewers(); ++r) {
    if (col[r] > inst.reviewers[r].capacity) {
      out.push_back("reviewer " + inst.reviewers[r].id + " load " +
                    std::to_string(col[r]) + " exceeds capacity " +
                    std::to_string(inst.reviewers[r].capacity));
    }
  }
  return out;
}

}  // namespace rampmatch
