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

#include "rampmatch/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <random>
#include <set>
#include <utility>

#include <boost/random/bernoulli_distribution.hpp>
#include <boost/random/discrete_distribution.hpp>
#include <boost/random/exponential_distribution.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/poisson_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include "rampmatch/sampler.hpp"

namespace rampmatch {
namespace {

using Rng = std::mt19937_64;

enum Stream : std::uint64_t {
  kAreas = 1,
  kLatent,
  kGroups,
  kAuthors,
  kMeta,
  kBids,
  kConflicts,
  kRows = 1000,
};

Rng MakeRng(std::uint64_t seed, std::uint64_t stream) {
  return Rng(stream_seed(seed, stream));
}

double CircularDistance(double a, double b) {
  const double d = std::fabs(a - b);
  return std::min(d, 1.0 - d);
}

// Up to `count` distinct elements of `pool`, in draw order.
std::vector<int> Choose(const std::vector<int>& pool, int count, Rng& rng) {
  std::vector<int> out;
  if (pool.empty() || count <= 0) return out;
  if (count >= static_cast<int>(pool.size())) return pool;
  std::set<int> taken;
  boost::random::uniform_int_distribution<int> pick(
      0, static_cast<int>(pool.size()) - 1);
  while (static_cast<int>(out.size()) < count) {
    const int v = pool[pick(rng)];
    if (taken.insert(v).second) out.push_back(v);
  }
  return out;
}

// Fisher-Yates; std::shuffle is not specified exactly enough to be portable.
void Shuffle(std::vector<int>& v, Rng& rng) {
  for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
    boost::random::uniform_int_distribution<int> pick(0, i);
    std::swap(v[i], v[pick(rng)]);
  }
}

struct Candidate {
  double value;
  int index;
};

// Better first: higher value, then lower index.
bool Better(const Candidate& a, const Candidate& b) {
  return a.value != b.value ? a.value > b.value : a.index < b.index;
}

}  // namespace

GenConfig gen_preset(std::string_view name) {
  GenConfig cfg;
  if (name == "large") {
    cfg.n_papers = 20000;
    cfg.n_reviewers = 22000;
    cfg.k_paper = cfg.k_rev = 1000;
  } else if (name == "s2orc-scale") {
    cfg.n_papers = 2446;
    cfg.n_reviewers = 2483;
  } else if (name == "aamas-scale") {
    cfg.n_papers = 601;
    cfg.n_reviewers = 213;
    cfg.demand = 3;
  } else if (name == "iclr-scale") {
    cfg.n_papers = 911;
    cfg.n_reviewers = 2435;
  } else {
    throw Error("unknown generator preset: " + std::string(name));
  }
  return cfg;
}

void validate_gen_config(const GenConfig& cfg) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(std::string("generator config: ") + what);
  };
  require(cfg.n_papers > 0 && cfg.n_reviewers > 0, "counts must be positive");
  require(cfg.demand >= 1, "demand must be >= 1");
  require(cfg.capacity >= 0, "capacity must be >= 0");
  require(cfg.n_areas >= 1, "n_areas must be >= 1");
  require(static_cast<int>(cfg.area_skew.size()) == cfg.n_areas,
          "area_skew needs one weight per area");
  double skew_total = 0.0;
  for (double w : cfg.area_skew) {
    require(w >= 0.0, "area_skew weights must be >= 0");
    skew_total += w;
  }
  require(skew_total > 0.0, "area_skew must have positive mass");
  require(cfg.n_regions >= 1, "n_regions must be >= 1");
  require(cfg.senior_fraction >= 0.0 && cfg.senior_fraction <= 1.0,
          "senior_fraction must lie in [0, 1]");
  require(cfg.same_area_bid_share >= 0.0 && cfg.same_area_bid_share <= 1.0,
          "same_area_bid_share must lie in [0, 1]");
  require(cfg.collusion_rate >= 0.0 && cfg.collusion_rate <= 1.0,
          "collusion_rate must lie in [0, 1]");
  require(cfg.paper_sd >= 0.0 && cfg.reviewer_sd >= 0.0 && cfg.noise_sd >= 0.0,
          "standard deviations must be >= 0");
  require(cfg.topic_width > 0.0, "topic_width must be positive");
  require(cfg.bid_sd >= 0.0, "bid_sd must be >= 0");
  require(cfg.coauthor_mean >= 0.0 && cfg.authored_mean >= 0.0,
          "Poisson means must be >= 0");
  require(cfg.conflict_scale >= 0.0, "conflict_scale must be >= 0");
  require(cfg.k_paper >= 0 && cfg.k_rev >= 0, "truncation caps must be >= 0");
  for (const auto* w : {&cfg.same_area_bid_weights, &cfg.other_area_bid_weights}) {
    double total = 0.0;
    for (double v : *w) {
      require(v >= 0.0, "bid weights must be >= 0");
      total += v;
    }
    require(total > 0.0, "bid weights must have positive mass");
  }
}

double bid_exponent(BidLevel level) {
  return kBidExponents[static_cast<int>(level)];
}

double aggregate_score(double base, BidLevel level) {
  return std::pow(base, bid_exponent(level));
}

Instance generate(const GenConfig& cfg, GenStats* stats) {
  validate_gen_config(cfg);
  const int np = cfg.n_papers;
  const int nr = cfg.n_reviewers;
  const int capacity =
      cfg.capacity > 0
          ? cfg.capacity
          : std::max(2, static_cast<int>(std::ceil(
                            1.5 * cfg.demand * np / static_cast<double>(nr))));
  const int k_paper = std::min(
      nr, cfg.k_paper > 0 ? cfg.k_paper
                          : std::max(50, static_cast<int>(std::lround(nr / 22.0))));
  const int k_rev = std::min(
      np, cfg.k_rev > 0 ? cfg.k_rev
                        : std::max(50, static_cast<int>(std::lround(np / 22.0))));

  // Areas.
  std::vector<int> paper_area(np), reviewer_area(nr);
  {
    Rng rng = MakeRng(cfg.seed, kAreas);
    boost::random::discrete_distribution<int, double> area(cfg.area_skew);
    for (int& a : paper_area) a = area(rng);
    for (int& a : reviewer_area) a = area(rng);
  }
  std::vector<std::vector<int>> papers_in_area(cfg.n_areas);
  std::vector<std::vector<int>> papers_outside_area(cfg.n_areas);
  for (int p = 0; p < np; ++p) {
    for (int a = 0; a < cfg.n_areas; ++a) {
      (paper_area[p] == a ? papers_in_area : papers_outside_area)[a].push_back(p);
    }
  }

  // Latent parameters.
  std::vector<double> z_paper(np), z_reviewer(nr), topic(np);
  {
    Rng rng = MakeRng(cfg.seed, kLatent);
    boost::random::normal_distribution<double> normal;
    boost::random::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int p = 0; p < np; ++p) {
      z_paper[p] = normal(rng);
      topic[p] = unit(rng);
    }
    for (double& z : z_reviewer) z = normal(rng);
  }

  // Research groups within each area; members are mutual coauthors.
  std::vector<int> group_of(nr);
  std::vector<double> group_topic;
  std::vector<std::vector<int>> group_members;
  {
    Rng rng = MakeRng(cfg.seed, kGroups);
    boost::random::poisson_distribution<int, double> extra(
        std::max(cfg.coauthor_mean, 1e-12));
    boost::random::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int a = 0; a < cfg.n_areas; ++a) {
      std::vector<int> members;
      for (int r = 0; r < nr; ++r) {
        if (reviewer_area[r] == a) members.push_back(r);
      }
      Shuffle(members, rng);
      std::size_t at = 0;
      while (at < members.size()) {
        const int size = 1 + (cfg.coauthor_mean > 0.0 ? extra(rng) : 0);
        const std::size_t end =
            std::min(members.size(), at + static_cast<std::size_t>(size));
        const int g = static_cast<int>(group_members.size());
        group_members.emplace_back(members.begin() + at, members.begin() + end);
        std::sort(group_members.back().begin(), group_members.back().end());
        group_topic.push_back(unit(rng));
        for (std::size_t i = at; i < end; ++i) group_of[members[i]] = g;
        at = end;
      }
    }
  }

  // Authorship.
  std::vector<std::vector<int>> authors(np);
  std::vector<std::vector<int>> authored(nr);
  {
    Rng rng = MakeRng(cfg.seed, kAuthors);
    boost::random::poisson_distribution<int, double> count(
        std::max(cfg.authored_mean, 1e-12));
    std::vector<int> all(np);
    for (int p = 0; p < np; ++p) all[p] = p;
    for (int r = 0; r < nr; ++r) {
      const int k = cfg.authored_mean > 0.0 ? count(rng) : 0;
      const auto& pool = papers_in_area[reviewer_area[r]].empty()
                             ? all
                             : papers_in_area[reviewer_area[r]];
      for (int p : Choose(pool, k, rng)) {
        authored[r].push_back(p);
        authors[p].push_back(r);
      }
    }
    for (auto& a : authors) std::sort(a.begin(), a.end());
    for (auto& a : authored) std::sort(a.begin(), a.end());
  }
  std::vector<std::set<int>> coauthors(nr);
  for (int r = 0; r < nr; ++r) {
    coauthors[r].insert(r);
    for (int m : group_members[group_of[r]]) coauthors[r].insert(m);
  }
  for (const auto& a : authors) {
    for (int r : a) coauthors[r].insert(a.begin(), a.end());
  }

  // Seniority and region.
  std::vector<Reviewer> reviewers(nr);
  {
    Rng rng = MakeRng(cfg.seed, kMeta);
    boost::random::bernoulli_distribution<double> senior(cfg.senior_fraction);
    boost::random::uniform_int_distribution<int> region(0, cfg.n_regions - 1);
    for (int r = 0; r < nr; ++r) {
      Reviewer& rev = reviewers[r];
      rev.id = "r" + std::to_string(r);
      rev.capacity = capacity;
      rev.senior = senior(rng);
      rev.region = region(rng);
      rev.coauthors.assign(coauthors[r].begin(), coauthors[r].end());
    }
  }

  // Bids. Later entries override earlier ones for the same pair.
  std::vector<BidEntry> bids;
  {
    Rng rng = MakeRng(cfg.seed, kBids);
    boost::random::normal_distribution<double> bid_count(cfg.bid_mean,
                                                         cfg.bid_sd);
    boost::random::discrete_distribution<int, double> same_level(
        cfg.same_area_bid_weights.begin(), cfg.same_area_bid_weights.end());
    boost::random::discrete_distribution<int, double> other_level(
        cfg.other_area_bid_weights.begin(), cfg.other_area_bid_weights.end());
    boost::random::bernoulli_distribution<double> colluder(cfg.collusion_rate);
    for (int r = 0; r < nr; ++r) {
      const double raw = std::round(bid_count(rng));
      const int total = static_cast<int>(std::clamp(raw, 0.0, double(np)));
      const int same =
          static_cast<int>(std::lround(total * cfg.same_area_bid_share));
      const int a = reviewer_area[r];
      for (int p : Choose(papers_in_area[a], same, rng)) {
        bids.push_back({p, r, static_cast<BidLevel>(same_level(rng))});
      }
      for (int p : Choose(papers_outside_area[a], total - same, rng)) {
        bids.push_back({p, r, static_cast<BidLevel>(other_level(rng))});
      }
      if (colluder(rng)) {
        for (int c : reviewers[r].coauthors) {
          if (c == r) continue;
          for (int p : authored[c]) {
            if (!std::binary_search(authored[r].begin(), authored[r].end(), p)) {
              bids.push_back({p, r, BidLevel::kEager});
            }
          }
        }
      }
    }
    std::stable_sort(bids.begin(), bids.end(),
                     [](const BidEntry& x, const BidEntry& y) {
                       return std::pair(x.paper, x.reviewer) <
                              std::pair(y.paper, y.reviewer);
                     });
    std::vector<BidEntry> kept;
    for (std::size_t i = 0; i < bids.size(); ++i) {
      if (i + 1 < bids.size() && bids[i + 1].paper == bids[i].paper &&
          bids[i + 1].reviewer == bids[i].reviewer) {
        continue;
      }
      if (bids[i].level != BidLevel::kNotEntered) kept.push_back(bids[i]);
    }
    bids = std::move(kept);
  }

  // Conflicts: authorship plus a heavy-tailed number of random papers.
  std::vector<PairKey> conflicts;
  for (int p = 0; p < np; ++p) {
    for (int r : authors[p]) conflicts.push_back({p, r});
  }
  {
    Rng rng = MakeRng(cfg.seed, kConflicts);
    boost::random::exponential_distribution<double> count(
        1.0 / std::max(cfg.conflict_scale, 1e-12));
    boost::random::uniform_int_distribution<int> paper(0, np - 1);
    for (int r = 0; r < nr; ++r) {
      const int k = cfg.conflict_scale > 0.0
                        ? std::min(np, static_cast<int>(count(rng)))
                        : 0;
      for (int i = 0; i < k; ++i) conflicts.push_back({paper(rng), r});
    }
  }
  std::sort(conflicts.begin(), conflicts.end());
  conflicts.erase(std::unique(conflicts.begin(), conflicts.end()),
                  conflicts.end());

  // Affinity rows and truncation.
  std::vector<int> bid_start(np + 1, 0);
  for (const BidEntry& b : bids) ++bid_start[b.paper + 1];
  for (int p = 0; p < np; ++p) bid_start[p + 1] += bid_start[p];
  std::vector<int> conflict_start(np + 1, 0);
  for (const PairKey& c : conflicts) ++conflict_start[c.paper + 1];
  for (int p = 0; p < np; ++p) conflict_start[p + 1] += conflict_start[p];

  auto worse = [](const Candidate& a, const Candidate& b) { return Better(a, b); };
  using Heap = std::priority_queue<Candidate, std::vector<Candidate>,
                                   decltype(worse)>;
  std::vector<Heap> per_reviewer(nr, Heap(worse));
  std::vector<SimilarityEntry> similarity;
  similarity.reserve(static_cast<std::size_t>(np) * k_paper);
  double pre_sum = 0.0;
  std::vector<double> row(nr);
  std::vector<char> blocked(nr, 0);
  std::vector<Candidate> candidates;
  for (int p = 0; p < np; ++p) {
    Rng rng = MakeRng(cfg.seed, kRows + static_cast<std::uint64_t>(p));
    boost::random::normal_distribution<double> normal;
    const double paper_part = cfg.mu + cfg.paper_sd * z_paper[p];
    for (int r = 0; r < nr; ++r) {
      double v = paper_part + cfg.reviewer_sd * z_reviewer[r] +
                 cfg.noise_sd * normal(rng);
      if (reviewer_area[r] == paper_area[p]) {
        const double d = CircularDistance(topic[p], group_topic[group_of[r]]);
        v += cfg.area_bonus +
             cfg.topic_bonus * std::max(0.0, 1.0 - d / cfg.topic_width);
      }
      row[r] = std::clamp(v, 0.0, 1.0);
    }
    for (int i = bid_start[p]; i < bid_start[p + 1]; ++i) {
      row[bids[i].reviewer] = aggregate_score(row[bids[i].reviewer], bids[i].level);
    }
    for (double v : row) pre_sum += v;
    for (int i = conflict_start[p]; i < conflict_start[p + 1]; ++i) {
      blocked[conflicts[i].reviewer] = 1;
    }

    candidates.clear();
    for (int r = 0; r < nr; ++r) {
      if (blocked[r]) continue;
      candidates.push_back({row[r], r});
      Heap& heap = per_reviewer[r];
      const Candidate c{row[r], p};
      if (static_cast<int>(heap.size()) < k_rev) {
        heap.push(c);
      } else if (Better(c, heap.top())) {
        heap.pop();
        heap.push(c);
      }
    }
    const std::size_t keep =
        std::min(candidates.size(), static_cast<std::size_t>(k_paper));
    std::partial_sort(candidates.begin(), candidates.begin() + keep,
                      candidates.end(), Better);
    for (std::size_t i = 0; i < keep; ++i) {
      similarity.push_back({p, candidates[i].index, candidates[i].value});
    }
    for (int i = conflict_start[p]; i < conflict_start[p + 1]; ++i) {
      blocked[conflicts[i].reviewer] = 0;
    }
  }
  for (int r = 0; r < nr; ++r) {
    Heap& heap = per_reviewer[r];
    while (!heap.empty()) {
      similarity.push_back({heap.top().index, r, heap.top().value});
      heap.pop();
    }
  }
  std::sort(similarity.begin(), similarity.end(),
            [](const SimilarityEntry& a, const SimilarityEntry& b) {
              return std::pair(a.paper, a.reviewer) <
                     std::pair(b.paper, b.reviewer);
            });
  similarity.erase(std::unique(similarity.begin(), similarity.end(),
                               [](const SimilarityEntry& a,
                                  const SimilarityEntry& b) {
                                 return a.paper == b.paper &&
                                        a.reviewer == b.reviewer;
                               }),
                   similarity.end());

  std::vector<int> per_paper(np, 0);
  double post_sum = 0.0;
  for (const SimilarityEntry& e : similarity) {
    ++per_paper[e.paper];
    post_sum += e.value;
  }
  for (int p = 0; p < np; ++p) {
    if (per_paper[p] < cfg.demand) {
      throw Error("paper p" + std::to_string(p) + " keeps " +
                  std::to_string(per_paper[p]) +
                  " candidates after truncation, fewer than its demand");
    }
  }

  if (stats != nullptr) {
    stats->pre_truncation_mean =
        pre_sum / (static_cast<double>(np) * static_cast<double>(nr));
    stats->post_truncation_mean =
        similarity.empty() ? 0.0 : post_sum / static_cast<double>(similarity.size());
    stats->paper_area_counts.assign(cfg.n_areas, 0);
    for (int a : paper_area) ++stats->paper_area_counts[a];
  }

  std::vector<Paper> papers(np);
  for (int p = 0; p < np; ++p) {
    papers[p].id = "p" + std::to_string(p);
    papers[p].demand = cfg.demand;
    papers[p].authors = authors[p];
  }
  std::vector<std::string> regions;
  for (int g = 0; g < cfg.n_regions; ++g) {
    regions.push_back("region" + std::to_string(g));
  }
  return make_instance(std::move(papers), std::move(reviewers),
                       std::move(regions), std::move(similarity),
                       std::move(bids), std::move(conflicts));
}

}  // namespace rampmatch
