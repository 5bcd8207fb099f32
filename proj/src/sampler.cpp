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

#include "rampmatch/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rampmatch {
namespace {

constexpr double kSnap = 1e-9;

Fixed FloorLoad(Fixed load) { return load - load % kFixedOne; }
Fixed CeilLoad(Fixed load) {
  const Fixed f = FloorLoad(load);
  return f == load ? f : f + kFixedOne;
}

[[noreturn]] void Internal(const std::string& what) {
  throw Error("internal sampler error: " + what);
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  std::uint64_t z = x + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) + stream);
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % n;
  }
}

RoundingState::RoundingState(const Instance& inst,
                             const FractionalAssignment& frac, double tol)
    : inst_(&inst) {
  const int np = inst.num_papers();
  const int nr = inst.num_reviewers();
  const bool split = frac.seniority_split;
  num_rows_ = split ? 2 * np : np;
  row_paper_.resize(num_rows_);
  std::vector<int> target(num_rows_);
  for (int p = 0; p < np; ++p) {
    const int demand = inst.papers[p].demand;
    if (split) {
      if (demand < 1) {
        throw Error("paper " + inst.papers[p].id +
                    ": seniority split needs demand >= 1");
      }
      row_paper_[2 * p] = row_paper_[2 * p + 1] = p;
      target[2 * p] = 1;
      target[2 * p + 1] = demand - 1;
    } else {
      row_paper_[p] = p;
      target[p] = demand;
    }
  }

  std::vector<double> row_sum(num_rows_, 0.0);
  std::vector<double> load_sum(nr, 0.0);
  for (const FractionalEntry& e : frac.entries) {
    if (e.paper < 0 || e.paper >= np || e.reviewer < 0 || e.reviewer >= nr) {
      throw Error("fractional entry index out of range");
    }
    double x = e.x;
    if (!(x >= -tol && x <= 1.0 + tol)) {
      throw Error("fractional value out of [0, 1] for paper " +
                  inst.papers[e.paper].id);
    }
    if (x <= kSnap) continue;
    if (x >= 1.0 - kSnap) x = 1.0;
    if (inst.is_conflict(e.paper, e.reviewer)) {
      throw Error("conflicting pair (" + inst.papers[e.paper].id + ", " +
                  inst.reviewers[e.reviewer].id + ") carries mass");
    }
    const int row = split ? 2 * e.paper + (inst.reviewers[e.reviewer].senior
                                               ? 0
                                               : 1)
                          : e.paper;
    paper_.push_back(e.paper);
    reviewer_.push_back(e.reviewer);
    row_.push_back(row);
    value_.push_back(std::llround(x * static_cast<double>(kFixedOne)));
    row_sum[row] += x;
    load_sum[e.reviewer] += x;
  }
  for (int row = 0; row < num_rows_; ++row) {
    if (std::fabs(row_sum[row] - target[row]) > tol) {
      throw Error("paper " + inst.papers[row_paper_[row]].id + ": marginals sum to " +
                  std::to_string(row_sum[row]) + ", expected " +
                  std::to_string(target[row]));
    }
  }
  for (int r = 0; r < nr; ++r) {
    if (load_sum[r] > inst.reviewers[r].capacity + tol) {
      throw Error("reviewer " + inst.reviewers[r].id + ": load " +
                  std::to_string(load_sum[r]) + " exceeds capacity");
    }
  }

  const int ne = num_edges();
  std::vector<std::vector<int>> row_edges(num_rows_);
  std::vector<std::vector<int>> rev_edges(nr);
  for (int e = 0; e < ne; ++e) {
    row_edges[row_[e]].push_back(e);
    rev_edges[reviewer_[e]].push_back(e);
  }

  // Make every row sum an exact multiple of one.
  for (int row = 0; row < num_rows_; ++row) {
    std::vector<int>& edges = row_edges[row];
    Fixed diff = static_cast<Fixed>(target[row]) * kFixedOne;
    for (int e : edges) diff -= value_[e];
    if (diff == 0) continue;
    std::vector<int> order = edges;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return value_[a] > value_[b]; });
    for (int e : order) {
      if (diff > 0) {
        const Fixed d = std::min(diff, kFixedOne - value_[e]);
        value_[e] += d;
        diff -= d;
      } else if (diff < 0) {
        const Fixed d = std::min(-diff, value_[e]);
        value_[e] -= d;
        diff += d;
      }
    }
    if (diff != 0) {
      throw Error("paper " + inst.papers[row_paper_[row]].id +
                  ": marginals cannot be rounded to the demand");
    }
  }

  load_.assign(nr, 0);
  for (int e = 0; e < ne; ++e) load_[reviewer_[e]] += value_[e];

  // Shift rounding excess off over-capacity reviewers. Each step moves mass
  // along reviewer -> row -> reviewer links until it reaches a reviewer with
  // slack; every row sum stays fixed.
  const auto cap_of = [&](int r) {
    return static_cast<Fixed>(inst.reviewers[r].capacity) * kFixedOne;
  };
  std::vector<std::pair<int, int>> via(nr);  // (edge taken from, edge given to)
  std::vector<int> seen(nr, -1);
  int round = 0;
  for (int r = 0; r < nr; ++r) {
    Fixed excess = load_[r] - cap_of(r);
    while (excess > 0) {
      ++round;
      std::vector<int> queue{r};
      seen[r] = round;
      int sink = -1;
      for (std::size_t head = 0; head < queue.size() && sink < 0; ++head) {
        const int u = queue[head];
        for (int e : rev_edges[u]) {
          if (value_[e] == 0 || sink >= 0) continue;
          for (int f : row_edges[row_[e]]) {
            const int v = reviewer_[f];
            if (seen[v] == round || value_[f] == kFixedOne) continue;
            seen[v] = round;
            via[v] = {e, f};
            if (load_[v] < cap_of(v)) {
              sink = v;
              break;
            }
            queue.push_back(v);
          }
        }
      }
      if (sink < 0) break;
      Fixed d = std::min(excess, cap_of(sink) - load_[sink]);
      for (int v = sink; v != r; v = reviewer_[via[v].first]) {
        d = std::min({d, value_[via[v].first], kFixedOne - value_[via[v].second]});
      }
      for (int v = sink; v != r; v = reviewer_[via[v].first]) {
        value_[via[v].first] -= d;
        value_[via[v].second] += d;
      }
      load_[r] -= d;
      load_[sink] += d;
      excess -= d;
    }
    if (excess > 0) {
      throw Error("reviewer " + inst.reviewers[r].id +
                  ": load cannot be rounded within capacity");
    }
  }

  adj_.assign(num_rows_ + nr, {});
  for (int e = 0; e < ne; ++e) {
    if (value_[e] == 0 || value_[e] == kFixedOne) continue;
    adj_[row_node(row_[e])].push_back(e);
    adj_[reviewer_node(reviewer_[e])].push_back(e);
    ++fractional_edges_;
  }
  for (int node = 0; node < static_cast<int>(adj_.size()); ++node) {
    std::sort(adj_[node].begin(), adj_[node].end(), [&](int a, int b) {
      return other_end(a, node) < other_end(b, node);
    });
  }
}

int RoundingState::other_end(int e, int node) const {
  return is_row(node) ? reviewer_node(reviewer_[e]) : row_node(row_[e]);
}

double RoundingState::value_double(int e) const {
  return static_cast<double>(value_[e]) / static_cast<double>(kFixedOne);
}

void RoundingState::drop_edge(int e) {
  for (int node : {row_node(row_[e]), reviewer_node(reviewer_[e])}) {
    auto& list = adj_[node];
    list.erase(std::find(list.begin(), list.end(), e));
  }
  --fractional_edges_;
}

int RoundingState::pick_start() const {
  int fractional_load = -1;
  int any = -1;
  for (int r = 0; r < inst_->num_reviewers(); ++r) {
    const std::size_t degree = adj_[reviewer_node(r)].size();
    if (degree == 0) continue;
    if (any < 0) any = r;
    if (load_[r] % kFixedOne == 0) continue;
    if (degree % 2 == 1) return r;
    if (fractional_load < 0) fractional_load = r;
  }
  return fractional_load >= 0 ? fractional_load : any;
}

Chain RoundingState::find_chain(SampleMode mode) const {
  if (done()) Internal("no fractional edge left");
  const int start = pick_start();
  if (start < 0) Internal("fractional edge without reviewer");

  std::vector<int> nodes{reviewer_node(start)};
  std::vector<int> edges;
  std::vector<int> position(adj_.size(), -1);
  position[nodes[0]] = 0;
  for (;;) {
    const int u = nodes.back();
    const int parent = edges.empty() ? -1 : edges.back();
    int chosen = -1;
    if (is_row(u) && mode == SampleMode::kAttribute) {
      const int prev = reviewer_[parent];
      int best_tier = 3;
      for (int e : adj_[u]) {
        if (e == parent) continue;
        const int r = reviewer_[e];
        const int tier =
            inst_->is_coauthor(prev, r)                                  ? 0
            : inst_->reviewers[r].region == inst_->reviewers[prev].region ? 1
                                                                          : 2;
        if (tier < best_tier) {
          best_tier = tier;
          chosen = e;
          if (tier == 0) break;
        }
      }
    } else {
      for (int e : adj_[u]) {
        if (e != parent) {
          chosen = e;
          break;
        }
      }
    }

    if (chosen < 0) {
      if (is_row(u)) Internal("walk stopped at a paper");
      Chain chain;
      chain.kind = Chain::Kind::kPath;
      chain.edges = std::move(edges);
      chain.start_reviewer = start;
      chain.end_reviewer = u - num_rows_;
      return chain;
    }
    const int v = other_end(chosen, u);
    if (position[v] >= 0) {
      Chain chain;
      chain.kind = Chain::Kind::kCycle;
      chain.edges.assign(edges.begin() + position[v], edges.end());
      chain.edges.push_back(chosen);
      return chain;
    }
    position[v] = static_cast<int>(nodes.size());
    nodes.push_back(v);
    edges.push_back(chosen);
  }
}

Rotation RoundingState::rotation(const Chain& chain) const {
  Rotation rot{kFixedOne, kFixedOne};
  for (std::size_t i = 0; i < chain.edges.size(); ++i) {
    const Fixed v = value_[chain.edges[i]];
    if (i % 2 == 0) {
      rot.alpha = std::min(rot.alpha, kFixedOne - v);
      rot.beta = std::min(rot.beta, v);
    } else {
      rot.alpha = std::min(rot.alpha, v);
      rot.beta = std::min(rot.beta, kFixedOne - v);
    }
  }
  if (chain.kind == Chain::Kind::kPath) {
    // The first edge gains alpha and the last one (odd position) loses it.
    const Fixed ls = load_[chain.start_reviewer];
    const Fixed le = load_[chain.end_reviewer];
    rot.alpha = std::min({rot.alpha, CeilLoad(ls) - ls, le - FloorLoad(le)});
    rot.beta = std::min({rot.beta, ls - FloorLoad(ls), CeilLoad(le) - le});
  }
  return rot;
}

void RoundingState::apply(const Chain& chain, const Rotation& rot,
                          bool increase) {
  const Fixed step = increase ? rot.alpha : -rot.beta;
  for (std::size_t i = 0; i < chain.edges.size(); ++i) {
    const int e = chain.edges[i];
    const Fixed d = i % 2 == 0 ? step : -step;
    value_[e] += d;
    load_[reviewer_[e]] += d;
    if (value_[e] < 0 || value_[e] > kFixedOne) Internal("value left [0, 1]");
    if (value_[e] == 0 || value_[e] == kFixedOne) drop_edge(e);
  }
}

void RoundingState::rotate(const Chain& chain, std::mt19937_64& rng) {
  const Rotation rot = rotation(chain);
  if (rot.alpha <= 0 || rot.beta <= 0) Internal("degenerate rotation");
  const std::uint64_t total =
      static_cast<std::uint64_t>(rot.alpha) + static_cast<std::uint64_t>(rot.beta);
  const bool increase =
      uniform_below(rng, total) < static_cast<std::uint64_t>(rot.beta);
  apply(chain, rot, increase);
}

std::vector<PairKey> RoundingState::assigned() const {
  std::vector<PairKey> out;
  for (int e = 0; e < num_edges(); ++e) {
    if (value_[e] == kFixedOne) out.push_back({paper_[e], reviewer_[e]});
  }
  std::sort(out.begin(), out.end());
  return out;
}

IntegralAssignment sample(const Instance& inst,
                          const FractionalAssignment& frac, SampleMode mode,
                          std::uint64_t seed, SampleStats* stats) {
  RoundingState state(inst, frac);
  std::mt19937_64 rng(splitmix64(seed));
  SampleStats local;
  while (!state.done()) {
    const Chain chain = state.find_chain(mode);
    state.rotate(chain, rng);
    ++local.rotations;
    ++(chain.kind == Chain::Kind::kCycle ? local.cycles : local.paths);
  }
  if (stats != nullptr) *stats = local;
  IntegralAssignment out;
  out.pairs = state.assigned();
  out.seed = seed;
  out.mode = mode;
  return out;
}

}  // namespace rampmatch
