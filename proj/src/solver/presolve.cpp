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

#include "presolve.hpp"

#include <algorithm>
#include <cmath>

namespace rampmatch::solver {
namespace {

constexpr double kActivityTol = 1e-9;

struct ColumnRows {
  std::vector<std::int64_t> start;
  std::vector<int> rows;
};

ColumnRows Incidence(const LinearProgram& lp) {
  const int n = lp.num_variables();
  ColumnRows cr;
  cr.start.assign(n + 1, 0);
  for (int c : lp.cols()) ++cr.start[c + 1];
  for (int j = 0; j < n; ++j) cr.start[j + 1] += cr.start[j];
  cr.rows.resize(lp.cols().size());
  std::vector<std::int64_t> fill(cr.start.begin(), cr.start.end() - 1);
  for (int i = 0; i < lp.num_rows(); ++i) {
    for (int c : lp.row_cols(i)) cr.rows[fill[c]++] = i;
  }
  return cr;
}

void RowBounds(Relation rel, double rhs, double& lo, double& hi) {
  lo = rel == Relation::kLe ? -kInf : rhs;
  hi = rel == Relation::kGe ? kInf : rhs;
}

}  // namespace

int ConvexPwl::piece(double x) const {
  return static_cast<int>(std::upper_bound(kink.begin(), kink.end(), x) -
                          kink.begin());
}

double ConvexPwl::operator()(double x) const {
  const int i = piece(x);
  return slope[i] * x + intercept[i];
}

ConvexPwl upper_envelope(const std::vector<double>& slope,
                         const std::vector<double>& intercept,
                         const std::vector<int>& rows, double lo, double hi) {
  const std::size_t k = slope.size();
  ConvexPwl out;
  std::size_t cur = 0;
  double best = slope[0] * lo + intercept[0];
  for (std::size_t j = 1; j < k; ++j) {
    const double v = slope[j] * lo + intercept[j];
    if (v > best || (v == best && slope[j] > slope[cur])) {
      best = v;
      cur = j;
    }
  }
  out.slope.push_back(slope[cur]);
  out.intercept.push_back(intercept[cur]);
  out.source_row.push_back(rows[cur]);
  double x = lo;
  for (;;) {
    std::size_t next = k;
    double at = kInf;
    for (std::size_t j = 0; j < k; ++j) {
      if (!(slope[j] > slope[cur])) continue;
      double xi = (intercept[cur] - intercept[j]) / (slope[j] - slope[cur]);
      xi = std::max(xi, x);
      if (xi < at || (xi == at && slope[j] > slope[next])) {
        at = xi;
        next = j;
      }
    }
    if (next == k || at >= hi) break;
    out.kink.push_back(at);
    out.slope.push_back(slope[next]);
    out.intercept.push_back(intercept[next]);
    out.source_row.push_back(rows[next]);
    cur = next;
    x = at;
  }
  return out;
}

PresolveOutcome presolve(const LinearProgram& lp, Reduced& red) {
  PresolveOutcome outcome;
  const int n = lp.num_variables();
  const int m = lp.num_rows();
  const ColumnRows cr = Incidence(lp);

  std::vector<double> lin(n, 0.0), quad(n, 0.0);
  std::vector<char> has_concave(n, 0);
  for (const ConcaveTerm& t : lp.concave()) {
    lin[t.var] += t.lin;
    quad[t.var] += t.quad;
    has_concave[t.var] = 1;
  }

  // Epigraph blocks.
  std::vector<char> row_removed(m, 0);
  std::vector<char> col_removed(n, 0);
  std::vector<int> block_of(n, -1);  // indexed by v
  for (int t = 0; t < n; ++t) {
    if (lp.lower(t) != -kInf || lp.upper(t) != kInf) continue;
    if (!(lp.objective(t) > 0.0) || has_concave[t]) continue;
    if (cr.start[t] == cr.start[t + 1]) continue;
    int v = -1;
    bool ok = true;
    EpigraphBlock block{t, -1, lp.objective(t), {}, {}, {}};
    for (std::int64_t e = cr.start[t]; e < cr.start[t + 1] && ok; ++e) {
      const int i = cr.rows[e];
      const auto cols = lp.row_cols(i);
      const auto vals = lp.row_vals(i);
      if (lp.relation(i) != Relation::kLe || cols.size() != 2 ||
          cols[0] == cols[1]) {
        ok = false;
        break;
      }
      const int pos_t = cols[0] == t ? 0 : 1;
      const int other = cols[1 - pos_t];
      if (!(vals[pos_t] > 0.0) || (v >= 0 && other != v)) {
        ok = false;
        break;
      }
      v = other;
      block.rows.push_back(i);
      block.alpha.push_back(vals[pos_t]);
      block.beta.push_back(vals[1 - pos_t]);
    }
    if (!ok || v < 0) continue;
    if (!std::isfinite(lp.lower(v)) || !std::isfinite(lp.upper(v))) continue;
    if (has_concave[v] || block_of[v] >= 0 || col_removed[v]) continue;
    block.v = v;
    for (int i : block.rows) row_removed[i] = 1;
    col_removed[t] = 1;
    block_of[v] = static_cast<int>(red.epigraphs.size());
    red.epigraphs.push_back(std::move(block));
  }

  // Column order: linear columns first, then nonlinear ones.
  std::vector<int> reduced_of(n, -1);
  red.col_of.clear();
  for (int j = 0; j < n; ++j) {
    if (col_removed[j] || block_of[j] >= 0 || quad[j] != 0.0) continue;
    reduced_of[j] = static_cast<int>(red.col_of.size());
    red.col_of.push_back(j);
  }
  red.n_linear = static_cast<int>(red.col_of.size());
  for (int j = 0; j < n; ++j) {
    if (col_removed[j] || reduced_of[j] >= 0) continue;
    reduced_of[j] = static_cast<int>(red.col_of.size());
    red.col_of.push_back(j);
  }
  red.n = static_cast<int>(red.col_of.size());
  red.c.resize(red.n);
  red.lo.resize(red.n);
  red.hi.resize(red.n);
  red.quad.assign(red.n - red.n_linear, 0.0);
  red.pwl.assign(red.n - red.n_linear, std::nullopt);
  for (int k = 0; k < red.n; ++k) {
    const int j = red.col_of[k];
    red.c[k] = -(lp.objective(j) + lin[j]);
    red.lo[k] = lp.lower(j);
    red.hi[k] = lp.upper(j);
    if (k < red.n_linear) continue;
    red.quad[k - red.n_linear] = quad[j];
    if (block_of[j] >= 0) {
      const EpigraphBlock& b = red.epigraphs[block_of[j]];
      std::vector<double> s, d;
      for (std::size_t r = 0; r < b.rows.size(); ++r) {
        s.push_back(b.weight * b.beta[r] / b.alpha[r]);
        d.push_back(-b.weight * lp.rhs(b.rows[r]) / b.alpha[r]);
      }
      red.pwl[k - red.n_linear] =
          upper_envelope(s, d, b.rows, lp.lower(j), lp.upper(j));
    }
  }

  // Rows.
  red.row_of.clear();
  red.row_start.assign(1, 0);
  red.col.clear();
  red.val.clear();
  red.row_lo.clear();
  red.row_hi.clear();
  for (int i = 0; i < m; ++i) {
    if (row_removed[i]) continue;
    double lo, hi;
    RowBounds(lp.relation(i), lp.rhs(i), lo, hi);
    const auto cols = lp.row_cols(i);
    const auto vals = lp.row_vals(i);
    double amin = 0.0, amax = 0.0;
    for (std::size_t e = 0; e < cols.size(); ++e) {
      const double a = vals[e];
      if (a == 0.0) continue;
      const double l = lp.lower(cols[e]), u = lp.upper(cols[e]);
      amin += a > 0.0 ? a * l : a * u;
      amax += a > 0.0 ? a * u : a * l;
      red.col.push_back(reduced_of[cols[e]]);
      red.val.push_back(a);
    }
    const double scale = 1.0 + std::fabs(lp.rhs(i));
    if (amin > hi + kActivityTol * scale || amax < lo - kActivityTol * scale) {
      outcome.kind = PresolveOutcome::Kind::kInfeasible;
      outcome.hint = lp.row_name(i);
      outcome.message = "row " + outcome.hint +
                        " cannot be satisfied within the variable bounds";
      return outcome;
    }
    red.row_start.push_back(static_cast<std::int64_t>(red.col.size()));
    red.row_lo.push_back(lo);
    red.row_hi.push_back(hi);
    red.row_of.push_back(i);
  }
  red.m = static_cast<int>(red.row_of.size());

  // Transpose.
  red.col_start.assign(red.n + 1, 0);
  for (int c : red.col) ++red.col_start[c + 1];
  for (int j = 0; j < red.n; ++j) red.col_start[j + 1] += red.col_start[j];
  red.row_idx.resize(red.col.size());
  red.tval.resize(red.col.size());
  {
    std::vector<std::int64_t> fill(red.col_start.begin(),
                                   red.col_start.end() - 1);
    for (int i = 0; i < red.m; ++i) {
      for (std::int64_t e = red.row_start[i]; e < red.row_start[i + 1]; ++e) {
        const std::int64_t at = fill[red.col[e]]++;
        red.row_idx[at] = i;
        red.tval[at] = red.val[e];
      }
    }
  }

  // A linear column outside every row whose cost improves without bound.
  for (int k = 0; k < red.n_linear; ++k) {
    if (red.col_start[k] != red.col_start[k + 1]) continue;
    if ((red.c[k] < 0.0 && red.hi[k] == kInf) ||
        (red.c[k] > 0.0 && red.lo[k] == -kInf)) {
      outcome.kind = PresolveOutcome::Kind::kUnbounded;
      outcome.message = "variable " + lp.var_name(red.col_of[k]) +
                        " improves the objective without bound";
      return outcome;
    }
  }
  return outcome;
}

void postsolve(const LinearProgram& lp, const Reduced& red,
               const std::vector<double>& x_red,
               const std::vector<double>& y_red, std::vector<double>& x,
               std::vector<double>& duals) {
  x.assign(lp.num_variables(), 0.0);
  duals.assign(lp.num_rows(), 0.0);
  for (int k = 0; k < red.n; ++k) x[red.col_of[k]] = x_red[k];
  for (int i = 0; i < red.m; ++i) duals[red.row_of[i]] = y_red[i];
  for (const EpigraphBlock& b : red.epigraphs) {
    const double v = x[b.v];
    double best = kInf;
    std::size_t active = 0;
    for (std::size_t r = 0; r < b.rows.size(); ++r) {
      const double bound = (lp.rhs(b.rows[r]) - b.beta[r] * v) / b.alpha[r];
      if (bound < best) {
        best = bound;
        active = r;
      }
    }
    x[b.t] = best;
    duals[b.rows[active]] = b.weight / b.alpha[active];
  }
}

}  // namespace rampmatch::solver
