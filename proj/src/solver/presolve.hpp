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

#ifndef RAMPMATCH_SOLVER_PRESOLVE_HPP_
#define RAMPMATCH_SOLVER_PRESOLVE_HPP_

// Reduction of a maximization program to the minimization form consumed by
// the PDHG core:
//
//   min  sum_j c_j x_j + phi_j(x_j)   s.t.  row_lo <= A x <= row_hi,
//                                           lo <= x <= hi
//
// where phi_j is zero (linear columns, stored first), a convex quadratic
// q_j x_j^2, or a convex piecewise-linear function recovered from an
// epigraph block.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rampmatch/linear_program.hpp"

namespace rampmatch::solver {

// Convex piecewise-linear function on [lo, hi]: piece i is
// slope[i] * x + intercept[i] on [kink[i-1], kink[i]].
struct ConvexPwl {
  std::vector<double> kink;  // interior breakpoints, increasing
  std::vector<double> slope;
  std::vector<double> intercept;
  std::vector<int> source_row;  // program row of each piece

  double operator()(double x) const;
  int piece(double x) const;
};

// Upper envelope of the lines slope*x + intercept restricted to [lo, hi].
ConvexPwl upper_envelope(const std::vector<double>& slope,
                         const std::vector<double>& intercept,
                         const std::vector<int>& rows, double lo, double hi);

struct EpigraphBlock {
  int t;       // program column of the epigraph variable
  int v;       // program column it bounds
  double weight;  // objective coefficient of t (> 0)
  std::vector<int> rows;
  std::vector<double> alpha;  // coefficient of t per row
  std::vector<double> beta;   // coefficient of v per row
};

struct Reduced {
  int n = 0;
  int m = 0;
  int n_linear = 0;
  std::vector<int> col_of;  // reduced column -> program column
  std::vector<int> row_of;  // reduced row -> program row
  std::vector<double> c, lo, hi;
  // Nonlinear columns, indexed by (j - n_linear).
  std::vector<double> quad;
  std::vector<std::optional<ConvexPwl>> pwl;
  // Rows in CSR form plus the transpose.
  std::vector<std::int64_t> row_start;
  std::vector<std::int32_t> col;
  std::vector<double> val;
  std::vector<std::int64_t> col_start;
  std::vector<std::int32_t> row_idx;
  std::vector<double> tval;
  std::vector<double> row_lo, row_hi;

  std::vector<EpigraphBlock> epigraphs;
};

struct PresolveOutcome {
  enum class Kind { kReduced, kInfeasible, kUnbounded } kind = Kind::kReduced;
  std::string hint;
  std::string message;
};

PresolveOutcome presolve(const LinearProgram& lp, Reduced& out);

// Maps a reduced primal/dual solution back to program variables and rows.
void postsolve(const LinearProgram& lp, const Reduced& red,
               const std::vector<double>& x_red,
               const std::vector<double>& y_red, std::vector<double>& x,
               std::vector<double>& duals);

}  // namespace rampmatch::solver

#endif  // RAMPMATCH_SOLVER_PRESOLVE_HPP_
