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

#ifndef RAMPMATCH_SOLVER_HPP_
#define RAMPMATCH_SOLVER_HPP_

// First-order solver for the assignment programs.
//
// The solver is a restarted primal-dual hybrid gradient method with diagonal
// preconditioning. A presolve pass recognizes epigraph blocks
// (t <= a_j v + b_j for every j, t maximized) and folds them back into a
// piecewise-linear cost on v, so the linearized programs are solved without
// their epigraph rows. Separable concave quadratic terms left on the
// program are handled exactly through their proximal operator.
//
// Optimality is certified by the primal-dual gap: on return with kOptimal,
// every row and bound holds within `tol` (absolute) and
// |primal - dual| <= tol * max(1, |primal|, |dual|).

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rampmatch/linear_program.hpp"

namespace rampmatch {

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

std::string_view solve_status_name(SolveStatus status);

struct SolverOptions {
  double tol = 1e-6;
  std::int64_t max_iters = 10'000'000;
  int threads = 1;
  // Ruiz equilibration of the constraint matrix before the diagonal
  // preconditioner.
  bool equilibrate = false;
  // Iterations between restart and termination checks.
  int check_every = 64;
  bool verbose = false;
};

struct SolveStats {
  std::int64_t iterations = 0;
  int restarts = 0;
  double seconds = 0.0;
  double primal_residual = 0.0;  // max row violation
  double dual_residual = 0.0;
  double relative_gap = 0.0;
  int presolved_epigraphs = 0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::kIterationLimit;
  std::vector<double> x;      // one value per program variable
  std::vector<double> duals;  // one per row, >= 0 on <= rows (maximization)
  double objective = 0.0;     // includes concave terms
  double dual_objective = 0.0;
  SolveStats stats;
  // For kInfeasible: name of a row that cannot be satisfied.
  std::string infeasible_hint;
  std::string message;
};

SolveResult solve(const LinearProgram& lp, const SolverOptions& opts = {});

}  // namespace rampmatch

#endif  // RAMPMATCH_SOLVER_HPP_
