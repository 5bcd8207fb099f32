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

#include "rampmatch/solver.hpp"

#include <chrono>

#include "pdhg.hpp"
#include "presolve.hpp"

namespace rampmatch {

std::string_view solve_status_name(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kUnbounded:
      return "unbounded";
    case SolveStatus::kIterationLimit:
      return "iteration-limit";
  }
  return "unknown";
}

SolveResult solve(const LinearProgram& lp, const SolverOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  SolveResult result;
  solver::Reduced red;
  const solver::PresolveOutcome pre = solver::presolve(lp, red);
  const auto finish = [&] {
    result.stats.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return result;
  };
  if (pre.kind != solver::PresolveOutcome::Kind::kReduced) {
    result.status = pre.kind == solver::PresolveOutcome::Kind::kInfeasible
                        ? SolveStatus::kInfeasible
                        : SolveStatus::kUnbounded;
    result.infeasible_hint = pre.hint;
    result.message = pre.message;
    result.x.assign(lp.num_variables(), 0.0);
    result.duals.assign(lp.num_rows(), 0.0);
    return finish();
  }
  result.stats.presolved_epigraphs = static_cast<int>(red.epigraphs.size());

  const solver::PdhgOutput out = solver::run_pdhg(red, opts);
  solver::postsolve(lp, red, out.x, out.y, result.x, result.duals);
  result.objective = lp.evaluate_objective(result.x);
  result.dual_objective = -out.dual_objective;
  switch (out.status) {
    case solver::PdhgOutput::Status::kConverged:
      result.status = SolveStatus::kOptimal;
      break;
    case solver::PdhgOutput::Status::kInfeasible:
      result.status = SolveStatus::kInfeasible;
      result.message = "the iterates diverge along a dual ray";
      break;
    case solver::PdhgOutput::Status::kUnbounded:
      result.status = SolveStatus::kUnbounded;
      result.message = "the iterates diverge along an improving primal ray";
      break;
    case solver::PdhgOutput::Status::kIterationLimit:
      result.status = SolveStatus::kIterationLimit;
      result.message =
          "iteration limit reached before the optimality tolerance";
      break;
  }
  result.stats.iterations = out.iterations;
  result.stats.restarts = out.restarts;
  result.stats.primal_residual = out.primal_residual;
  result.stats.dual_residual = out.dual_residual;
  result.stats.relative_gap = out.relative_gap;
  return finish();
}

}  // namespace rampmatch
