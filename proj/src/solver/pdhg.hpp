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

#ifndef RAMPMATCH_SOLVER_PDHG_HPP_
#define RAMPMATCH_SOLVER_PDHG_HPP_

#include <cstdint>
#include <vector>

#include "rampmatch/solver.hpp"
#include "presolve.hpp"

namespace rampmatch::solver {

struct PdhgOutput {
  enum class Status { kConverged, kInfeasible, kUnbounded, kIterationLimit };
  Status status = Status::kIterationLimit;
  std::vector<double> x;  // reduced columns, unscaled
  std::vector<double> y;  // reduced rows, unscaled
  double primal_objective = 0.0;  // minimization form
  double dual_objective = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double relative_gap = 0.0;
  std::int64_t iterations = 0;
  int restarts = 0;
};

PdhgOutput run_pdhg(const Reduced& problem, const SolverOptions& opts);

}  // namespace rampmatch::solver

#endif  // RAMPMATCH_SOLVER_PDHG_HPP_
