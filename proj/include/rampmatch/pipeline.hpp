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

#ifndef RAMPMATCH_PIPELINE_HPP_
#define RAMPMATCH_PIPELINE_HPP_

// build -> solve -> sample -> evaluate, plus the run configuration that
// makes every run replayable.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rampmatch/linear_program.hpp"
#include "rampmatch/metrics.hpp"
#include "rampmatch/model.hpp"
#include "rampmatch/program.hpp"
#include "rampmatch/sampler.hpp"
#include "rampmatch/solver.hpp"

namespace rampmatch {

// Solver output closer than this to 0 or Q is snapped.
inline constexpr double kExtractSnap = 1e-7;

struct SolveInfo {
  int stages = 0;
  std::int64_t variables = 0;  // summed over stages
  std::int64_t rows = 0;
  std::int64_t iterations = 0;
  double build_seconds = 0.0;
  double solve_seconds = 0.0;
  double max_primal_residual = 0.0;
  double max_relative_gap = 0.0;
  // Solver objective of the last stage, before extraction and rounding.
  double last_objective = 0.0;
  // Program of the last stage, kept when requested.
  LinearProgram last_program;
};

// Reads the x block of a solved program: clips to [0, q], snaps values
// within kExtractSnap of 0 or q, rebalances each paper to its demand and
// moves load above a reviewer's capacity to co-assigned reviewers.
FractionalAssignment extract_fractional(const Instance& inst,
                                        const AssignmentProgram& prog,
                                        const std::vector<double>& x,
                                        double q);

struct SolveRequest {
  SolverOptions solver;
  bool linearize = true;   // false: concave terms go to the solver as is
  bool keep_program = false;
};

// Dispatches on hp.seniority. Throws InfeasibleError when no assignment
// exists and Error when the solver stops without a certificate.
FractionalAssignment solve_fractional(const Instance& inst,
                                      const Hyperparameters& hp,
                                      const SolveRequest& request = {},
                                      SolveInfo* info = nullptr);

// Seniors first with one review per paper, then juniors for the remaining
// demand with the senior marginals held fixed. The result is flagged so the
// sampler keeps exactly one senior review per paper.
FractionalAssignment two_stage_seniority(const Instance& inst,
                                         const Hyperparameters& hp,
                                         const SolveRequest& request = {},
                                         SolveInfo* info = nullptr);

// Rounds a fractional assignment to a vertex without lowering sum S x, by
// moving every alternating cycle or path fully in its non-worsening
// direction. Used on Default solutions, whose optimum is attained at a
// vertex.
void purify(const Instance& inst, FractionalAssignment& frac);

// Default-mode optimum of sum S x under the given sparsification caps.
double reference_optimum(const Instance& inst, int k_paper, int k_rev,
                         const SolverOptions& solver);

struct RunConfig {
  std::string instance;  // path
  Hyperparameters hp;
  SolverOptions solver;
  SampleMode sample_mode = SampleMode::kAttribute;
  std::uint64_t seed = 0;
  int num_samples = 1;
  int jobs = 1;
  bool diversity_raw = false;
  bool linearize = true;
  std::string export_lp;  // file name inside the output directory, or empty
  std::string run_id = "run";
};

// JSON object with every field of RunConfig; run_config_from_json accepts
// partial objects and fills the rest from `base`.
std::string run_config_to_json(const RunConfig& cfg);
RunConfig run_config_from_json(const std::string& text, const RunConfig& base);

struct RunTimings {
  double build = 0.0;
  double solve = 0.0;
  double sample = 0.0;  // mean over samples
  double reference = 0.0;
  double runtime() const { return build + solve + sample; }
};

struct RunResult {
  FractionalAssignment frac;
  std::vector<IntegralAssignment> samples;
  MetricsReport metrics;
  RunTimings timings;
  SolveInfo info;
  double reference = 0.0;
};

// `reference` <= 0 computes the Default optimum (or reuses the run's own
// solution when it is a plain Default run).
RunResult run_assign(const Instance& inst, const RunConfig& cfg,
                     double reference = 0.0);

// fractional.csv, assignment.csv (first sample), assignments.csv (all
// samples, when more than one), metrics.csv, run.json and the optional LP.
void write_run_outputs(const Instance& inst, const RunConfig& cfg,
                       const RunResult& result, const std::string& dir);

std::string fractional_csv(const Instance& inst,
                           const FractionalAssignment& frac);
std::string assignment_csv(const Instance& inst,
                           const IntegralAssignment& assignment);
std::string run_json(const RunConfig& cfg, const RunResult& result);

// Sweepable names: lambda_div, lambda_co, lambda_cyc, lambda_sen, q, delta,
// f_b. Throws Error on unknown names.
void set_parameter(Hyperparameters& hp, const std::string& name, double value);

using SweepGrid = std::vector<std::pair<std::string, std::vector<double>>>;

// Cartesian product in row-major order (last parameter varies fastest).
// Throws Error on an empty grid or an empty value list.
std::vector<std::vector<std::pair<std::string, double>>> expand_grid(
    const SweepGrid& grid);

struct SweepRow {
  std::vector<std::pair<std::string, double>> point;
  bool ok = false;
  std::string error;
  MetricsReport metrics;
};

// One run_assign per grid point, at most `cfg.jobs` at a time. A failing
// point is recorded and the sweep continues.
std::vector<SweepRow> run_sweep(const Instance& inst, const RunConfig& cfg,
                                const SweepGrid& grid);
std::string sweep_csv(const SweepGrid& grid, const std::vector<SweepRow>& rows);

}  // namespace rampmatch

#endif  // RAMPMATCH_PIPELINE_HPP_
