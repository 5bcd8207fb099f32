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

#include <cmath>

#include "doctest.h"
#include "rampmatch/kernels.hpp"
#include "rampmatch/pipeline.hpp"
#include "rampmatch/program.hpp"
#include "rampmatch/solver.hpp"
#include "rampmatch/synthgen.hpp"
#include "support/oracles.hpp"

namespace rampmatch {
namespace {

void CheckCertificate(const LinearProgram& lp, const SolveResult& r,
                      double tol) {
  REQUIRE(r.status == SolveStatus::kOptimal);
  CHECK(lp.max_violation(r.x) <= tol);
  // Weak duality for a maximization: primal <= dual up to the tolerance.
  CHECK(r.objective <= r.dual_objective + 1e-6 * std::fabs(r.objective) + 1e-9);
}

TEST_CASE("small LP with a known vertex optimum") {
  // max x + y  s.t.  x + 2y <= 4,  3x + y <= 6  ->  x = 1.6, y = 1.2.
  LinearProgram lp;
  const int x = lp.add_variable("x", 0.0, kInf, 1.0);
  const int y = lp.add_variable("y", 0.0, kInf, 1.0);
  const int c[2] = {x, y};
  const double r1[2] = {1.0, 2.0}, r2[2] = {3.0, 1.0};
  lp.add_row("r1", c, r1, Relation::kLe, 4.0);
  lp.add_row("r2", c, r2, Relation::kLe, 6.0);
  const SolveResult r = solve(lp);
  CheckCertificate(lp, r, 1e-6);
  CHECK(r.x[x] == doctest::Approx(1.6).epsilon(1e-5));
  CHECK(r.x[y] == doctest::Approx(1.2).epsilon(1e-5));
  CHECK(r.objective == doctest::Approx(2.8).epsilon(1e-6));
}

TEST_CASE("equality, >= rows and free variables") {
  // max -|z| style: max -u  s.t. u >= z - 1, u >= 1 - z, z + w = 3, w <= 1.
  LinearProgram lp;
  const int z = lp.add_variable("z", -kInf, kInf, 0.0);
  const int u = lp.add_variable("u", -kInf, kInf, -1.0);
  const int w = lp.add_variable("w", 0.0, 1.0, 0.0);
  const int a[2] = {u, z};
  const double p[2] = {1.0, -1.0}, m[2] = {1.0, 1.0};
  lp.add_row("a", a, p, Relation::kGe, -1.0);
  lp.add_row("b", a, m, Relation::kGe, 1.0);
  const int e[2] = {z, w};
  lp.add_row("e", e, m, Relation::kEq, 3.0);
  const SolveResult r = solve(lp);
  CheckCertificate(lp, r, 1e-6);
  CHECK(r.x[z] == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(r.objective == doctest::Approx(-1.0).epsilon(1e-5));
}

TEST_CASE("infeasible and unbounded programs are classified") {
  LinearProgram bad;
  const int x = bad.add_variable("x", 0.0, 1.0, 1.0);
  const int y = bad.add_variable("y", 0.0, 1.0, 1.0);
  const int c[2] = {x, y};
  const double v[2] = {1.0, 1.0};
  bad.add_row("need3", c, v, Relation::kEq, 3.0);
  const SolveResult r = solve(bad);
  CHECK(r.status == SolveStatus::kInfeasible);

  LinearProgram open;
  const int z = open.add_variable("z", 0.0, kInf, 1.0);
  const int w = open.add_variable("w", 0.0, kInf, 0.0);
  const int cz[2] = {z, w};
  const double vz[2] = {1.0, -1.0};
  open.add_row("zw", cz, vz, Relation::kLe, 1.0);
  CHECK(solve(open).status == SolveStatus::kUnbounded);
}

TEST_CASE("concave terms are solved natively") {
  // max x - 0.5 x^2 + 2y - y^2 s.t. x + y <= 1.5. KKT: 1 - x = 2 - 2y and
  // x + y = 1.5, so x = 2/3 and y = 5/6.
  LinearProgram lp;
  const int x = lp.add_variable("x", 0.0, 2.0);
  const int y = lp.add_variable("y", 0.0, 2.0);
  lp.add_concave({x, 1.0, 0.5});
  lp.add_concave({y, 2.0, 1.0});
  const int c[2] = {x, y};
  const double v[2] = {1.0, 1.0};
  lp.add_row("s", c, v, Relation::kLe, 1.5);
  const SolveResult r = solve(lp);
  REQUIRE(r.status == SolveStatus::kOptimal);
  CHECK(r.x[x] == doctest::Approx(2.0 / 3.0).epsilon(1e-4));
  CHECK(r.x[y] == doctest::Approx(5.0 / 6.0).epsilon(1e-4));
}

TEST_CASE("default mode matches the exhaustive matching optimum") {
  testing::SmallInstanceSpec spec;
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    CAPTURE(seed);
    spec.papers = 3 + static_cast<int>(seed % 6);
    spec.reviewers = 3 + static_cast<int>((seed * 7) % 6);
    const Instance inst = testing::random_small_instance(seed, spec);
    const double oracle = testing::best_matching_value(inst);
    const AssignmentProgram prog = build_program(inst, preset(Mode::kDefault));
    const SolveResult r = solve(prog.lp);
    CheckCertificate(prog.lp, r, 1e-6);
    CHECK(std::fabs(r.objective - oracle) <= 1e-6 * std::max(1.0, oracle));
  }
}

TEST_CASE("solves are deterministic and backend independent") {
  GenConfig cfg;
  cfg.n_papers = 40;
  cfg.n_reviewers = 44;
  cfg.seed = 21;
  const Instance inst = generate(cfg);
  const AssignmentProgram prog = build_program(inst, preset(Mode::kRamp));
  const SolveResult a = solve(prog.lp);
  const SolveResult b = solve(prog.lp);
  CheckCertificate(prog.lp, a, 1e-5);
  CHECK(a.x == b.x);
  CHECK(a.stats.iterations == b.stats.iterations);
  if (kernels::avx2_table() != nullptr) {
    const kernels::Backend before = kernels::active().backend;
    kernels::select(kernels::Backend::kScalar);
    const SolveResult s = solve(prog.lp);
    kernels::select(kernels::Backend::kAvx2);
    const SolveResult v = solve(prog.lp);
    kernels::select(before);
    CHECK(s.x == v.x);
  }
  SolverOptions two;
  two.threads = 2;
  const SolveResult t = solve(prog.lp, two);
  CHECK(t.x == a.x);
}

TEST_CASE("iteration limit is reported") {
  GenConfig cfg;
  cfg.n_papers = 30;
  cfg.n_reviewers = 33;
  const Instance inst = generate(cfg);
  const AssignmentProgram prog = build_program(inst, preset(Mode::kRamp));
  SolverOptions opts;
  opts.max_iters = 10;
  CHECK(solve(prog.lp, opts).status == SolveStatus::kIterationLimit);
}

}  // namespace
}  // namespace rampmatch
