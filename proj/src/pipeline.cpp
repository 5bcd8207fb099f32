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

#include "rampmatch/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <thread>

#include "json.hpp"
#include "rampmatch/instance_io.hpp"
#include "rampmatch/lp_format.hpp"
#include "solve_stage.hpp"

namespace rampmatch {
namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads.
template <typename Fn>
void ParallelFor(int n, int jobs, Fn fn) {
  jobs = std::clamp(jobs, 1, std::max(1, n));
  if (jobs == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> threads;
  for (int t = 0; t < jobs; ++t) {
    threads.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

Json HyperparametersJson(const Hyperparameters& hp) {
  Json j;
  j["mode"] = std::string(mode_name(hp.mode));
  j["q"] = hp.q;
  j["f"] = {{"a", hp.f.a}, {"b", hp.f.b}};
  j["lambda_div"] = hp.lambda_div;
  j["lambda_co"] = hp.lambda_co;
  j["lambda_cyc"] = hp.lambda_cyc;
  j["lambda_sen"] = hp.lambda_sen;
  j["delta"] = hp.delta;
  j["k_paper"] = hp.k_paper;
  j["k_rev"] = hp.k_rev;
  j["seniority"] = std::string(seniority_mode_name(hp.seniority));
  j["coauthor_bid_filter"] = hp.coauthor_bid_filter;
  return j;
}

Hyperparameters HyperparametersFrom(const Json& j, Hyperparameters hp) {
  if (j.contains("mode")) {
    hp = preset(parse_mode(j.at("mode").get<std::string>()));
  }
  if (j.contains("q")) hp.q = j.at("q").get<double>();
  if (j.contains("f")) {
    const Json& f = j.at("f");
    if (f.contains("a")) hp.f.a = f.at("a").get<double>();
    if (f.contains("b")) hp.f.b = f.at("b").get<double>();
  }
  if (j.contains("lambda_div")) hp.lambda_div = j.at("lambda_div").get<double>();
  if (j.contains("lambda_co")) hp.lambda_co = j.at("lambda_co").get<double>();
  if (j.contains("lambda_cyc")) hp.lambda_cyc = j.at("lambda_cyc").get<double>();
  if (j.contains("lambda_sen")) hp.lambda_sen = j.at("lambda_sen").get<double>();
  if (j.contains("delta")) hp.delta = j.at("delta").get<double>();
  if (j.contains("k_paper")) hp.k_paper = j.at("k_paper").get<int>();
  if (j.contains("k_rev")) hp.k_rev = j.at("k_rev").get<int>();
  if (j.contains("seniority")) {
    hp.seniority = parse_seniority_mode(j.at("seniority").get<std::string>());
  }
  if (j.contains("coauthor_bid_filter")) {
    hp.coauthor_bid_filter = j.at("coauthor_bid_filter").get<bool>();
  }
  return hp;
}

Json RunConfigJson(const RunConfig& cfg) {
  Json j;
  j["run_id"] = cfg.run_id;
  j["instance"] = cfg.instance;
  j["hyperparameters"] = HyperparametersJson(cfg.hp);
  j["solver"] = {{"tol", cfg.solver.tol},
                 {"max_iters", cfg.solver.max_iters},
                 {"threads", cfg.solver.threads},
                 {"equilibrate", cfg.solver.equilibrate},
                 {"check_every", cfg.solver.check_every}};
  j["sample_mode"] = std::string(sample_mode_name(cfg.sample_mode));
  j["seed"] = cfg.seed;
  j["num_samples"] = cfg.num_samples;
  j["jobs"] = cfg.jobs;
  j["diversity_raw"] = cfg.diversity_raw;
  j["linearize"] = cfg.linearize;
  j["export_lp"] = cfg.export_lp;
  return j;
}

}  // namespace

namespace internal {

FractionalAssignment solve_stage(const Instance& inst,
                                 const Hyperparameters& hp,
                                 const ProgramScope& scope,
                                 const SolveRequest& request, SolveInfo& info) {
  const auto t0 = Clock::now();
  BuildOptions options;
  options.linearize = request.linearize;
  options.scope = scope;
  AssignmentProgram prog = build_program(inst, hp, options);
  const auto t1 = Clock::now();
  const SolveResult res = solve(prog.lp, request.solver);
  const auto t2 = Clock::now();

  ++info.stages;
  info.variables += prog.lp.num_variables();
  info.rows += prog.lp.num_rows();
  info.iterations += res.stats.iterations;
  info.build_seconds += Seconds(t0, t1);
  info.solve_seconds += Seconds(t1, t2);
  info.max_primal_residual =
      std::max(info.max_primal_residual, res.stats.primal_residual);
  info.max_relative_gap = std::max(info.max_relative_gap, res.stats.relative_gap);

  switch (res.status) {
    case SolveStatus::kOptimal:
      break;
    case SolveStatus::kInfeasible:
      throw InfeasibleError(res.message, res.infeasible_hint);
    case SolveStatus::kUnbounded:
      throw Error("program is unbounded: " + res.message);
    case SolveStatus::kIterationLimit:
      throw Error("solver stopped at the iteration limit after " +
                  std::to_string(res.stats.iterations) +
                  " iterations (primal residual " +
                  std::to_string(res.stats.primal_residual) + ", gap " +
                  std::to_string(res.stats.relative_gap) + ")");
  }
  FractionalAssignment frac = extract_fractional(inst, prog, res.x, hp.q);
  frac.objective = res.objective;
  info.last_objective = res.objective;
  if (request.keep_program) info.last_program = std::move(prog.lp);
  return frac;
}

}  // namespace internal

FractionalAssignment extract_fractional(const Instance& inst,
                                        const AssignmentProgram& prog,
                                        const std::vector<double>& x,
                                        double q) {
  const SparsifiedSupport& s = prog.support;
  FractionalAssignment frac;
  std::vector<double> vals(s.size(), 0.0);
  for (int p = 0; p < inst.num_papers(); ++p) {
    const int b = s.paper_start[p], e = s.paper_start[p + 1];
    std::vector<double> v(e - b);
    double sum = 0.0;
    for (int j = b; j < e; ++j) {
      double xv = std::clamp(x[j], 0.0, q);
      if (xv <= kExtractSnap) xv = 0.0;
      if (xv >= q - kExtractSnap) xv = q;
      v[j - b] = xv;
      sum += xv;
    }
    const double diff = prog.scope.demand_of(inst, p) - sum;
    if (diff != 0.0) {
      // Only entries already in the support absorb the correction.
      double room = 0.0;
      for (double xv : v) {
        if (xv > 0.0) room += diff > 0.0 ? q - xv : xv;
      }
      if (room > 0.0) {
        const double share = std::min(1.0, std::fabs(diff) / room);
        for (double& xv : v) {
          if (xv == 0.0) continue;
          xv += diff > 0.0 ? share * (q - xv) : -share * xv;
          xv = std::clamp(xv, 0.0, q);
        }
      }
    }
    std::copy(v.begin(), v.end(), vals.begin() + b);
  }

  // Capacity repair: the solver meets loads only to its tolerance. Excess
  // on a reviewer moves to other reviewers of the same paper with slack.
  const int n_rev = inst.num_reviewers();
  std::vector<double> cap(n_rev), load(n_rev, 0.0);
  for (int r = 0; r < n_rev; ++r) cap[r] = inst.reviewers[r].capacity;
  for (const FractionalEntry& f : prog.scope.fixed) cap[f.reviewer] -= f.x;
  std::vector<std::vector<int>> by_reviewer(n_rev);
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (vals[j] <= 0.0) continue;
    load[s.pairs[j].reviewer] += vals[j];
    by_reviewer[s.pairs[j].reviewer].push_back(static_cast<int>(j));
  }
  for (int r = 0; r < n_rev; ++r) {
    double excess = load[r] - cap[r];
    for (int j : by_reviewer[r]) {
      if (excess <= 0.0) break;
      const int p = s.pairs[j].paper;
      for (int k = s.paper_start[p]; k < s.paper_start[p + 1] && excess > 0.0;
           ++k) {
        const int r2 = s.pairs[k].reviewer;
        if (k == j || vals[k] <= 0.0) continue;
        const double slack = cap[r2] - load[r2];
        const double move =
            std::min({excess, vals[j], q - vals[k], slack});
        if (move <= 0.0) continue;
        vals[j] -= move;
        vals[k] += move;
        load[r] -= move;
        load[r2] += move;
        excess -= move;
      }
    }
  }

  for (std::size_t j = 0; j < s.size(); ++j) {
    if (vals[j] > 0.0) {
      frac.entries.push_back({s.pairs[j].paper, s.pairs[j].reviewer, vals[j]});
    }
  }
  return frac;
}

FractionalAssignment solve_fractional(const Instance& inst,
                                      const Hyperparameters& hp,
                                      const SolveRequest& request,
                                      SolveInfo* info) {
  validate_hyperparameters(hp);
  SolveInfo local;
  SolveInfo& out = info != nullptr ? *info : local;
  FractionalAssignment frac;
  if (hp.seniority == SeniorityMode::kTwoStage) {
    frac = two_stage_seniority(inst, hp, request, &out);
  } else {
    frac = internal::solve_stage(inst, hp, ProgramScope{}, request, out);
  }
  if (hp.mode == Mode::kDefault) purify(inst, frac);
  return frac;
}

void purify(const Instance& inst, FractionalAssignment& frac) {
  RoundingState state(inst, frac);
  std::vector<double> sim(state.num_edges());
  for (int e = 0; e < state.num_edges(); ++e) {
    sim[e] = inst.similarity_of(state.edge_paper(e), state.edge_reviewer(e))
                 .value_or(0.0);
  }
  while (!state.done()) {
    const Chain chain = state.find_chain(SampleMode::kVanilla);
    double gain = 0.0;
    for (std::size_t i = 0; i < chain.edges.size(); ++i) {
      gain += i % 2 == 0 ? sim[chain.edges[i]] : -sim[chain.edges[i]];
    }
    state.apply(chain, state.rotation(chain), gain >= 0.0);
  }
  std::vector<FractionalEntry> entries;
  for (const PairKey& k : state.assigned()) {
    entries.push_back({k.paper, k.reviewer, 1.0});
  }
  frac.entries = std::move(entries);
  frac.objective = raw_similarity(inst, frac);
}

double reference_optimum(const Instance& inst, int k_paper, int k_rev,
                         const SolverOptions& solver) {
  Hyperparameters hp = preset(Mode::kDefault);
  hp.k_paper = k_paper;
  hp.k_rev = k_rev;
  SolveRequest request;
  request.solver = solver;
  return raw_similarity(inst, solve_fractional(inst, hp, request));
}

std::string run_config_to_json(const RunConfig& cfg) {
  return RunConfigJson(cfg).dump(2) + "\n";
}

RunConfig run_config_from_json(const std::string& text, const RunConfig& base) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("run config: ") + e.what());
  }
  if (doc.contains("config")) doc = doc.at("config");
  if (!doc.is_object()) throw Error("run config: expected a JSON object");
  RunConfig cfg = base;
  try {
    if (doc.contains("run_id")) cfg.run_id = doc.at("run_id").get<std::string>();
    if (doc.contains("instance")) cfg.instance = doc.at("instance").get<std::string>();
    if (doc.contains("hyperparameters")) {
      cfg.hp = HyperparametersFrom(doc.at("hyperparameters"), cfg.hp);
    }
    if (doc.contains("solver")) {
      const Json& s = doc.at("solver");
      if (s.contains("tol")) cfg.solver.tol = s.at("tol").get<double>();
      if (s.contains("max_iters")) {
        cfg.solver.max_iters = s.at("max_iters").get<std::int64_t>();
      }
      if (s.contains("threads")) cfg.solver.threads = s.at("threads").get<int>();
      if (s.contains("equilibrate")) {
        cfg.solver.equilibrate = s.at("equilibrate").get<bool>();
      }
      if (s.contains("check_every")) {
        cfg.solver.check_every = s.at("check_every").get<int>();
      }
    }
    if (doc.contains("sample_mode")) {
      cfg.sample_mode = parse_sample_mode(doc.at("sample_mode").get<std::string>());
    }
    if (doc.contains("seed")) cfg.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("num_samples")) {
      cfg.num_samples = doc.at("num_samples").get<int>();
    }
    if (doc.contains("jobs")) cfg.jobs = doc.at("jobs").get<int>();
    if (doc.contains("diversity_raw")) {
      cfg.diversity_raw = doc.at("diversity_raw").get<bool>();
    }
    if (doc.contains("linearize")) cfg.linearize = doc.at("linearize").get<bool>();
    if (doc.contains("export_lp")) {
      cfg.export_lp = doc.at("export_lp").get<std::string>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("run config: ") + e.what());
  }
  return cfg;
}

RunResult run_assign(const Instance& inst, const RunConfig& cfg,
                     double reference) {
  validate_hyperparameters(cfg.hp);
  if (cfg.num_samples < 1) throw Error("num_samples must be >= 1");
  RunResult res;
  SolveRequest request;
  request.solver = cfg.solver;
  request.linearize = cfg.linearize;
  request.keep_program = !cfg.export_lp.empty();
  res.frac = solve_fractional(inst, cfg.hp, request, &res.info);
  res.timings.build = res.info.build_seconds;
  res.timings.solve = res.info.solve_seconds;

  res.samples.resize(cfg.num_samples);
  std::vector<double> sample_seconds(cfg.num_samples, 0.0);
  ParallelFor(cfg.num_samples, cfg.jobs, [&](int i) {
    const auto t0 = Clock::now();
    res.samples[i] = sample(inst, res.frac, cfg.sample_mode,
                            stream_seed(cfg.seed, static_cast<std::uint64_t>(i)));
    sample_seconds[i] = Seconds(t0, Clock::now());
    const auto violations = check_integral(inst, res.frac, res.samples[i]);
    if (!violations.empty()) {
      throw Error("sampled assignment violates " + violations.front());
    }
  });
  for (double s : sample_seconds) res.timings.sample += s;
  res.timings.sample /= cfg.num_samples;

  if (reference > 0.0) {
    res.reference = reference;
  } else if (cfg.hp.mode == Mode::kDefault &&
             cfg.hp.seniority == SeniorityMode::kOff) {
    res.reference = raw_similarity(inst, res.frac);
  } else {
    const auto t0 = Clock::now();
    res.reference =
        reference_optimum(inst, cfg.hp.k_paper, cfg.hp.k_rev, cfg.solver);
    res.timings.reference = Seconds(t0, Clock::now());
  }

  const EvaluationContext ctx =
      make_evaluation_context(inst, res.reference, cfg.diversity_raw);
  res.metrics = evaluate(ctx, res.frac, res.samples);
  res.metrics.run_id = cfg.run_id;
  res.metrics.mode = std::string(mode_name(cfg.hp.mode));
  res.metrics.seed = cfg.seed;
  res.metrics.runtime_s = res.timings.runtime();
  return res;
}

std::string fractional_csv(const Instance& inst,
                           const FractionalAssignment& frac) {
  std::string out = "paper_id,reviewer_id,x\n";
  for (const FractionalEntry& e : frac.entries) {
    out += CsvField(inst.papers[e.paper].id) + ',' +
           CsvField(inst.reviewers[e.reviewer].id) + ',' + format_double(e.x) +
           '\n';
  }
  return out;
}

std::string assignment_csv(const Instance& inst,
                           const IntegralAssignment& assignment) {
  std::string out = "paper_id,reviewer_id\n";
  for (const PairKey& k : assignment.pairs) {
    out += CsvField(inst.papers[k.paper].id) + ',' +
           CsvField(inst.reviewers[k.reviewer].id) + '\n';
  }
  return out;
}

std::string run_json(const RunConfig& cfg, const RunResult& result) {
  Json j;
  j["config"] = RunConfigJson(cfg);
  j["reference_optimum"] = result.reference;
  j["solve"] = {{"stages", result.info.stages},
                {"variables", result.info.variables},
                {"rows", result.info.rows},
                {"iterations", result.info.iterations},
                {"max_primal_residual", result.info.max_primal_residual},
                {"max_relative_gap", result.info.max_relative_gap},
                {"lp_objective", result.info.last_objective}};
  j["timings"] = {{"build_s", result.timings.build},
                  {"solve_s", result.timings.solve},
                  {"sample_s", result.timings.sample},
                  {"reference_s", result.timings.reference},
                  {"runtime_s", result.timings.runtime()}};
  return j.dump(2) + "\n";
}

void write_run_outputs(const Instance& inst, const RunConfig& cfg,
                       const RunResult& result, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create " + dir + ": " + ec.message());
  const fs::path root(dir);
  write_file((root / "fractional.csv").string(), fractional_csv(inst, result.frac));
  write_file((root / "assignment.csv").string(),
             assignment_csv(inst, result.samples.front()));
  if (result.samples.size() > 1) {
    std::string all = "sample,paper_id,reviewer_id\n";
    for (std::size_t i = 0; i < result.samples.size(); ++i) {
      for (const PairKey& k : result.samples[i].pairs) {
        all += std::to_string(i) + ',' + CsvField(inst.papers[k.paper].id) +
               ',' + CsvField(inst.reviewers[k.reviewer].id) + '\n';
      }
    }
    write_file((root / "assignments.csv").string(), all);
  }
  write_file((root / "metrics.csv").string(),
             metrics_csv_header() + "\n" + metrics_csv_row(result.metrics) + "\n");
  write_file((root / "run.json").string(), run_json(cfg, result));
  if (!cfg.export_lp.empty()) {
    write_file((root / cfg.export_lp).string(),
               export_lp_text(result.info.last_program));
  }
}

void set_parameter(Hyperparameters& hp, const std::string& name, double value) {
  if (name == "lambda_div") {
    hp.lambda_div = value;
  } else if (name == "lambda_co") {
    hp.lambda_co = value;
  } else if (name == "lambda_cyc") {
    hp.lambda_cyc = value;
  } else if (name == "lambda_sen") {
    hp.lambda_sen = value;
  } else if (name == "q") {
    hp.q = value;
  } else if (name == "delta") {
    hp.delta = value;
  } else if (name == "f_b") {
    hp.f.b = value;
  } else {
    throw Error("unknown sweep parameter: " + name);
  }
}

std::vector<std::vector<std::pair<std::string, double>>> expand_grid(
    const SweepGrid& grid) {
  if (grid.empty()) throw Error("sweep grid is empty");
  for (const auto& [name, values] : grid) {
    if (values.empty()) throw Error("sweep parameter " + name + " has no values");
  }
  std::vector<std::vector<std::pair<std::string, double>>> out{{}};
  for (const auto& [name, values] : grid) {
    std::vector<std::vector<std::pair<std::string, double>>> next;
    for (const auto& prefix : out) {
      for (double v : values) {
        auto point = prefix;
        point.emplace_back(name, v);
        next.push_back(std::move(point));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::vector<SweepRow> run_sweep(const Instance& inst, const RunConfig& cfg,
                                const SweepGrid& grid) {
  const auto points = expand_grid(grid);
  const double reference =
      reference_optimum(inst, cfg.hp.k_paper, cfg.hp.k_rev, cfg.solver);
  std::vector<SweepRow> rows(points.size());
  RunConfig point_cfg = cfg;
  point_cfg.jobs = 1;
  point_cfg.export_lp.clear();
  ParallelFor(static_cast<int>(points.size()), cfg.jobs, [&](int i) {
    SweepRow& row = rows[i];
    row.point = points[i];
    RunConfig c = point_cfg;
    c.run_id = cfg.run_id + "_" + std::to_string(i);
    try {
      for (const auto& [name, value] : points[i]) set_parameter(c.hp, name, value);
      row.metrics = run_assign(inst, c, reference).metrics;
      row.ok = true;
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
      row.metrics.run_id = c.run_id;
      row.metrics.mode = std::string(mode_name(c.hp.mode));
      row.metrics.seed = c.seed;
    }
  });
  return rows;
}

std::string sweep_csv(const SweepGrid& grid, const std::vector<SweepRow>& rows) {
  std::string out;
  for (const auto& [name, values] : grid) out += name + ',';
  out += "status,error," + metrics_csv_header() + "\n";
  for (const SweepRow& row : rows) {
    for (const auto& [name, value] : row.point) out += format_double(value) + ',';
    out += row.ok ? "ok," : "failed,";
    out += CsvField(row.error) + ',';
    out += metrics_csv_row(row.metrics) + "\n";
  }
  return out;
}

}  // namespace rampmatch
