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

// rampmatch: generate | assign | sweep | compare
//
// Exit codes: 0 success, 1 invalid input or solver failure, 2 infeasible
// instance. Failures print a JSON object {"error", "message", "hint"} on
// stdout.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rampmatch/instance_io.hpp"
#include "rampmatch/lp_format.hpp"
#include "rampmatch/metrics.hpp"
#include "rampmatch/pipeline.hpp"
#include "rampmatch/synthgen.hpp"

namespace {

using namespace rampmatch;

struct RunFlags {
  std::string instance;
  std::string config;
  std::string out = "out";
  std::string mode;
  double q = 0, f_a = 0, f_b = 0;
  double lambda_div = 0, lambda_co = 0, lambda_cyc = 0, lambda_sen = 0;
  double delta = 0;
  int k_paper = 0, k_rev = 0;
  std::string seniority;
  bool bid_filter = false;
  std::string sample_mode;
  std::uint64_t seed = 0;
  int num_samples = 0;
  int jobs = 0;
  bool diversity_raw = false;
  bool no_linearize = false;
  std::string export_lp;
  std::string run_id;
  double solver_tol = 0;
  std::int64_t solver_max_iters = 0;
  int solver_threads = 0;
  bool solver_equilibrate = false;

  std::vector<CLI::Option*> hp_options;
  CLI::Option *o_mode = nullptr, *o_q = nullptr, *o_fa = nullptr,
              *o_fb = nullptr, *o_div = nullptr, *o_co = nullptr,
              *o_cyc = nullptr, *o_sen = nullptr, *o_delta = nullptr,
              *o_kp = nullptr, *o_kr = nullptr, *o_seniority = nullptr,
              *o_filter = nullptr, *o_sample = nullptr, *o_seed = nullptr,
              *o_samples = nullptr, *o_jobs = nullptr, *o_raw = nullptr,
              *o_nolin = nullptr, *o_export = nullptr, *o_run_id = nullptr,
              *o_tol = nullptr, *o_iters = nullptr, *o_threads = nullptr,
              *o_equil = nullptr, *o_instance = nullptr;
};

void AddRunFlags(CLI::App* app, RunFlags& f, bool with_mode_and_lambdas) {
  f.o_instance = app->add_option("--instance", f.instance, "Instance JSON");
  app->add_option("--config", f.config, "Run config (run.json schema)");
  app->add_option("--out", f.out, "Output directory");
  if (with_mode_and_lambdas) {
    f.o_mode = app->add_option("--mode", f.mode, "default|plra|pm|ramp");
    f.o_q = app->add_option("--q", f.q, "Marginal cap Q");
    f.o_fa = app->add_option("--f-a", f.f_a, "Perturbation f(x) = a x - b x^2");
    f.o_fb = app->add_option("--f-b", f.f_b, "Perturbation f(x) = a x - b x^2");
    f.o_div = app->add_option("--lambda-div", f.lambda_div, "Diversity weight");
    f.o_co = app->add_option("--lambda-co", f.lambda_co, "Coauthor weight");
    f.o_cyc = app->add_option("--lambda-cyc", f.lambda_cyc, "2-cycle weight");
    f.o_filter = app->add_option("--coauthor-bid-filter", f.bid_filter,
                                 "Restrict coauthor terms to positive bids");
  }
  f.o_sen = app->add_option("--lambda-sen", f.lambda_sen,
                            "Seniority weight (soft seniority)");
  f.o_delta = app->add_option("--delta", f.delta, "PWL breakpoint spacing");
  f.o_kp = app->add_option("--k-paper", f.k_paper, "Reviewers kept per paper");
  f.o_kr = app->add_option("--k-rev", f.k_rev, "Papers kept per reviewer");
  f.o_seniority =
      app->add_option("--seniority", f.seniority, "off|soft|two-stage");
  f.o_sample = app->add_option("--sample-mode", f.sample_mode,
                               "vanilla|attribute");
  f.o_seed = app->add_option("--seed", f.seed, "Sampling seed");
  f.o_samples =
      app->add_option("--num-samples", f.num_samples, "Monte Carlo samples");
  f.o_jobs = app->add_option("--jobs", f.jobs, "Concurrent samples/grid points");
  f.o_raw = app->add_flag("--diversity-raw", f.diversity_raw,
                          "Report distinct regions without dividing by demand");
  f.o_nolin = app->add_flag("--no-linearize", f.no_linearize,
                            "Solve concave terms exactly instead of by PWL");
  f.o_export = app->add_option("--export-lp", f.export_lp,
                               "Write the LP text to this file in --out");
  f.o_run_id = app->add_option("--run-id", f.run_id, "Run identifier");
  f.o_tol = app->add_option("--solver-tol", f.solver_tol, "Solver tolerance");
  f.o_iters = app->add_option("--solver-max-iters", f.solver_max_iters,
                              "Solver iteration limit");
  f.o_threads =
      app->add_option("--solver-threads", f.solver_threads, "Solver threads");
  f.o_equil = app->add_flag("--solver-equilibrate", f.solver_equilibrate,
                            "Ruiz equilibration before preconditioning");
}

bool Given(const CLI::Option* o) { return o != nullptr && o->count() > 0; }

// Preset < config file < flags.
RunConfig Resolve(const RunFlags& f) {
  RunConfig cfg;
  const bool mode_flag = Given(f.o_mode);
  cfg.hp = preset(mode_flag ? parse_mode(f.mode) : Mode::kRamp);
  if (!f.config.empty()) {
    cfg = run_config_from_json(read_file(f.config), cfg);
    if (mode_flag && cfg.hp.mode != parse_mode(f.mode)) {
      cfg.hp = preset(parse_mode(f.mode));
    }
  }
  Hyperparameters& hp = cfg.hp;
  if (Given(f.o_instance)) cfg.instance = f.instance;
  if (Given(f.o_q)) hp.q = f.q;
  if (Given(f.o_fa)) hp.f.a = f.f_a;
  if (Given(f.o_fb)) hp.f.b = f.f_b;
  if (Given(f.o_div)) hp.lambda_div = f.lambda_div;
  if (Given(f.o_co)) hp.lambda_co = f.lambda_co;
  if (Given(f.o_cyc)) hp.lambda_cyc = f.lambda_cyc;
  if (Given(f.o_sen)) hp.lambda_sen = f.lambda_sen;
  if (Given(f.o_delta)) hp.delta = f.delta;
  if (Given(f.o_kp)) hp.k_paper = f.k_paper;
  if (Given(f.o_kr)) hp.k_rev = f.k_rev;
  if (Given(f.o_seniority)) hp.seniority = parse_seniority_mode(f.seniority);
  if (Given(f.o_filter)) hp.coauthor_bid_filter = f.bid_filter;
  if (Given(f.o_sample)) cfg.sample_mode = parse_sample_mode(f.sample_mode);
  if (Given(f.o_seed)) cfg.seed = f.seed;
  if (Given(f.o_samples)) cfg.num_samples = f.num_samples;
  if (Given(f.o_jobs)) cfg.jobs = f.jobs;
  if (Given(f.o_raw)) cfg.diversity_raw = f.diversity_raw;
  if (Given(f.o_nolin)) cfg.linearize = !f.no_linearize;
  if (Given(f.o_export)) cfg.export_lp = f.export_lp;
  if (Given(f.o_run_id)) cfg.run_id = f.run_id;
  if (Given(f.o_tol)) cfg.solver.tol = f.solver_tol;
  if (Given(f.o_iters)) cfg.solver.max_iters = f.solver_max_iters;
  if (Given(f.o_threads)) cfg.solver.threads = f.solver_threads;
  if (Given(f.o_equil)) cfg.solver.equilibrate = f.solver_equilibrate;
  if (cfg.instance.empty()) throw Error("no instance given (--instance)");
  if (cfg.jobs < 1) throw Error("--jobs must be >= 1");
  validate_hyperparameters(hp);
  return cfg;
}

int Fail(const std::string& kind, const std::string& message,
         const std::string& hint, const std::string& dir) {
  nlohmann::ordered_json j;
  j["error"] = kind;
  j["message"] = message;
  j["hint"] = hint;
  const std::string text = j.dump() + "\n";
  std::cout << text;
  if (!dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (!ec) {
      try {
        write_file((std::filesystem::path(dir) / "error.json").string(), text);
      } catch (const Error&) {
      }
    }
  }
  return kind == "infeasible" ? 2 : 1;
}

SweepGrid ParseGrid(const std::vector<std::string>& specs) {
  SweepGrid grid;
  for (const std::string& spec : specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw Error("grid entry must look like name=v1,v2,...: " + spec);
    }
    std::vector<double> values;
    std::string rest = spec.substr(eq + 1);
    std::size_t at = 0;
    while (at <= rest.size() && !rest.empty()) {
      const auto comma = rest.find(',', at);
      const std::string item =
          rest.substr(at, comma == std::string::npos ? std::string::npos
                                                     : comma - at);
      try {
        std::size_t used = 0;
        values.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw Error("bad grid value '" + item + "' in " + spec);
      }
      if (comma == std::string::npos) break;
      at = comma + 1;
    }
    grid.emplace_back(spec.substr(0, eq), std::move(values));
  }
  return grid;
}

int CmdGenerate(const GenConfig& base, const std::string& preset_name,
                const CLI::App& cmd, const std::string& out) {
  GenConfig cfg = preset_name.empty() ? base : gen_preset(preset_name);
  // Explicit flags override the preset.
  if (!preset_name.empty()) {
    if (cmd.count("--papers")) cfg.n_papers = base.n_papers;
    if (cmd.count("--reviewers")) cfg.n_reviewers = base.n_reviewers;
    if (cmd.count("--demand")) cfg.demand = base.demand;
    if (cmd.count("--capacity")) cfg.capacity = base.capacity;
    if (cmd.count("--regions")) cfg.n_regions = base.n_regions;
    if (cmd.count("--senior-fraction")) cfg.senior_fraction = base.senior_fraction;
    if (cmd.count("--collusion-rate")) cfg.collusion_rate = base.collusion_rate;
    if (cmd.count("--coauthor-mean")) cfg.coauthor_mean = base.coauthor_mean;
    if (cmd.count("--authored-mean")) cfg.authored_mean = base.authored_mean;
    if (cmd.count("--conflict-scale")) cfg.conflict_scale = base.conflict_scale;
    if (cmd.count("--bid-mean")) cfg.bid_mean = base.bid_mean;
    if (cmd.count("--bid-sd")) cfg.bid_sd = base.bid_sd;
    if (cmd.count("--k-paper")) cfg.k_paper = base.k_paper;
    if (cmd.count("--k-rev")) cfg.k_rev = base.k_rev;
  }
  cfg.seed = base.seed;
  GenStats stats;
  const Instance inst = generate(cfg, &stats);
  write_instance(inst, out);
  std::fprintf(stderr,
               "generated %d papers, %d reviewers, %zu similarity entries, "
               "%zu bids, %zu conflicts; mean affinity %.3f before and %.3f "
               "after truncation\n",
               inst.num_papers(), inst.num_reviewers(), inst.similarity.size(),
               inst.bids.size(), inst.conflicts.size(),
               stats.pre_truncation_mean, stats.post_truncation_mean);
  return 0;
}

int CmdAssign(const RunFlags& flags) {
  const RunConfig cfg = Resolve(flags);
  const Instance inst = read_instance(cfg.instance);
  const RunResult result = run_assign(inst, cfg);
  write_run_outputs(inst, cfg, result, flags.out);
  std::cout << metrics_table({result.metrics});
  return 0;
}

int CmdSweep(const RunFlags& flags, const std::vector<std::string>& specs) {
  const RunConfig cfg = Resolve(flags);
  const SweepGrid grid = ParseGrid(specs);
  expand_grid(grid);
  const Instance inst = read_instance(cfg.instance);
  const auto rows = run_sweep(inst, cfg, grid);
  std::error_code ec;
  std::filesystem::create_directories(flags.out, ec);
  write_file((std::filesystem::path(flags.out) / "sweep.csv").string(),
             sweep_csv(grid, rows));
  std::vector<MetricsReport> reports;
  for (const SweepRow& row : rows) {
    MetricsReport r = row.metrics;
    r.mode.clear();
    for (const auto& [name, value] : row.point) {
      if (!r.mode.empty()) r.mode += ' ';
      r.mode += name.substr(0, 3) + "=" + format_double(value);
    }
    if (!row.ok) r.mode += " FAILED";
    reports.push_back(r);
  }
  std::cout << metrics_table(reports);
  return 0;
}

int CmdCompare(const RunFlags& flags) {
  RunConfig base = Resolve(flags);
  const Instance inst = read_instance(base.instance);
  std::vector<MetricsReport> reports;
  std::string csv = metrics_csv_header() + "\n";
  double reference = 0.0;
  for (Mode mode : {Mode::kDefault, Mode::kPlra, Mode::kPm, Mode::kRamp}) {
    RunConfig cfg = base;
    const Hyperparameters shared = base.hp;
    cfg.hp = preset(mode);
    cfg.hp.delta = shared.delta;
    cfg.hp.k_paper = shared.k_paper;
    cfg.hp.k_rev = shared.k_rev;
    cfg.hp.lambda_sen = shared.lambda_sen;
    cfg.hp.seniority = shared.seniority;
    cfg.run_id = base.run_id + "_" + std::string(mode_name(mode));
    cfg.export_lp.clear();
    const RunResult result = run_assign(inst, cfg, reference);
    if (mode == Mode::kDefault) reference = result.reference;
    write_run_outputs(inst, cfg, result,
                      (std::filesystem::path(flags.out) / mode_name(mode)).string());
    reports.push_back(result.metrics);
    csv += metrics_csv_row(result.metrics) + "\n";
  }
  write_file((std::filesystem::path(flags.out) / "compare.csv").string(), csv);
  std::cout << metrics_table(reports);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized reviewer assignment with soft constraints"};
  app.require_subcommand(1);

  GenConfig gen;
  std::string gen_preset_name, gen_out = "instance.json";
  CLI::App* g = app.add_subcommand("generate", "Generate a synthetic instance");
  g->add_option("--papers", gen.n_papers, "Number of papers");
  g->add_option("--reviewers", gen.n_reviewers, "Number of reviewers");
  g->add_option("--seed", gen.seed, "Generator seed");
  g->add_option("--out", gen_out, "Output path");
  g->add_option("--preset", gen_preset_name,
                "large|s2orc-scale|aamas-scale|iclr-scale");
  g->add_option("--demand", gen.demand, "Reviews per paper");
  g->add_option("--capacity", gen.capacity, "Reviewer capacity (0: auto)");
  g->add_option("--regions", gen.n_regions, "Number of regions");
  g->add_option("--senior-fraction", gen.senior_fraction, "Share of seniors");
  g->add_option("--collusion-rate", gen.collusion_rate,
                "Share of reviewers bidding on their coauthors' papers");
  g->add_option("--coauthor-mean", gen.coauthor_mean, "Mean extra group size");
  g->add_option("--authored-mean", gen.authored_mean, "Mean papers authored");
  g->add_option("--conflict-scale", gen.conflict_scale, "Mean extra conflicts");
  g->add_option("--bid-mean", gen.bid_mean, "Mean bids per reviewer");
  g->add_option("--bid-sd", gen.bid_sd, "Bid count standard deviation");
  g->add_option("--k-paper", gen.k_paper, "Truncation: reviewers per paper");
  g->add_option("--k-rev", gen.k_rev, "Truncation: papers per reviewer");

  RunFlags assign_flags;
  CLI::App* a = app.add_subcommand("assign", "Solve, sample and evaluate");
  AddRunFlags(a, assign_flags, true);

  RunFlags sweep_flags;
  std::vector<std::string> grid_specs;
  CLI::App* s = app.add_subcommand("sweep", "Run a hyperparameter grid");
  AddRunFlags(s, sweep_flags, true);
  s->add_option("--grid", grid_specs, "name=v1,v2,... (repeatable)")
      ->required();

  RunFlags compare_flags;
  CLI::App* c = app.add_subcommand("compare", "default vs plra vs pm vs ramp");
  AddRunFlags(c, compare_flags, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  std::string out_dir;
  try {
    if (g->parsed()) return CmdGenerate(gen, gen_preset_name, *g, gen_out);
    if (a->parsed()) {
      out_dir = assign_flags.out;
      return CmdAssign(assign_flags);
    }
    if (s->parsed()) {
      out_dir = sweep_flags.out;
      return CmdSweep(sweep_flags, grid_specs);
    }
    if (c->parsed()) {
      out_dir = compare_flags.out;
      return CmdCompare(compare_flags);
    }
  } catch (const InfeasibleError& e) {
    return Fail("infeasible", e.what(), e.hint(), out_dir);
  } catch (const Error& e) {
    return Fail("error", e.what(), "", out_dir);
  } catch (const std::exception& e) {
    return Fail("error", e.what(), "", out_dir);
  }
  return 0;
}
