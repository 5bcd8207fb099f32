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

// Restarted PDHG on the saddle problem
//
//   min_x max_y  f(x) + y'Ax - I*(y),   I the indicator of [row_lo, row_hi].
//
// Steps: x+ = prox_{tau f}(x - tau A'y), y+ = prox_{sigma I*}(y + sigma A(2x+ - x)).
// Restarts follow the KKT-error rule with the averaged or current iterate
// as candidate; the primal weight is re-balanced at each restart.

#include "pdhg.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <functional>
#include <map>
#include <mutex>
#include <thread>

#include "rampmatch/kernels.hpp"

namespace rampmatch::solver {
namespace {

constexpr std::int64_t kRowsPerTask = 4096;
constexpr double kSufficient = 0.2;
constexpr double kNecessary = 0.8;
constexpr double kArtificial = 0.36;
constexpr double kRayTol = 1e-8;
// Consecutive restarts whose displacement is a ray before giving up.
constexpr int kRayConfirm = 2;

// Fixed-size worker pool. Work is split into tasks whose boundaries do not
// depend on the thread count, so results are identical for any count.
class Pool {
 public:
  explicit Pool(int threads) {
    for (int i = 1; i < threads; ++i) {
      workers_.emplace_back([this] { Loop(); });
    }
  }

  ~Pool() {
    {
      std::lock_guard<std::mutex> lock(mu_);
      stop_ = true;
    }
    wake_.notify_all();
    for (std::thread& t : workers_) t.join();
  }

  void Run(std::int64_t tasks, const std::function<void(std::int64_t)>& fn) {
    if (workers_.empty() || tasks <= 1) {
      for (std::int64_t i = 0; i < tasks; ++i) fn(i);
      return;
    }
    {
      std::lock_guard<std::mutex> lock(mu_);
      fn_ = &fn;
      tasks_ = tasks;
      next_.store(0);
      pending_ = static_cast<int>(workers_.size());
      ++generation_;
    }
    wake_.notify_all();
    Drain();
    std::unique_lock<std::mutex> lock(mu_);
    done_.wait(lock, [this] { return pending_ == 0; });
  }

 private:
  void Drain() {
    for (;;) {
      const std::int64_t i = next_.fetch_add(1);
      if (i >= tasks_) break;
      (*fn_)(i);
    }
  }

  void Loop() {
    std::uint64_t seen = 0;
    for (;;) {
      {
        std::unique_lock<std::mutex> lock(mu_);
        wake_.wait(lock, [&] { return stop_ || generation_ != seen; });
        if (stop_) return;
        seen = generation_;
      }
      Drain();
      std::lock_guard<std::mutex> lock(mu_);
      if (--pending_ == 0) done_.notify_one();
    }
  }

  std::vector<std::thread> workers_;
  std::mutex mu_;
  std::condition_variable wake_, done_;
  const std::function<void(std::int64_t)>* fn_ = nullptr;
  std::int64_t tasks_ = 0;
  std::atomic<std::int64_t> next_{0};
  int pending_ = 0;
  std::uint64_t generation_ = 0;
  bool stop_ = false;
};

struct Csr {
  std::vector<std::int64_t> start;
  std::vector<std::int32_t> idx;
  std::vector<double> val;
  std::int64_t rows() const { return static_cast<std::int64_t>(start.size()) - 1; }
};

// Prox of a convex PWL with slopes scale * g[0], scale * g[2], ...,
// scale * g[2 * kinks] and kinks inv * g[1], inv * g[3], .... The search starts at `piece` (the last answer) and walks toward
// the solution, which is unique, so the start only affects speed.
double ProxPwl(const double* g, int kinks, double scale, double inv, double z,
               double tau, double lo, double hi, int& piece) {
  const double ts = tau * scale;
  int i = piece;
  for (;;) {
    const double w = z - ts * g[2 * i];
    if (i > 0 && w <= g[2 * i - 1] * inv) {
      const double kink = g[2 * i - 1] * inv;
      --i;
      if (z - ts * g[2 * i] > kink) {
        piece = i;
        return std::clamp(kink, lo, hi);
      }
      continue;
    }
    if (i < kinks && w > g[2 * i + 1] * inv) {
      const double kink = g[2 * i + 1] * inv;
      ++i;
      if (z - ts * g[2 * i] <= kink) {
        piece = i;
        return std::clamp(kink, lo, hi);
      }
      continue;
    }
    piece = i;
    return std::clamp(w, lo, hi);
  }
}

// min over [lo, hi] of phi(x) + r x for a convex piecewise-linear phi.
double MinPwlPlusLinear(const ConvexPwl& f, double r, double lo, double hi) {
  double best = f(lo) + r * lo;
  for (double k : f.kink) {
    if (k > lo && k < hi) best = std::min(best, f(k) + r * k);
  }
  return std::min(best, f(hi) + r * hi);
}

struct Evaluation {
  double primal_inf = 0.0;
  double primal_2 = 0.0;
  double dual_inf = 0.0;
  double dual_2 = 0.0;
  double primal_obj = 0.0;
  double dual_obj = 0.0;
  double gap = 0.0;  // relative

  double Kkt(double omega) const {
    const double g = primal_obj - dual_obj;
    return std::sqrt(omega * primal_2 * primal_2 +
                     dual_2 * dual_2 / omega + g * g);
  }
};

class Engine {
 public:
  Engine(const Reduced& red, const SolverOptions& opts)
      : red_(red),
        opts_(opts),
        k_(kernels::active()),
        pool_(std::max(1, opts.threads)),
        n_(red.n),
        m_(red.m),
        nl_(red.n_linear) {
    BuildScaling();
  }

  PdhgOutput Run();

 private:
  void BuildScaling();
  void Spmv(const Csr& a, const double* x, double* y) {
    const std::int64_t rows = a.rows();
    const std::int64_t tasks = (rows + kRowsPerTask - 1) / kRowsPerTask;
    const std::function<void(std::int64_t)> fn = [&](std::int64_t t) {
      const std::size_t b = static_cast<std::size_t>(t * kRowsPerTask);
      const std::size_t e =
          static_cast<std::size_t>(std::min(rows, (t + 1) * kRowsPerTask));
      k_.spmv(a.start.data(), a.idx.data(), a.val.data(), b, e, x, y);
    };
    pool_.Run(tasks, fn);
  }
  double NormEstimate();
  void PrimalStep(const double* x, const double* aty, double tau, double* out);
  Evaluation Evaluate(const double* xs, const double* ys);
  bool Converged(const Evaluation& e) const {
    return e.primal_inf <= opts_.tol && e.dual_inf <= dual_tol_ &&
           e.gap <= opts_.tol;
  }
  void Unscale(const double* xs, const double* ys, PdhgOutput& out) const;
  bool PrimalRay(const double* dxs);
  bool DualRay(const double* dys);

  const Reduced& red_;
  const SolverOptions& opts_;
  const kernels::Table& k_;
  Pool pool_;
  const int n_, m_, nl_;

  Csr a_, at_;
  std::vector<double> d_, r_;  // column and row scaling
  std::vector<double> c_, lo_, hi_, rlo_, rhi_, quad_;
  // PWL columns share unscaled shapes (slope0, kink0, slope1, ..., slope_m)
  // up to a positive factor. pwl_shape_[k] < 0 for quadratic columns.
  int Shape(const ConvexPwl& f, double& factor);
  std::vector<double> shape_data_;
  std::vector<std::int64_t> shape_at_;
  std::vector<int> shape_kinks_;
  std::map<std::vector<double>, std::vector<int>> shapes_by_kinks_;
  std::vector<int> pwl_shape_;
  std::vector<double> pwl_scale_;
  std::vector<double> pwl_inv_;
  std::vector<int> pwl_piece_;
  std::vector<double> sm_, sn_;  // scratch
  double dual_tol_ = 0.0;
};

void Engine::BuildScaling() {
  a_.start = red_.row_start;
  a_.idx = red_.col;
  a_.val = red_.val;
  d_.assign(n_, 1.0);
  r_.assign(m_, 1.0);
  std::vector<double> colacc(n_), rowacc(m_);

  const auto apply = [&](bool use_max) {
    std::fill(colacc.begin(), colacc.end(), 0.0);
    std::fill(rowacc.begin(), rowacc.end(), 0.0);
    for (int i = 0; i < m_; ++i) {
      for (std::int64_t e = a_.start[i]; e < a_.start[i + 1]; ++e) {
        const double v = std::fabs(red_.val[e] * r_[i] * d_[a_.idx[e]]);
        if (use_max) {
          rowacc[i] = std::max(rowacc[i], v);
          colacc[a_.idx[e]] = std::max(colacc[a_.idx[e]], v);
        } else {
          rowacc[i] += v;
          colacc[a_.idx[e]] += v;
        }
      }
    }
    for (int i = 0; i < m_; ++i) {
      if (rowacc[i] > 0.0) r_[i] /= std::sqrt(rowacc[i]);
    }
    for (int j = 0; j < n_; ++j) {
      if (colacc[j] > 0.0) d_[j] /= std::sqrt(colacc[j]);
    }
  };
  if (opts_.equilibrate) {
    for (int it = 0; it < 10; ++it) apply(true);
  }
  apply(false);

  for (int i = 0; i < m_; ++i) {
    for (std::int64_t e = a_.start[i]; e < a_.start[i + 1]; ++e) {
      a_.val[e] = red_.val[e] * r_[i] * d_[a_.idx[e]];
    }
  }
  at_.start = red_.col_start;
  at_.idx = red_.row_idx;
  at_.val.resize(red_.tval.size());
  for (int j = 0; j < n_; ++j) {
    for (std::int64_t e = at_.start[j]; e < at_.start[j + 1]; ++e) {
      at_.val[e] = red_.tval[e] * r_[at_.idx[e]] * d_[j];
    }
  }

  c_.resize(n_);
  lo_.resize(n_);
  hi_.resize(n_);
  for (int j = 0; j < n_; ++j) {
    c_[j] = red_.c[j] * d_[j];
    lo_[j] = red_.lo[j] / d_[j];
    hi_[j] = red_.hi[j] / d_[j];
  }
  rlo_.resize(m_);
  rhi_.resize(m_);
  for (int i = 0; i < m_; ++i) {
    rlo_[i] = red_.row_lo[i] * r_[i];
    rhi_[i] = red_.row_hi[i] * r_[i];
  }
  quad_.resize(n_ - nl_);
  pwl_shape_.assign(n_ - nl_, -1);
  pwl_scale_.assign(n_ - nl_, 0.0);
  pwl_inv_.assign(n_ - nl_, 0.0);
  pwl_piece_.assign(n_ - nl_, 0);
  for (int k = 0; k < n_ - nl_; ++k) {
    const double d = d_[nl_ + k];
    quad_[k] = red_.quad[k] * d * d;
    if (red_.pwl[k]) {
      double factor = 1.0;
      pwl_shape_[k] = Shape(*red_.pwl[k], factor);
      pwl_scale_[k] = factor * d;
      pwl_inv_[k] = 1.0 / d;
    }
  }
  shapes_by_kinks_.clear();
  sm_.resize(m_);
  sn_.resize(n_);
  dual_tol_ = opts_.tol * (1.0 + (n_ > 0 ? k_.max_abs(red_.c.data(), n_) : 0.0));
}

int Engine::Shape(const ConvexPwl& f, double& factor) {
  constexpr double kShapeTol = 1e-13;
  double fmax = 0.0;
  for (double v : f.slope) fmax = std::max(fmax, std::fabs(v));
  std::vector<int>& candidates = shapes_by_kinks_[f.kink];
  for (int t : candidates) {
    const double* g = shape_data_.data() + shape_at_[t];
    const int m = shape_kinks_[t];
    int best = 0;
    for (int i = 1; i <= m; ++i) {
      if (std::fabs(g[2 * i]) > std::fabs(g[2 * best])) best = i;
    }
    const double a = g[2 * best] == 0.0 ? 1.0 : f.slope[best] / g[2 * best];
    if (!(a > 0.0)) continue;
    bool same = true;
    for (int i = 0; i <= m && same; ++i) {
      same = std::fabs(f.slope[i] - a * g[2 * i]) <= kShapeTol * fmax;
    }
    if (same) {
      factor = a;
      return t;
    }
  }
  const int t = static_cast<int>(shape_at_.size());
  shape_at_.push_back(static_cast<std::int64_t>(shape_data_.size()));
  shape_kinks_.push_back(static_cast<int>(f.kink.size()));
  for (std::size_t i = 0; i < f.kink.size(); ++i) {
    shape_data_.push_back(f.slope[i]);
    shape_data_.push_back(f.kink[i]);
  }
  shape_data_.push_back(f.slope.back());
  candidates.push_back(t);
  factor = 1.0;
  return t;
}

double Engine::NormEstimate() {
  if (n_ == 0 || m_ == 0) return 1.0;
  std::vector<double> v(n_), u(n_), w(m_);
  for (int j = 0; j < n_; ++j) v[j] = 1.0 + 0.1 * ((j * 7919) % 13) / 13.0;
  double vn = std::sqrt(k_.sum_squares(v.data(), n_));
  k_.scale(v.data(), 1.0 / vn, v.data(), n_);
  double lambda = 0.0;
  for (int it = 0; it < 500; ++it) {
    Spmv(a_, v.data(), w.data());
    Spmv(at_, w.data(), u.data());
    const double next = std::sqrt(k_.sum_squares(u.data(), n_));
    if (next == 0.0) return 1.0;
    k_.scale(u.data(), 1.0 / next, v.data(), n_);
    const bool done = it > 10 && std::fabs(next - lambda) <= 1e-6 * next;
    lambda = next;
    if (done) break;
  }
  return std::sqrt(lambda);
}

void Engine::PrimalStep(const double* x, const double* aty, double tau,
                        double* out) {
  k_.box_step(x, aty, c_.data(), tau, lo_.data(), hi_.data(), out, nl_);
  for (int j = nl_; j < n_; ++j) {
    const int k = j - nl_;
    const double z = x[j] - tau * (c_[j] + aty[j]);
    const int t = pwl_shape_[k];
    if (t >= 0) {
      out[j] = ProxPwl(shape_data_.data() + shape_at_[t], shape_kinks_[t],
                       pwl_scale_[k], pwl_inv_[k], z, tau, lo_[j], hi_[j],
                       pwl_piece_[k]);
    } else {
      out[j] = std::clamp(z / (1.0 + 2.0 * tau * quad_[k]), lo_[j], hi_[j]);
    }
  }
}

Evaluation Engine::Evaluate(const double* xs, const double* ys) {
  Evaluation e;
  Spmv(a_, xs, sm_.data());
  Spmv(at_, ys, sn_.data());
  double pobj = 0.0, dobj = 0.0;
  for (int i = 0; i < m_; ++i) {
    const double ax = sm_[i] / r_[i];
    const double viol = std::max(red_.row_lo[i] - ax, 0.0) +
                        std::max(ax - red_.row_hi[i], 0.0);
    e.primal_inf = std::max(e.primal_inf, viol);
    e.primal_2 += viol * viol;
    const double y = ys[i] * r_[i];
    if (y > 0.0) dobj -= red_.row_hi[i] * y;
    if (y < 0.0) dobj -= red_.row_lo[i] * y;
  }
  for (int j = 0; j < n_; ++j) {
    const double x = std::clamp(xs[j] * d_[j], red_.lo[j], red_.hi[j]);
    const double rc = red_.c[j] + sn_[j] / d_[j];
    pobj += red_.c[j] * x;
    if (j < nl_) {
      if (rc > 0.0) {
        if (red_.lo[j] == -kInf) {
          e.dual_inf = std::max(e.dual_inf, rc);
          e.dual_2 += rc * rc;
        } else {
          dobj += rc * red_.lo[j];
        }
      } else if (rc < 0.0) {
        if (red_.hi[j] == kInf) {
          e.dual_inf = std::max(e.dual_inf, -rc);
          e.dual_2 += rc * rc;
        } else {
          dobj += rc * red_.hi[j];
        }
      }
      continue;
    }
    const int k = j - nl_;
    if (red_.pwl[k]) {
      const ConvexPwl& f = *red_.pwl[k];
      pobj += f(x);
      dobj += MinPwlPlusLinear(f, rc, red_.lo[j], red_.hi[j]);
    } else {
      const double q = red_.quad[k];
      pobj += q * x * x;
      const double xm = std::clamp(-rc / (2.0 * q), red_.lo[j], red_.hi[j]);
      dobj += q * xm * xm + rc * xm;
    }
  }
  e.primal_2 = std::sqrt(e.primal_2);
  e.dual_2 = std::sqrt(e.dual_2);
  e.primal_obj = pobj;
  e.dual_obj = dobj;
  e.gap = std::fabs(pobj - dobj) /
          std::max({1.0, std::fabs(pobj), std::fabs(dobj)});
  return e;
}

void Engine::Unscale(const double* xs, const double* ys,
                     PdhgOutput& out) const {
  out.x.resize(n_);
  out.y.resize(m_);
  for (int j = 0; j < n_; ++j) {
    out.x[j] = std::clamp(xs[j] * d_[j], red_.lo[j], red_.hi[j]);
  }
  for (int i = 0; i < m_; ++i) out.y[i] = ys[i] * r_[i];
}

// Scaled direction dx certifies unboundedness when it keeps every bound and
// row in its recession cone and strictly lowers the objective.
bool Engine::PrimalRay(const double* dxs) {
  double norm = 0.0;
  for (int j = 0; j < n_; ++j) norm = std::max(norm, std::fabs(dxs[j] * d_[j]));
  if (!(norm > 0.0) || !std::isfinite(norm)) return false;
  double cd = 0.0, viol = 0.0;
  for (int j = 0; j < n_; ++j) {
    const double d = dxs[j] * d_[j] / norm;
    if (j >= nl_) {
      viol = std::max(viol, std::fabs(d));
      continue;
    }
    cd += red_.c[j] * d;
    if (red_.lo[j] != -kInf) viol = std::max(viol, -d);
    if (red_.hi[j] != kInf) viol = std::max(viol, d);
  }
  if (!(cd < 0.0)) return false;
  Spmv(a_, dxs, sm_.data());
  for (int i = 0; i < m_; ++i) {
    const double ad = sm_[i] / r_[i] / norm;
    if (red_.row_lo[i] != -kInf) viol = std::max(viol, -ad);
    if (red_.row_hi[i] != kInf) viol = std::max(viol, ad);
  }
  return viol <= kRayTol * -cd;
}

// Scaled dual direction dy certifies infeasibility when it raises the dual
// objective without bound.
bool Engine::DualRay(const double* dys) {
  double norm = 0.0;
  for (int i = 0; i < m_; ++i) norm = std::max(norm, std::fabs(dys[i] * r_[i]));
  if (!(norm > 0.0) || !std::isfinite(norm)) return false;
  double obj = 0.0, viol = 0.0;
  for (int i = 0; i < m_; ++i) {
    const double y = dys[i] * r_[i] / norm;
    if (y > 0.0) {
      if (red_.row_hi[i] == kInf) {
        viol = std::max(viol, y);
      } else {
        obj -= red_.row_hi[i] * y;
      }
    } else if (y < 0.0) {
      if (red_.row_lo[i] == -kInf) {
        viol = std::max(viol, -y);
      } else {
        obj -= red_.row_lo[i] * y;
      }
    }
  }
  Spmv(at_, dys, sn_.data());
  for (int j = 0; j < n_; ++j) {
    const double rc = sn_[j] / d_[j] / norm;
    if (rc > 0.0) {
      if (red_.lo[j] == -kInf) {
        viol = std::max(viol, rc);
      } else {
        obj += rc * red_.lo[j];
      }
    } else if (rc < 0.0) {
      if (red_.hi[j] == kInf) {
        viol = std::max(viol, -rc);
      } else {
        obj += rc * red_.hi[j];
      }
    }
  }
  return obj > 0.0 && viol <= kRayTol * obj;
}

PdhgOutput Engine::Run() {
  PdhgOutput out;
  std::vector<double> x(n_), xn(n_), xt(n_), aty(n_, 0.0), xsum(n_, 0.0),
      xavg(n_), xlast(n_);
  std::vector<double> y(m_, 0.0), yn(m_), ax(m_), ysum(m_, 0.0), yavg(m_),
      ylast(m_, 0.0);
  for (int j = 0; j < n_; ++j) x[j] = std::clamp(0.0, lo_[j], hi_[j]);
  xlast = x;

  const double eta = 0.9 / NormEstimate();
  double omega = 1.0;
  {
    const double cn = n_ > 0 ? std::sqrt(k_.sum_squares(c_.data(), n_)) : 0.0;
    double bn = 0.0;
    for (int i = 0; i < m_; ++i) {
      double b = 0.0;
      if (std::isfinite(rlo_[i])) b = std::fabs(rlo_[i]);
      if (std::isfinite(rhi_[i])) b = std::max(b, std::fabs(rhi_[i]));
      bn += b * b;
    }
    bn = std::sqrt(bn);
    if (cn > 1e-10 && bn > 1e-10) omega = cn / bn;
  }
  double tau = eta / omega;
  double sigma = eta * omega;

  Evaluation start = Evaluate(x.data(), y.data());
  if (Converged(start)) {
    Unscale(x.data(), y.data(), out);
    out.status = PdhgOutput::Status::kConverged;
    out.primal_objective = start.primal_obj;
    out.dual_objective = start.dual_obj;
    out.primal_residual = start.primal_inf;
    out.dual_residual = start.dual_inf;
    out.relative_gap = start.gap;
    return out;
  }
  double kkt_restart = start.Kkt(omega);
  double kkt_prev = kInf;
  std::int64_t total = 0;
  std::int64_t since = 0;
  const int every = std::max(1, opts_.check_every);
  Evaluation last = start;
  bool last_is_avg = false;
  int primal_rays = 0, dual_rays = 0;

  while (total < opts_.max_iters) {
    PrimalStep(x.data(), aty.data(), tau, xn.data());
    k_.extrapolate(xn.data(), x.data(), xt.data(), n_);
    Spmv(a_, xt.data(), ax.data());
    k_.dual_step(y.data(), ax.data(), sigma, rlo_.data(), rhi_.data(),
                 yn.data(), m_);
    Spmv(at_, yn.data(), aty.data());
    x.swap(xn);
    y.swap(yn);
    k_.accumulate(xsum.data(), x.data(), n_);
    k_.accumulate(ysum.data(), y.data(), m_);
    ++since;
    ++total;
    if (since % every != 0 && total != opts_.max_iters) continue;

    const double inv = 1.0 / static_cast<double>(since);
    k_.scale(xsum.data(), inv, xavg.data(), n_);
    k_.scale(ysum.data(), inv, yavg.data(), m_);
    const Evaluation ec = Evaluate(x.data(), y.data());
    const Evaluation ea = Evaluate(xavg.data(), yavg.data());
    if (opts_.verbose) {
      std::fprintf(stderr,
                   "pdhg %lld  pinf %.3e dinf %.3e gap %.3e | avg pinf %.3e "
                   "gap %.3e  obj %.10g omega %.3g\n",
                   static_cast<long long>(total), ec.primal_inf, ec.dual_inf,
                   ec.gap, ea.primal_inf, ea.gap, ec.primal_obj, omega);
    }
    const bool conv_c = Converged(ec);
    const bool conv_a = Converged(ea);
    if (conv_c || conv_a) {
      const bool use_avg = !conv_c;
      const Evaluation& e = use_avg ? ea : ec;
      Unscale(use_avg ? xavg.data() : x.data(), use_avg ? yavg.data() : y.data(),
              out);
      out.status = PdhgOutput::Status::kConverged;
      out.primal_objective = e.primal_obj;
      out.dual_objective = e.dual_obj;
      out.primal_residual = e.primal_inf;
      out.dual_residual = e.dual_inf;
      out.relative_gap = e.gap;
      out.iterations = total;
      return out;
    }
    const double kc = ec.Kkt(omega);
    const double ka = ea.Kkt(omega);
    const bool use_avg = ka < kc;
    const double kcand = use_avg ? ka : kc;
    last = use_avg ? ea : ec;
    last_is_avg = use_avg;
    const bool restart =
        kcand <= kSufficient * kkt_restart ||
        (kcand <= kNecessary * kkt_restart && kcand > kkt_prev) ||
        static_cast<double>(since) >= kArtificial * static_cast<double>(total);
    kkt_prev = kcand;
    if (!restart || total == opts_.max_iters) continue;

    if (use_avg) {
      x = xavg;
      y = yavg;
    }
    std::vector<double>& dx = xn;
    std::vector<double>& dy = yn;
    for (int j = 0; j < n_; ++j) dx[j] = x[j] - xlast[j];
    for (int i = 0; i < m_; ++i) dy[i] = y[i] - ylast[i];
    const double nx = std::sqrt(k_.sum_squares(dx.data(), n_));
    const double ny = std::sqrt(k_.sum_squares(dy.data(), m_));
    primal_rays = PrimalRay(dx.data()) ? primal_rays + 1 : 0;
    dual_rays = DualRay(dy.data()) ? dual_rays + 1 : 0;
    if (primal_rays >= kRayConfirm || dual_rays >= kRayConfirm) {
      Unscale(x.data(), y.data(), out);
      out.status = dual_rays >= kRayConfirm ? PdhgOutput::Status::kInfeasible
                                            : PdhgOutput::Status::kUnbounded;
      out.primal_objective = last.primal_obj;
      out.dual_objective = last.dual_obj;
      out.primal_residual = last.primal_inf;
      out.dual_residual = last.dual_inf;
      out.relative_gap = last.gap;
      out.iterations = total;
      return out;
    }
    if (nx > 1e-10 && ny > 1e-10) {
      omega = std::exp(0.5 * std::log(ny / nx) + 0.5 * std::log(omega));
      tau = eta / omega;
      sigma = eta * omega;
    }
    xlast = x;
    ylast = y;
    std::fill(xsum.begin(), xsum.end(), 0.0);
    std::fill(ysum.begin(), ysum.end(), 0.0);
    since = 0;
    Spmv(at_, y.data(), aty.data());
    kkt_restart = last.Kkt(omega);
    kkt_prev = kInf;
    last_is_avg = false;
    ++out.restarts;
  }

  // Iteration limit: report the most recent candidate.
  if (last_is_avg) {
    Unscale(xavg.data(), yavg.data(), out);
  } else {
    Unscale(x.data(), y.data(), out);
  }
  out.primal_objective = last.primal_obj;
  out.dual_objective = last.dual_obj;
  out.primal_residual = last.primal_inf;
  out.dual_residual = last.dual_inf;
  out.relative_gap = last.gap;
  out.iterations = total;
  return out;
}

}  // namespace

PdhgOutput run_pdhg(const Reduced& problem, const SolverOptions& opts) {
  Engine engine(problem, opts);
  return engine.Run();
}

}  // namespace rampmatch::solver
