#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <random>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "optlim/equations.hpp"

namespace optlim {

struct SolveConfig {
  int restarts = 512;
  int max_iter = 200;
  double residual_tol = 1e-12;
  double dedupe_tol = 1e-8;
  double essential_tol = 1e-8;
  std::uint64_t seed = 0;
  double radius_min = 0.1, radius_max = 10.0;
  int threads = 0;  // 0: hardware concurrency capped by OPTLIM_THREADS

  void check() const {
    if (restarts < 0 || max_iter < 0) throw InputError("restarts and max_iter must be >= 0");
    if (!(residual_tol > 0 && dedupe_tol > 0 && essential_tol > 0))
      throw InputError("tolerances must be positive");
    if (!(residual_tol < dedupe_tol)) throw InputError("residual_tol must be < dedupe_tol");
    if (!(0 < radius_min && radius_min < radius_max)) throw InputError("bad sampling annulus");
  }
};

struct Solution {
  std::vector<cplx> assignment;  // pinned variable equals 1
  double residual_norm = 0.0;    // max-norm of the active residuals
  bool essential = true;
  int component_hint = -1;
  int iterations = 0;
  int restart = -1;
};

/// Rescales w so that w[pin] = 1.
inline std::vector<cplx> normalize(std::vector<cplx> w, int pin) {
  if (w[pin] == cplx(0.0)) throw DegenerateError("normalize: pinned variable is zero");
  const cplx s = w[pin];
  for (auto& v : w) v /= s;
  w[pin] = 1.0;
  return w;
}

inline double max_coord_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double d = 0.0;
  for (size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

namespace detail {

inline double safe_residual(const EquationSystem& sys, const std::vector<cplx>& w, double ess_tol,
                            Eigen::VectorXcd* out) {
  if (!is_essential(sys, w, ess_tol * 1e-4)) return INFINITY;
  Eigen::VectorXcd r = residual(sys, w);
  if (!r.allFinite()) return INFINITY;
  if (out) *out = r;
  return r.norm();
}

enum class NewtonStatus { Converged, Diverged, Singular, Stalled, NonEssential };

// Damped Newton in log coordinates: w_q <- w_q exp(delta_q). Minimum-norm
// steps keep it usable on positive-dimensional solution sets.
inline NewtonStatus newton(const EquationSystem& sys, std::vector<cplx>& w, const SolveConfig& cfg,
                           int& iters, double& resid) {
  iters = 0;
  Eigen::VectorXcd F;
  double norm2 = safe_residual(sys, w, cfg.essential_tol, &F);
  if (!std::isfinite(norm2)) return NewtonStatus::NonEssential;
  resid = F.cwiseAbs().maxCoeff();
  while (resid > cfg.residual_tol) {
    if (iters >= cfg.max_iter) return NewtonStatus::Diverged;
    ++iters;
    const Eigen::MatrixXcd Jl = jacobian_log(sys, w);
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod;
    cod.setThreshold(1e-10);
    cod.compute(Jl);
    if (cod.rank() == 0) return NewtonStatus::Singular;
    const Eigen::VectorXcd delta = cod.solve(-F);
    if (!delta.allFinite()) return NewtonStatus::Singular;
    double lambda = 1.0;
    bool accepted = false;
    for (int h = 0; h <= 30; ++h, lambda *= 0.5) {
      std::vector<cplx> trial = w;
      for (int q = 0; q < sys.size(); ++q) trial[sys.unknowns[q]] *= std::exp(lambda * delta[q]);
      Eigen::VectorXcd Ft;
      const double n2 = safe_residual(sys, trial, cfg.essential_tol, &Ft);
      if (n2 < norm2) {
        w = std::move(trial);
        F = std::move(Ft);
        norm2 = n2;
        accepted = true;
        break;
      }
    }
    if (!accepted) return NewtonStatus::Stalled;
    resid = F.cwiseAbs().maxCoeff();
    for (auto v : w)
      if (std::abs(v) > 1e12 || std::abs(v) < 1e-12) return NewtonStatus::Diverged;
  }
  return NewtonStatus::Converged;
}

inline int thread_count(const SolveConfig& cfg) {
  int n = cfg.threads > 0 ? cfg.threads : int(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("OPTLIM_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  return std::max(1, n);
}

}  // namespace detail

/// Newton from a nearby point. Throws ConvergenceError on divergence or a
/// singular Jacobian, DegenerateError when the limit is not essential.
inline Solution refine(const EquationSystem& sys, const std::vector<cplx>& start,
                       const SolveConfig& cfg = {}) {
  if (int(start.size()) != sys.n) throw InputError("refine: assignment size mismatch");
  std::vector<cplx> w = normalize(start, sys.pin);
  Solution s;
  double resid = INFINITY;
  switch (detail::newton(sys, w, cfg, s.iterations, resid)) {
    case detail::NewtonStatus::Converged: break;
    case detail::NewtonStatus::NonEssential:
      throw DegenerateError("refine: iterate is not essential");
    case detail::NewtonStatus::Singular:
      throw ConvergenceError("refine: singular Jacobian");
    case detail::NewtonStatus::Stalled:
      throw ConvergenceError("refine: line search failed to reduce the residual");
    case detail::NewtonStatus::Diverged:
      throw ConvergenceError("refine: no convergence within max_iter");
  }
  if (!is_essential(sys, w, cfg.essential_tol))
    throw DegenerateError("refine: converged to a non-essential point");
  s.assignment = std::move(w);
  s.residual_norm = resid;
  return s;
}

/// Random start for restart r: |w| log-uniform in the annulus, uniform angle.
inline std::vector<cplx> sample_start(const EquationSystem& sys, const SolveConfig& cfg, int r) {
  std::seed_seq seq{std::uint32_t(cfg.seed), std::uint32_t(cfg.seed >> 32), std::uint32_t(r),
                    0x6f70u};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> lr(std::log(cfg.radius_min), std::log(cfg.radius_max));
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  std::vector<cplx> w(sys.n, cplx(1.0));
  for (int q : sys.unknowns) {
    const double rad = std::exp(lr(rng));
    const double th = ang(rng);
    w[q] = std::polar(rad, th);
  }
  return w;
}

/// Multistart Newton. Deterministic for fixed (sys, cfg) irrespective of the
/// thread count. Returns deduplicated essential solutions sorted by residual.
inline std::vector<Solution> solve(const EquationSystem& sys, const SolveConfig& cfg = {}) {
  cfg.check();
  if (sys.size() == 0) return {};
  std::vector<std::optional<Solution>> found(cfg.restarts);
  auto work = [&](int first, int stride) {
    for (int r = first; r < cfg.restarts; r += stride) {
      try {
        Solution s = refine(sys, sample_start(sys, cfg, r), cfg);
        s.restart = r;
        found[r] = std::move(s);
      } catch (const Error&) {
      }
    }
  };
  const int nt = std::min(detail::thread_count(cfg), std::max(1, cfg.restarts));
  if (nt == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t) pool.emplace_back(work, t, nt);
    for (auto& th : pool) th.join();
  }

  std::vector<Solution> cands;
  for (auto& f : found)
    if (f) cands.push_back(std::move(*f));
  std::stable_sort(cands.begin(), cands.end(), [](const Solution& a, const Solution& b) {
    return a.residual_norm != b.residual_norm ? a.residual_norm < b.residual_norm
                                              : a.restart < b.restart;
  });
  std::vector<Solution> reps;
  for (auto& c : cands) {
    bool dup = false;
    for (const auto& r : reps)
      if (max_coord_distance(c.assignment, r.assignment) <= cfg.dedupe_tol) {
        dup = true;
        break;
      }
    if (!dup) {
      c.component_hint = int(reps.size());
      reps.push_back(std::move(c));
    }
  }
  return reps;
}

}  // namespace optlim
