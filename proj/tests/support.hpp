#pragma once

// Independent reference computations shared by the unit and acceptance tests.

#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <vector>

#include "optlim/optlim.hpp"

namespace oracle {

using optlim::cplx;

inline cplx random_annulus(std::mt19937_64& rng, double rmin = 0.1, double rmax = 10.0) {
  std::uniform_real_distribution<double> lr(std::log(rmin), std::log(rmax));
  std::uniform_real_distribution<double> ang(-M_PI, M_PI);
  return std::polar(std::exp(lr(rng)), ang(rng));
}

inline std::vector<cplx> random_point(std::mt19937_64& rng, int n) {
  std::vector<cplx> w(n);
  for (auto& v : w) v = random_annulus(rng);
  return w;
}

// Gauss-Legendre nodes/weights on [-1, 1] by Newton on P_n.
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& wt) {
  x.assign(n, 0.0);
  wt.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = z;
    wt[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

// Li2(z) = -int_0^1 log(1 - s z) / s ds along the segment, composite
// Gauss-Legendre. Valid off the cut [1, inf).
inline cplx li2_quadrature(cplx z, int panels = 400, int order = 20) {
  std::vector<double> x, wt;
  gauss_legendre(order, x, wt);
  cplx sum = 0.0;
  const double h = 1.0 / panels;
  for (int p = 0; p < panels; ++p) {
    const double a = p * h;
    for (int i = 0; i < order; ++i) {
      const double s = a + 0.5 * h * (x[i] + 1.0);
      sum += 0.5 * h * wt[i] * (-std::log(1.0 - s * z) / s);
    }
  }
  return sum;
}

// Plain power series, reduced by inversion when |z| > 1.
inline cplx li2_series(cplx z) {
  auto direct = [](cplx u) {
    cplx term = u, s = 0.0;
    for (long k = 1; k <= 1000000; ++k) {
      const cplx add = term / double(k) / double(k);
      s += add;
      if (std::abs(add) < 1e-19) break;
      term *= u;
    }
    return s;
  };
  if (std::abs(z) <= 1.0) return direct(z);
  const cplx l = std::log(-z);
  return -direct(1.0 / z) - M_PI * M_PI / 6.0 - 0.5 * l * l;
}

// Richardson-extrapolated central difference of P along w_k (w_k d/dw_k),
// step h = 1e-6 |w_k| then h/2.
inline cplx mu_finite_difference(const optlim::Potential& p, std::vector<cplx> w, int k) {
  const cplx wk = w[k];
  auto central = [&](double h) {
    const cplx step = h * wk;
    w[k] = wk + step;
    const cplx fp = optlim::evaluate(p, w);
    w[k] = wk - step;
    const cplx fm = optlim::evaluate(p, w);
    w[k] = wk;
    return (fp - fm) / (2.0 * step) * wk;
  };
  const double h = 1e-6;
  const cplx d1 = central(h), d2 = central(h / 2);
  return (4.0 * d2 - d1) / 3.0;
}

// True when evaluation is smooth near w: no dilog or log argument is close to
// its branch cut, so finite differences are meaningful.
inline bool away_from_cuts(const optlim::Potential& p, const std::vector<cplx>& w, double margin) {
  for (const auto& t : p.terms) {
    if (t.kind == optlim::TermKind::Const) continue;
    for (const auto* m : {&t.m1, &t.m2}) {
      if (t.kind == optlim::TermKind::Dilog && m == &t.m2) continue;
      const cplx v = m->value(w);
      if (v.real() < 0 && std::abs(v.imag()) < margin * std::abs(v)) return false;
      if (t.kind == optlim::TermKind::Dilog) {
        const cplx u = 1.0 - v;
        if (u.real() < 0 && std::abs(u.imag()) < margin * std::abs(u)) return false;
        if (std::abs(u) < margin) return false;
      }
    }
  }
  return true;
}

// 1-based variable numbers as printed, shifted to 0-based ids.
inline optlim::Monomial q(std::initializer_list<int> num, std::initializer_list<int> den) {
  std::map<int, int> e;
  for (int v : num) ++e[v - 1];
  for (int v : den) --e[v - 1];
  optlim::Monomial m;
  for (auto [v, k] : e)
    if (k) m.exps.push_back({v, k});
  return m;
}

// Figure-eight potential as printed, four braces of seven terms each.
inline std::vector<optlim::Term> printed_figure_eight() {
  using optlim::dilog, optlim::zeta2, optlim::logprod;
  return {
      dilog(-1, q({1}, {3})), dilog(-1, q({1}, {2})), dilog(1, q({1, 4}, {2, 3})),
      dilog(1, q({3}, {4})), dilog(1, q({2}, {4})), zeta2(-1), logprod(1, q({3}, {4}), q({2}, {4})),

      dilog(-1, q({4}, {3})), dilog(-1, q({4}, {5})), dilog(1, q({1, 4}, {3, 5})),
      dilog(1, q({3}, {1})), dilog(1, q({5}, {1})), zeta2(-1), logprod(1, q({3}, {1}), q({5}, {1})),

      dilog(1, q({2}, {4})), dilog(1, q({2}, {6})), dilog(-1, q({2, 5}, {4, 6})),
      dilog(-1, q({4}, {5})), dilog(-1, q({6}, {5})), zeta2(1), logprod(-1, q({4}, {5}), q({6}, {5})),

      dilog(1, q({5}, {1})), dilog(1, q({5}, {6})), dilog(-1, q({2, 5}, {1, 6})),
      dilog(-1, q({1}, {2})), dilog(-1, q({6}, {2})), zeta2(1), logprod(-1, q({1}, {2}), q({6}, {2})),
  };
}

}  // namespace oracle
