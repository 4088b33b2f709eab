#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "optlim/builtin.hpp"
#include "optlim/potential.hpp"

namespace optlim {

/// Integer coefficients, constant term first, of the polynomial whose roots
/// parametrize the boundary-parabolic solutions of T_n.
inline std::vector<long long> defining_poly(int n) {
  switch (n) {
    case 1: return {16, -12, 3};
    case 2: return {-64, 80, -40, 7};
    case 3: return {256, -448, 336, -120, 17};
    case 4: return {-2048, 4608, -4608, 2464, -696, 82};
    case 5: return {4096, -11264, 14080, -9984, 4192, -980, 99};
    default: throw InputError("twist knot index must be in 1..5, got " + std::to_string(n));
  }
}

inline cplx poly_eval(const std::vector<double>& c, cplx t) {
  cplx v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + *it;
  return v;
}

/// All complex roots (companion matrix eigenvalues, then Newton polish),
/// sorted by real part then imaginary part. Real roots have exactly zero
/// imaginary part when the coefficients are real.
inline std::vector<cplx> poly_roots(std::vector<double> c) {
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  const int deg = int(c.size()) - 1;
  if (deg < 1) throw InputError("poly_roots: degree must be >= 1");
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -c[i] / c[deg];
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  std::vector<cplx> roots(es.eigenvalues().data(), es.eigenvalues().data() + deg);

  std::vector<double> dc;
  for (int i = 1; i <= deg; ++i) dc.push_back(i * c[i]);
  for (auto& r : roots) {
    if (std::abs(r.imag()) < 1e-9 * std::max(1.0, std::abs(r))) r = {r.real(), 0.0};
    for (int it = 0; it < 8; ++it) {
      const cplx d = poly_eval(dc, r);
      if (d == cplx(0.0)) break;
      const cplx step = poly_eval(c, r) / d;
      r -= step;
      if (std::abs(step) <= 1e-16 * std::abs(r)) break;
    }
  }
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return roots;
}

inline std::vector<cplx> twist_roots(int n) {
  const auto p = defining_poly(n);
  return poly_roots(std::vector<double>(p.begin(), p.end()));
}

/// Side data (a, b, x_k, y_k) and region data (c, d, e, w_k) at a root t.
struct TwistParametrization {
  int n = 0;
  cplx t;
  cplx a = 2.0, b = -1.0;
  std::vector<cplx> x, y;  // 0..n+1
  cplx c, d, e = 1.0;
  std::vector<cplx> w;     // 0..n+1
  cplx x_closure, y_closure;  // recurrence continued to k = n; equal 3 and 1 at a root

  /// In twist_diagram region order: c, d, e, w0..w{n+1}.
  std::vector<cplx> regions() const {
    std::vector<cplx> out{c, d, e};
    out.insert(out.end(), w.begin(), w.end());
    return out;
  }
  /// In twist_diagram side order: a, b, x0..x{n+1}, y0..y{n+1}.
  std::vector<cplx> sides() const {
    std::vector<cplx> out{a, b};
    out.insert(out.end(), x.begin(), x.end());
    out.insert(out.end(), y.begin(), y.end());
    return out;
  }
};

inline TwistParametrization parametrize(int n, cplx t) {
  defining_poly(n);
  auto check = [](cplx den, const char* what) {
    if (!(std::abs(den) > 1e-13)) throw DegenerateError(std::string("parametrize: ") + what + " vanishes");
  };
  check(t, "t");
  check(t * t - 4.0 * t + 8.0, "t^2 - 4t + 8");
  check(t - 3.0, "t - 3");
  TwistParametrization p;
  p.n = n;
  p.t = t;
  p.x.assign(n + 2, 0.0);
  p.y.assign(n + 2, 0.0);
  p.x[0] = t;
  p.y[0] = 1.0 + 2.0 / t;
  p.x[1] = t * (t + 2.0) / (t * t - 4.0 * t + 8.0);
  p.y[1] = 4.0 / t;
  auto step = [&](int k, cplx& xn, cplx& yn) {
    const cplx den = -p.x[k - 1] + p.x[k] + p.y[k];
    check(den, "recurrence denominator");
    check(p.y[k - 1], "y_{k-1}");
    xn = p.x[k] * p.y[k] / den;
    yn = p.x[k] + p.y[k] - p.x[k] * p.y[k] / p.y[k - 1];
  };
  for (int k = 1; k < n; ++k) step(k, p.x[k + 1], p.y[k + 1]);
  step(n, p.x_closure, p.y_closure);
  p.x[n + 1] = 3.0;
  p.y[n + 1] = 1.0;

  p.c = -1.0 / (t - 3.0);
  p.d = 3.0 * t / (2.0 * (t - 3.0));
  p.e = 1.0;
  p.w.assign(n + 2, 0.0);
  p.w[0] = (t + 1.0) / (t - 3.0);
  for (int k = 1; k <= n + 1; ++k) {
    check(p.y[k], "y_k");
    check(p.x[k], "x_k");
    check(1.0 - p.x[k - 1] / p.x[k], "1 - x_{k-1}/x_k");
    p.w[k] = dprime(p.x[k] / p.y[k]) * prime(p.x[k - 1] / p.x[k]);
  }
  return p;
}

/// Closed form of w_k(t), k = 0..6: numerator / ((t - 3) t^(2k)).
inline cplx table2_w(int k, cplx t) {
  static const std::vector<std::vector<double>> num{
      {1, 1},
      {-16, 0, -1},
      {256, -256, 112, -16, -3, 1},
      {-4096, 8192, -7424, 3584, -864, 32, 27, -4},
      {65536, -196608, 274432, -225280, 115456, -35584, 5152, 320, -231, 25},
      {-1048576, 4194304, -7929856, 9175040, -7094272, 3760128, -1337088, 287232, -21232,
       -6048, 1751, -144},
      {16777216, -83886080, 200278016, -298844160, 307822592, -228524032, 123846656,
       -48324608, 12842496, -1930752, -2544, 66288, -12587, 841},
  };
  if (k < 0 || k > 6) throw InputError("closed form available for k = 0..6");
  // Coefficients reach 3e8 and cancel heavily near the roots; double Horner
  // loses about 1e-10 at k = 6, so evaluate in extended precision.
  using lcplx = std::complex<long double>;
  const lcplx tl(t.real(), t.imag());
  lcplx v = 0.0L;
  for (auto it = num[k].rbegin(); it != num[k].rend(); ++it) v = v * tl + (long double)(*it);
  lcplx den = tl - 3.0L;
  for (int i = 0; i < 2 * k; ++i) den *= tl;
  const lcplx r = v / den;
  return {double(r.real()), double(r.imag())};
}

/// The twist-knot potential written directly from its crossing blocks, over
/// variables c, d, e, w0..w{n+1} (same order as twist_diagram).
inline Potential twist_potential(int n) {
  defining_poly(n);
  Potential p;
  p.kind = PotentialKind::W;
  p.variables = {"c", "d", "e"};
  for (int k = 0; k <= n + 1; ++k) p.variables.push_back("w" + std::to_string(k));
  const int c = 0, d = 1, e = 2;
  auto w = [](int k) { return 3 + k; };
  using R = Monomial;
  auto add = [&](std::initializer_list<Term> ts) { p.terms.insert(p.terms.end(), ts); };
  // A_k and B_k differ only by swapping c and e.
  auto block = [&](int u, int v, int k) {
    add({dilog(1, R::ratio({u}, {w(k)})), dilog(1, R::ratio({u}, {w(k + 1)})),
         dilog(-1, R::ratio({c, e}, {w(k), w(k + 1)})), dilog(-1, R::ratio({w(k)}, {v})),
         dilog(-1, R::ratio({w(k + 1)}, {v})), zeta2(1),
         logprod(-1, R::ratio({w(k)}, {v}), R::ratio({w(k + 1)}, {v}))});
  };
  auto Ablk = [&](int k) { block(c, e, k); };
  auto Bblk = [&](int k) { block(e, c, k); };
  const int N = n + 1;
  if (n % 2 == 1) {
    add({dilog(-1, R::ratio({w(N)}, {c})), dilog(-1, R::ratio({w(N)}, {d})),
         dilog(1, R::ratio({w(0), w(N)}, {c, d})), dilog(1, R::ratio({c}, {w(0)})),
         dilog(1, R::ratio({d}, {w(0)})), zeta2(-1),
         logprod(1, R::ratio({c}, {w(0)}), R::ratio({d}, {w(0)}))});
    add({dilog(-1, R::ratio({w(0)}, {d})), dilog(-1, R::ratio({w(0)}, {e})),
         dilog(1, R::ratio({w(0), w(N)}, {d, e})), dilog(1, R::ratio({d}, {w(N)})),
         dilog(1, R::ratio({e}, {w(N)})), zeta2(-1),
         logprod(1, R::ratio({d}, {w(N)}), R::ratio({e}, {w(N)}))});
    for (int k = 0; k <= (n - 1) / 2; ++k) {
      Ablk(2 * k);
      Bblk(2 * k + 1);
    }
  } else {
    add({dilog(1, R::ratio({c}, {w(0)})), dilog(1, R::ratio({c}, {w(N)})),
         dilog(-1, R::ratio({c, d}, {w(0), w(N)})), dilog(-1, R::ratio({w(0)}, {d})),
         dilog(-1, R::ratio({w(N)}, {d})), zeta2(1),
         logprod(-1, R::ratio({w(0)}, {d}), R::ratio({w(N)}, {d}))});
    add({dilog(1, R::ratio({d}, {w(0)})), dilog(1, R::ratio({d}, {w(N)})),
         dilog(-1, R::ratio({d, e}, {w(0), w(N)})), dilog(-1, R::ratio({w(0)}, {e})),
         dilog(-1, R::ratio({w(N)}, {e})), zeta2(1),
         logprod(-1, R::ratio({w(0)}, {e}), R::ratio({w(N)}, {e}))});
    Bblk(0);
    for (int k = 1; k <= n / 2; ++k) {
      Ablk(2 * k - 1);
      Bblk(2 * k);
    }
  }
  return p;
}

/// Published optimistic-limit values, written as i(vol + i cs).
struct Table3Row {
  int n;
  cplx t;
  double vol, cs;
};

inline const std::vector<Table3Row>& table3() {
  static const std::vector<Table3Row> rows{
      {1, {2.0, 1.1547}, 2.0299, 0.0},
      {1, {2.0, -1.1547}, -2.0299, 0.0},
      {2, {1.4587, 1.0682}, 2.8281, 3.0241},
      {2, {1.4587, -1.0682}, -2.8281, 3.0241},
      {2, {2.7969, 0.0}, 0.0, -1.1135},
      {3, {1.2631, 1.0347}, 3.1640, 6.7907},
      {3, {1.2631, -1.0347}, -3.1640, 6.7907},
      {3, {2.2664, 0.7158}, 1.4151, 0.2110},
      {3, {2.2664, -0.7158}, -1.4151, 0.2110},
      {4, {1.1713, 1.0202}, 3.3317, 10.9583},
      {4, {1.1713, -1.0202}, -3.3317, 10.9583},
      {4, {1.8097, 0.9073}, 2.2140, 1.8198},
      {4, {1.8097, -0.9073}, -2.2140, 1.8198},
      {4, {2.5257, 0.0}, 0.0, -0.8822},
      {5, {1.1208, 1.0129}, 3.4272, 15.3545},
      {5, {1.1208, -1.0129}, -3.4272, 15.3545},
      {5, {1.5498, 0.9676}, 2.6560, 4.6428},
      {5, {1.5498, -0.9676}, -2.6560, 4.6428},
      {5, {2.2789, 0.4876}, 1.1087, -0.2581},
      {5, {2.2789, -0.4876}, -1.1087, -0.2581},
  };
  return rows;
}

inline std::vector<Table3Row> table3_rows(int n) {
  std::vector<Table3Row> out;
  for (const auto& r : table3())
    if (r.n == n) out.push_back(r);
  return out;
}

/// Printed row whose t is closest to the given root.
inline const Table3Row& table3_match(int n, cplx t) {
  const Table3Row* best = nullptr;
  for (const auto& r : table3())
    if (r.n == n && (!best || std::abs(r.t - t) < std::abs(best->t - t))) best = &r;
  if (!best) throw InputError("no tabulated rows for n = " + std::to_string(n));
  return *best;
}

inline nlohmann::json table3_fixtures_json() {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : table3())
    j.push_back({{"n", r.n},
                 {"t", {r.t.real(), r.t.imag()}},
                 {"vol", r.vol},
                 {"cs", r.cs},
                 {"defining_poly", defining_poly(r.n)}});
  return j;
}

}  // namespace optlim
