#pragma once

#include <array>
#include <queue>
#include <vector>

#include "optlim/diagram.hpp"
#include "optlim/equations.hpp"
#include "optlim/optimistic.hpp"
#include "optlim/potential.hpp"

namespace optlim {

namespace detail {

inline bool near_one(cplx v, double tol) { return std::abs(v - 1.0) <= tol; }

inline std::array<cplx, 4> region_values(const Crossing& x, const std::vector<cplx>& w) {
  return {w[x.regions[J]], w[x.regions[K]], w[x.regions[L]], w[x.regions[M]]};
}
inline std::array<cplx, 4> side_values(const Crossing& x, const std::vector<cplx>& z) {
  return {z[x.sides[A]], z[x.sides[B]], z[x.sides[C]], z[x.sides[D]]};
}

// The four shape products giving z_b/z_a, z_c/z_b, z_d/z_c, z_a/z_d; the
// positive set is used for positive crossings and the negative one otherwise.
inline std::array<cplx, 4> side_ratios_pos(cplx j, cplx k, cplx l, cplx m) {
  const cplx X = j * l / (k * m);
  return {dprime(m / j) * dprime(k / j) * prime(X), prime(k / j) * prime(k / l) * dprime(X),
          dprime(k / l) * dprime(m / l) * prime(X), prime(m / l) * prime(m / j) * dprime(X)};
}
inline std::array<cplx, 4> side_ratios_neg(cplx j, cplx k, cplx l, cplx m) {
  const cplx Y = k * m / (j * l);
  return {prime(j / m) * prime(j / k) * dprime(Y), dprime(j / k) * dprime(l / k) * prime(Y),
          prime(l / k) * prime(l / m) * dprime(Y), dprime(l / m) * dprime(j / m) * prime(Y)};
}

struct Edge {
  int from, to;
  cplx ratio;  // value[to] / value[from]
};

// Breadth-first propagation from vertex 0 := 1; every edge is then checked.
inline std::vector<cplx> propagate(int nv, const std::vector<Edge>& edges, double tol,
                                   double* worst) {
  std::vector<std::vector<std::pair<int, cplx>>> adj(nv);
  for (const auto& e : edges) {
    if (!std::isfinite(std::abs(e.ratio)) || e.ratio == cplx(0.0))
      throw DegenerateError("degenerate ratio while propagating");
    adj[e.from].push_back({e.to, e.ratio});
    adj[e.to].push_back({e.from, 1.0 / e.ratio});
  }
  std::vector<cplx> v(nv, cplx(0.0));
  std::vector<char> seen(nv, 0);
  std::queue<int> q;
  v[0] = 1.0;
  seen[0] = 1;
  q.push(0);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (auto [t, r] : adj[u])
      if (!seen[t]) {
        seen[t] = 1;
        v[t] = v[u] * r;
        q.push(t);
      }
  }
  for (int i = 0; i < nv; ++i)
    if (!seen[i]) throw InconsistentError("propagation graph is disconnected");
  double dev = 0.0;
  for (const auto& e : edges)
    dev = std::max(dev, std::abs(v[e.to] - e.ratio * v[e.from]) / std::abs(v[e.to]));
  if (worst) *worst = dev;
  if (dev > tol)
    throw InconsistentError("ratios do not close up (relative deviation " + std::to_string(dev) +
                            "); input is not a solution");
  return v;
}

}  // namespace detail

/// w_j + w_l != w_k + w_m at every crossing (relative tolerance).
inline bool check_w_nondegenerate(const LinkDiagram& d, const std::vector<cplx>& w,
                                  double tol = 1e-10) {
  for (const auto& x : d.crossings) {
    const auto [j, k, l, m] = detail::region_values(x, w);
    const double scale = std::max({std::abs(j), std::abs(k), std::abs(l), std::abs(m)});
    if (std::abs(j + l - k - m) <= tol * scale) return false;
  }
  return true;
}

/// The same condition tested through the eight shape products of both
/// octahedron subdivisions (none may equal 1).
inline bool check_w_nondegenerate_products(const LinkDiagram& d, const std::vector<cplx>& w,
                                           double tol = 1e-10) {
  for (const auto& x : d.crossings) {
    const auto [j, k, l, m] = detail::region_values(x, w);
    for (auto r : detail::side_ratios_pos(j, k, l, m))
      if (detail::near_one(r, tol)) return false;
    for (auto r : detail::side_ratios_neg(j, k, l, m))
      if (detail::near_one(r, tol)) return false;
  }
  return true;
}

/// z_a != z_c and z_b != z_d at every crossing.
inline bool check_z_nondegenerate(const LinkDiagram& d, const std::vector<cplx>& z,
                                  double tol = 1e-10) {
  for (const auto& x : d.crossings) {
    const auto [a, b, c, dd] = detail::side_values(x, z);
    if (std::abs(a - c) <= tol * std::max(std::abs(a), std::abs(c))) return false;
    if (std::abs(b - dd) <= tol * std::max(std::abs(b), std::abs(dd))) return false;
  }
  return true;
}

/// Region ratios of one crossing from its side values, as
/// (w_m/w_j, w_k/w_j, w_k/w_l, w_m/w_l, w_j w_l/(w_k w_m)).
inline std::array<cplx, 5> region_ratios(const Crossing& x, const std::vector<cplx>& z) {
  const auto [a, b, c, d] = detail::side_values(x, z);
  if (x.sign > 0) {
    return {prime(b / a) * dprime(a / d), prime(b / a) * dprime(c / b),
            prime(d / c) * dprime(c / b), prime(d / c) * dprime(a / d),
            dprime(a / b) * prime(b / c) * dprime(c / d) * prime(d / a)};
  }
  const cplx jm = prime(a / d) * dprime(b / a), jk = prime(c / b) * dprime(b / a),
             lk = prime(c / b) * dprime(d / c), lm = prime(a / d) * dprime(d / c),
             kmjl = prime(a / b) * dprime(b / c) * prime(c / d) * dprime(d / a);
  return {1.0 / jm, 1.0 / jk, 1.0 / lk, 1.0 / lm, 1.0 / kmjl};
}

/// The same condition on z tested through the ten shape products (none may
/// equal 1).
inline bool check_z_nondegenerate_products(const LinkDiagram& d, const std::vector<cplx>& z,
                                           double tol = 1e-10) {
  for (const auto& x : d.crossings) {
    const auto [a, b, c, dd] = detail::side_values(x, z);
    const std::array<cplx, 10> prods{
        prime(b / a) * dprime(a / dd), prime(b / a) * dprime(c / b),
        prime(dd / c) * dprime(c / b), prime(dd / c) * dprime(a / dd),
        dprime(a / b) * prime(b / c) * dprime(c / dd) * prime(dd / a),
        prime(a / dd) * dprime(b / a), prime(c / b) * dprime(b / a),
        prime(c / b) * dprime(dd / c), prime(a / dd) * dprime(dd / c),
        prime(a / b) * dprime(b / c) * prime(c / dd) * dprime(dd / a)};
    for (auto p : prods)
      if (detail::near_one(p, tol)) return false;
  }
  return true;
}

/// Side values (last side normalized to 1) determined by a region solution.
inline std::vector<cplx> w_to_z(const LinkDiagram& d, const std::vector<cplx>& w,
                                double tol = 1e-9, double* worst = nullptr) {
  if (int(w.size()) != d.num_regions()) throw InputError("w_to_z: assignment size mismatch");
  if (validate(d).kinks > 0) throw InputError("w_to_z: diagram has a kink");
  if (!check_w_nondegenerate(d, w)) throw DegenerateError("w_to_z: w_j + w_l = w_k + w_m at some crossing");
  std::vector<detail::Edge> edges;
  for (const auto& x : d.crossings) {
    const auto [j, k, l, m] = detail::region_values(x, w);
    const auto r = x.sign > 0 ? detail::side_ratios_pos(j, k, l, m) : detail::side_ratios_neg(j, k, l, m);
    const auto& s = x.sides;
    edges.push_back({s[A], s[B], r[0]});
    edges.push_back({s[B], s[C], r[1]});
    edges.push_back({s[C], s[D], r[2]});
    edges.push_back({s[D], s[A], r[3]});
  }
  auto z = detail::propagate(d.num_sides(), edges, tol, worst);
  const cplx last = z.back();
  for (auto& v : z) v /= last;
  return z;
}

/// Region values (last region normalized to 1) determined by a side solution.
inline std::vector<cplx> z_to_w(const LinkDiagram& d, const std::vector<cplx>& z,
                                double tol = 1e-9, double* worst = nullptr) {
  if (int(z.size()) != d.num_sides()) throw InputError("z_to_w: assignment size mismatch");
  if (!check_z_nondegenerate(d, z)) throw DegenerateError("z_to_w: z_a = z_c or z_b = z_d at some crossing");
  std::vector<detail::Edge> edges;
  std::vector<std::pair<const Crossing*, cplx>> fifth;
  for (const auto& x : d.crossings) {
    const auto r = region_ratios(x, z);
    const auto& g = x.regions;
    edges.push_back({g[J], g[M], r[0]});
    edges.push_back({g[J], g[K], r[1]});
    edges.push_back({g[L], g[K], r[2]});
    edges.push_back({g[L], g[M], r[3]});
    fifth.push_back({&x, r[4]});
  }
  double dev = 0.0;
  auto w = detail::propagate(d.num_regions(), edges, tol, &dev);
  for (auto [x, r] : fifth) {
    const auto [j, k, l, m] = detail::region_values(*x, w);
    dev = std::max(dev, std::abs(j * l / (k * m) - r) / std::abs(r));
  }
  if (worst) *worst = dev;
  if (dev > tol) throw InconsistentError("z_to_w: central shape disagrees with the region ratios");
  const cplx last = w.back();
  for (auto& v : w) v /= last;
  return w;
}

/// Max over k of |v_k / u_k - c| / |c| with c = v_0 / u_0: zero iff the two
/// vectors agree projectively.
inline double projective_distance(const std::vector<cplx>& u, const std::vector<cplx>& v) {
  if (u.size() != v.size() || u.empty()) return INFINITY;
  const cplx c = v[0] / u[0];
  double d = 0.0;
  for (size_t k = 0; k < u.size(); ++k) d = std::max(d, std::abs(v[k] / u[k] - c) / std::abs(c));
  return d;
}

struct Theorem2Report {
  std::vector<cplx> z;
  OptimisticResult W, V;
  double v_residual = 0.0;       // max |exp(mu) - 1| over all side equations
  double propagation_dev = 0.0;  // worst non-tree ratio mismatch
  double roundtrip_dev = 0.0;    // projective distance between w and z_to_w(z)
  bool congruent = false;        // W0 == V0 mod 4 pi^2 within tol
};

/// W-solution to V-solution, then compare optimistic limits. The region
/// potential uses the inverted log form on negative crossings.
inline Theorem2Report verify_theorem2(const LinkDiagram& d, const std::vector<cplx>& w,
                                      double tol = 1e-9) {
  Theorem2Report rep;
  const Potential P = assemble_W(d, NegativeLogForm::Inverted);
  const Potential Vp = assemble_V(d);
  rep.z = w_to_z(d, w, tol, &rep.propagation_dev);
  rep.W = w0(P, w);
  const auto vsys = build_system(Vp);
  rep.v_residual = full_residual(vsys, rep.z).cwiseAbs().maxCoeff();
  rep.V = w0(Vp, rep.z);
  rep.roundtrip_dev = projective_distance(w, z_to_w(d, rep.z, tol));
  rep.congruent = mod_eq(rep.W.raw, rep.V.raw, 4.0 * kPi2, tol);
  return rep;
}

/// Substitutes w_k -> tau_k * w_k^eps_k into every monomial.
inline Potential sign_flip(const Potential& p, const std::vector<int>& taus,
                           const std::vector<int>& eps) {
  if (int(taus.size()) != p.num_variables() || int(eps.size()) != p.num_variables())
    throw InputError("sign_flip: vectors must have one entry per variable");
  for (size_t i = 0; i < taus.size(); ++i)
    if (std::abs(taus[i]) != 1 || std::abs(eps[i]) != 1)
      throw InputError("sign_flip: entries must be +1 or -1");
  auto sub = [&](Monomial m) {
    for (auto& [v, e] : m.exps) {
      if (taus[v] < 0 && (e % 2 != 0)) m.coeff = -m.coeff;
      e *= eps[v];
    }
    return m;
  };
  Potential q = p;
  for (auto& t : q.terms) {
    if (t.kind != TermKind::Const) t.m1 = sub(t.m1);
    if (t.kind == TermKind::LogProd) t.m2 = sub(t.m2);
  }
  return q;
}

/// The point tau_k * w_k^eps_k of the flipped potential matching w.
inline std::vector<cplx> sign_flip_point(const std::vector<cplx>& w, const std::vector<int>& taus,
                                         const std::vector<int>& eps) {
  std::vector<cplx> out(w.size());
  for (size_t k = 0; k < w.size(); ++k)
    out[k] = double(taus[k]) * (eps[k] > 0 ? w[k] : 1.0 / w[k]);
  return out;
}

struct OctahedronCheck {
  std::array<cplx, 5> u{};
  double first = 0.0, second = 0.0;  // |difference| reduced mod 4 pi^2
  double d_additivity = 0.0;         // |sum D(t) - sum D(u)|
};

/// Five-term versus four-term subdivision of one octahedron: the two dilog
/// identities (mod 4 pi^2, principal branches) and additivity of D.
inline OctahedronCheck lemma62_check(cplx t1, cplx t2, cplx t3, cplx t4, double tol = 1e-12) {
  auto bad = [tol](cplx v) {
    return !std::isfinite(std::abs(v)) || std::abs(v) < tol || std::abs(v - 1.0) < tol ||
           std::abs(v) > 1.0 / tol;
  };
  for (cplx t : {t1, t2, t3, t4})
    if (bad(t)) throw DegenerateError("octahedron shape is 0, 1 or infinite");
  if (std::abs(t1 * t2 * t3 * t4 - 1.0) > 1e-9)
    throw InputError("octahedron shapes must satisfy t1 t2 t3 t4 = 1");
  OctahedronCheck r;
  const cplx u1 = prime(t1) * dprime(t4), u2 = prime(t1) * dprime(t2), u3 = prime(t3) * dprime(t2),
             u4 = prime(t3) * dprime(t4), u5 = 1.0 / (prime(t1) * dprime(t2) * prime(t3) * dprime(t4));
  r.u = {u1, u2, u3, u4, u5};
  for (cplx u : r.u)
    if (bad(u)) throw DegenerateError("derived octahedron shape is 0, 1 or infinite");

  auto L = [](cplx v) { return plog(v); };
  const cplx lhs = li2(t1) - li2(1.0 / t2) + li2(t3) - li2(1.0 / t4);
  const cplx Aa = -L(1.0 - t1) + L(1.0 - 1.0 / t4), Bb = -L(1.0 - t1) + L(1.0 - 1.0 / t2),
             Cc = -L(1.0 - t3) + L(1.0 - 1.0 / t2), Dd = -L(1.0 - t3) + L(1.0 - 1.0 / t4),
             Ee = L(1.0 - t1) - L(1.0 - 1.0 / t2) + L(1.0 - t3) - L(1.0 - 1.0 / t4);
  const cplx r1 = li2(u1) + li2(u2) - li2(1.0 / u3) - li2(1.0 / u4) + li2(u5) - kZeta2 +
                  L(u1) * L(u2) - Aa * L(u2) - Bb * L(u1) + Aa * L(1.0 - u1) + Bb * L(1.0 - u2) +
                  Cc * L(1.0 - 1.0 / u3) + Dd * L(1.0 - 1.0 / u4) + Ee * L(1.0 - u5);
  const cplx r2 = li2(u1) - li2(1.0 / u2) - li2(1.0 / u3) + li2(u4) - li2(1.0 / u5) + kZeta2 -
                  L(u2) * L(u3) + Cc * L(u2) + Bb * L(u3) + Aa * L(1.0 - u1) +
                  Bb * L(1.0 - 1.0 / u2) + Cc * L(1.0 - 1.0 / u3) + Dd * L(1.0 - u4) +
                  Ee * L(1.0 - 1.0 / u5);
  r.first = mod_dist(lhs, r1, 4.0 * kPi2);
  r.second = mod_dist(lhs, r2, 4.0 * kPi2);
  double dt = 0.0, du = 0.0;
  for (cplx t : {t1, t2, t3, t4}) dt += bloch_wigner(t);
  for (cplx u : r.u) du += bloch_wigner(u);
  r.d_additivity = std::abs(dt - du);
  return r;
}

}  // namespace optlim
