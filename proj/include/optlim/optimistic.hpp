#pragma once

#include <cmath>
#include <vector>

#include "optlim/diagram.hpp"
#include "optlim/equations.hpp"

namespace optlim {

struct OptimisticResult {
  cplx raw;            // unreduced, principal branch
  cplx w0;             // raw with the real part reduced mod pi^2 into (-pi^2/2, pi^2/2]
  double vol = 0.0;    // Im raw
  double cs_mod_pi2 = 0.0;
  double bw_vol = 0.0; // signed Bloch-Wigner sum over the dilogarithm terms
  std::vector<long> mu_integers;
};

/// Rounds mu_k / (2 pi i); throws if some mu_k is farther than tol from 2 pi i Z.
inline std::vector<long> mu_integers(const std::vector<cplx>& mus, double tol = 1e-6) {
  std::vector<long> out;
  for (size_t k = 0; k < mus.size(); ++k) {
    const double q = mus[k].imag() / (2.0 * kPi);
    const long r = std::lround(q);
    if (std::abs(mus[k] - kTwoPiI * double(r)) > tol)
      throw ConvergenceError("not a solution: mu_" + std::to_string(k) + " = (" +
                             std::to_string(mus[k].real()) + ", " +
                             std::to_string(mus[k].imag()) + ") is not in 2 pi i Z");
    out.push_back(r);
  }
  return out;
}

/// Signed Bloch-Wigner sum over the dilogarithm terms of any potential.
inline double bw_volume(const Potential& p, const std::vector<cplx>& w) {
  double s = 0.0;
  for (const auto& t : p.terms)
    if (t.kind == TermKind::Dilog) s += t.sign * bloch_wigner(t.m1.value(w));
  return s;
}

/// Octahedral volume read off the diagram: per crossing,
/// sign * [D(wm/wj) + D(wk/wj) - D(wl/wk) - D(wl/wm) + D(wj wl/(wk wm))].
inline double bw_volume(const LinkDiagram& d, const std::vector<cplx>& w) {
  double s = 0.0;
  for (const auto& x : d.crossings) {
    const cplx j = w[x.regions[J]], k = w[x.regions[K]], l = w[x.regions[L]], m = w[x.regions[M]];
    s += x.sign * (bloch_wigner(m / j) + bloch_wigner(k / j) - bloch_wigner(l / k) -
                   bloch_wigner(l / m) + bloch_wigner(j * l / (k * m)));
  }
  return s;
}

/// W0 = W - sum_k mu_k log w_k with mu_k snapped to 2 pi i Z.
inline OptimisticResult w0(const Potential& p, const std::vector<cplx>& w, double mu_tol = 1e-6) {
  OptimisticResult r;
  std::vector<cplx> mus;
  for (int k = 0; k < p.num_variables(); ++k) mus.push_back(evaluate_mu(log_derivative(p, k), w));
  r.mu_integers = mu_integers(mus, mu_tol);
  r.raw = evaluate(p, w);
  for (int k = 0; k < p.num_variables(); ++k)
    if (r.mu_integers[k] != 0) r.raw -= kTwoPiI * double(r.mu_integers[k]) * plog(w[k]);
  r.vol = r.raw.imag();
  r.cs_mod_pi2 = reduce_centered(-r.raw.real(), kPi2);
  r.w0 = {-r.cs_mod_pi2, r.vol};
  r.bw_vol = bw_volume(p, w);
  return r;
}

/// Im a ~ Im b within tol and Re(a - b) within tol of modulus * Z.
inline bool mod_eq(cplx a, cplx b, double modulus, double tol) {
  if (!(modulus > 0.0)) throw InputError("mod_eq: modulus must be positive");
  if (std::abs(a.imag() - b.imag()) > tol) return false;
  return std::abs(reduce_centered(a.real() - b.real(), modulus)) <= tol;
}

/// Distance of Re(a - b) from modulus * Z, plus |Im(a - b)|.
inline double mod_dist(cplx a, cplx b, double modulus) {
  return std::abs(reduce_centered(a.real() - b.real(), modulus)) + std::abs(a.imag() - b.imag());
}

}  // namespace optlim
