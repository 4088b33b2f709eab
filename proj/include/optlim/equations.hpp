#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "optlim/potential.hpp"

namespace optlim {

enum class AtomKind { Log1m, Log };

/// coeff * log(1 - m) or coeff * log(m).
struct LogAtom {
  int coeff = 0;
  AtomKind kind = AtomKind::Log;
  Monomial m;
};

/// mu_k = w_k dP/dw_k as a sum of integer multiples of principal logs.
struct LogDerivative {
  int var = -1;
  std::vector<LogAtom> atoms;
};

inline LogDerivative log_derivative(const Potential& p, int k) {
  if (k < 0 || k >= p.num_variables()) throw InputError("log_derivative: unknown variable");
  std::map<std::pair<AtomKind, Monomial>, int> acc;
  for (const auto& t : p.terms) {
    if (t.kind == TermKind::Dilog) {
      const int dk = t.m1.degree(k);
      if (dk) acc[{AtomKind::Log1m, t.m1}] += -t.sign * dk;
    } else if (t.kind == TermKind::LogProd) {
      const int d1 = t.m1.degree(k), d2 = t.m2.degree(k);
      if (d1) acc[{AtomKind::Log, t.m2}] += t.sign * d1;
      if (d2) acc[{AtomKind::Log, t.m1}] += t.sign * d2;
    }
  }
  LogDerivative ld{k, {}};
  for (const auto& [key, c] : acc)
    if (c != 0) ld.atoms.push_back({c, key.first, key.second});
  return ld;
}

inline std::vector<LogDerivative> log_derivatives(const Potential& p) {
  std::vector<LogDerivative> out;
  for (int k = 0; k < p.num_variables(); ++k) out.push_back(log_derivative(p, k));
  return out;
}

/// Branch-aware value of mu_k (principal logs of monomial values).
inline cplx evaluate_mu(const LogDerivative& ld, const std::vector<cplx>& w) {
  cplx s = 0.0;
  for (const auto& a : ld.atoms) {
    const cplx v = a.m.value(w);
    s += double(a.coeff) * plog(a.kind == AtomKind::Log1m ? 1.0 - v : v);
  }
  return s;
}

/// Coefficient-level check: every log atom's coefficients sum to zero over k.
inline bool euler_identity_symbolic(const std::vector<LogDerivative>& lds) {
  std::map<std::pair<AtomKind, Monomial>, long> tot;
  for (const auto& ld : lds)
    for (const auto& a : ld.atoms) tot[{a.kind, a.m}] += a.coeff;
  return std::all_of(tot.begin(), tot.end(), [](const auto& kv) { return kv.second == 0; });
}

/// exp(mu_k) = prod (1 - v)^e * prod v^e; residual is that product minus 1.
struct Equation {
  int var = -1;
  std::vector<LogAtom> factors;
};

struct EquationSystem {
  int n = 0;
  int pin = -1;
  std::vector<Equation> equations;   // one per variable, including the pinned one
  std::vector<int> active;           // equation indices kept in the square system
  std::vector<int> unknowns;         // variable indices other than pin
  std::vector<Monomial> dilog_args;  // for the essentialness test
  std::vector<LogDerivative> mu;

  int size() const { return int(unknowns.size()); }

  /// Full assignment from values of the unknowns, pin set to 1.
  std::vector<cplx> expand(const Eigen::VectorXcd& x) const {
    std::vector<cplx> w(n, cplx(1.0));
    for (int i = 0; i < size(); ++i) w[unknowns[i]] = x[i];
    return w;
  }
  Eigen::VectorXcd restrict(const std::vector<cplx>& w) const {
    Eigen::VectorXcd x(size());
    for (int i = 0; i < size(); ++i) x[i] = w[unknowns[i]];
    return x;
  }
};

/// Pins variable `pin` to 1 and drops its equation (the product of all
/// exp(mu_k) is identically 1, so one equation is redundant).
inline EquationSystem build_system(const Potential& p, int pin = -1) {
  EquationSystem sys;
  sys.n = p.num_variables();
  sys.pin = pin < 0 ? sys.n - 1 : pin;
  if (sys.pin >= sys.n) throw InputError("build_system: pin out of range");
  sys.mu = log_derivatives(p);
  for (const auto& ld : sys.mu) sys.equations.push_back({ld.var, ld.atoms});
  for (int k = 0; k < sys.n; ++k)
    if (k != sys.pin) {
      sys.active.push_back(k);
      sys.unknowns.push_back(k);
    }
  std::set<Monomial> args;
  for (const auto& t : p.terms)
    if (t.kind == TermKind::Dilog) args.insert(t.m1);
  sys.dilog_args.assign(args.begin(), args.end());
  return sys;
}

/// Values of every dilogarithm argument, throwing on 0 or 1.
inline void require_essential(const EquationSystem& sys, const std::vector<cplx>& w) {
  for (auto v : w)
    if (v == cplx(0.0) || !std::isfinite(std::abs(v))) throw DegenerateError("variable is zero or infinite");
  for (const auto& m : sys.dilog_args)
    if (!essential_value(m.value(w))) throw DegenerateError("non-essential point: a dilogarithm argument is 0 or 1");
}

inline bool is_essential(const EquationSystem& sys, const std::vector<cplx>& w, double tol) {
  for (auto v : w)
    if (!(std::abs(v) > 0.0) || !std::isfinite(std::abs(v))) return false;
  for (const auto& m : sys.dilog_args) {
    const cplx v = m.value(w);
    const double a = std::abs(v);
    if (a < tol || std::abs(v - 1.0) < tol || a > 1.0 / tol) return false;
  }
  return true;
}

inline cplx equation_product(const Equation& eq, const std::vector<cplx>& w) {
  cplx prod = 1.0;
  for (const auto& f : eq.factors) {
    const cplx v = f.m.value(w);
    const cplx base = f.kind == AtomKind::Log1m ? 1.0 - v : v;
    if (f.coeff > 0)
      for (int i = 0; i < f.coeff; ++i) prod *= base;
    else
      for (int i = 0; i < -f.coeff; ++i) prod /= base;
  }
  return prod;
}

/// exp(mu_k) - 1 for the active equations.
inline Eigen::VectorXcd residual(const EquationSystem& sys, const std::vector<cplx>& w) {
  require_essential(sys, w);
  Eigen::VectorXcd r(sys.active.size());
  for (size_t i = 0; i < sys.active.size(); ++i)
    r[i] = equation_product(sys.equations[sys.active[i]], w) - 1.0;
  return r;
}

/// All n residuals, including the dropped equation.
inline Eigen::VectorXcd full_residual(const EquationSystem& sys, const std::vector<cplx>& w) {
  require_essential(sys, w);
  Eigen::VectorXcd r(sys.n);
  for (int k = 0; k < sys.n; ++k) r[k] = equation_product(sys.equations[k], w) - 1.0;
  return r;
}

/// d residual_i / d log w_q for the unknowns q (that is, w_q d/dw_q).
inline Eigen::MatrixXcd jacobian_log(const EquationSystem& sys, const std::vector<cplx>& w) {
  const int m = sys.size();
  Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(int(sys.active.size()), m);
  std::vector<int> col(sys.n, -1);
  for (int i = 0; i < m; ++i) col[sys.unknowns[i]] = i;
  for (size_t i = 0; i < sys.active.size(); ++i) {
    const auto& eq = sys.equations[sys.active[i]];
    const cplx F = equation_product(eq, w);
    for (const auto& f : eq.factors) {
      const cplx v = f.m.value(w);
      // w_q d/dw_q log(v) = deg_q; of log(1 - v) it is -deg_q v / (1 - v).
      const cplx g = f.kind == AtomKind::Log ? cplx(1.0) : -v / (1.0 - v);
      for (auto [q, e] : f.m.exps)
        if (col[q] >= 0) J(int(i), col[q]) += F * double(f.coeff) * double(e) * g;
    }
  }
  return J;
}

/// d residual / d w_q (plain coordinates).
inline Eigen::MatrixXcd jacobian(const EquationSystem& sys, const std::vector<cplx>& w) {
  Eigen::MatrixXcd J = jacobian_log(sys, w);
  for (int q = 0; q < sys.size(); ++q) J.col(q) /= w[sys.unknowns[q]];
  return J;
}

inline std::vector<cplx> evaluate_mus(const EquationSystem& sys, const std::vector<cplx>& w) {
  std::vector<cplx> out;
  for (const auto& ld : sys.mu) out.push_back(evaluate_mu(ld, w));
  return out;
}

}  // namespace optlim
