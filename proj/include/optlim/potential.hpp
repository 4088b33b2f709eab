#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "optlim/diagram.hpp"
#include "optlim/numerics.hpp"

namespace optlim {

/// coeff * prod w_v^e over (v, e) in exps. exps is sorted by variable with no
/// zero exponents; coeff is +1 or -1 (nontrivial only after sign flips).
struct Monomial {
  int coeff = 1;
  std::vector<std::pair<int, int>> exps;

  static Monomial ratio(std::initializer_list<int> num, std::initializer_list<int> den) {
    std::map<int, int> e;
    for (int v : num) ++e[v];
    for (int v : den) --e[v];
    Monomial m;
    for (auto [v, k] : e)
      if (k != 0) m.exps.push_back({v, k});
    return m;
  }

  int degree(int v) const {
    for (auto [u, e] : exps)
      if (u == v) return e;
    return 0;
  }
  int total_degree() const {
    int s = 0;
    for (auto [u, e] : exps) s += e;
    return s;
  }
  bool is_unit() const { return exps.empty() && coeff == 1; }

  cplx value(const std::vector<cplx>& w) const {
    cplx v = double(coeff);
    for (auto [u, e] : exps) {
      if (w[u] == cplx(0.0)) throw DegenerateError("variable is zero");
      if (e > 0)
        for (int i = 0; i < e; ++i) v *= w[u];
      else
        for (int i = 0; i < -e; ++i) v /= w[u];
    }
    return v;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

enum class TermKind { Dilog, LogProd, Const };

/// sign * Li2(m1), sign * log(m1) log(m2), or sign * pi^2/6.
struct Term {
  TermKind kind = TermKind::Const;
  int sign = 1;
  Monomial m1, m2;

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;
};

enum class PotentialKind { W, V };

/// Log-product form used for negative crossings in W.
/// Forward: -log(w_m/w_j) log(w_k/w_j). Inverted: -log(w_j/w_m) log(w_j/w_k).
enum class NegativeLogForm { Forward, Inverted };

struct Potential {
  PotentialKind kind = PotentialKind::W;
  std::vector<std::string> variables;
  std::vector<Term> terms;

  int num_variables() const { return int(variables.size()); }
  int count(TermKind k) const {
    return int(std::count_if(terms.begin(), terms.end(), [k](const Term& t) { return t.kind == k; }));
  }
};

inline Term dilog(int sign, Monomial m) { return {TermKind::Dilog, sign, std::move(m), {}}; }
inline Term logprod(int sign, Monomial a, Monomial b) {
  return {TermKind::LogProd, sign, std::move(a), std::move(b)};
}
inline Term zeta2(int sign) { return {TermKind::Const, sign, {}, {}}; }

inline std::vector<Term> crossing_terms_W(const Crossing& x,
                                          NegativeLogForm form = NegativeLogForm::Forward) {
  const int j = x.regions[J], k = x.regions[K], l = x.regions[L], m = x.regions[M];
  const int s = x.sign;
  using R = Monomial;
  std::vector<Term> t{
      dilog(-s, R::ratio({l}, {m})),
      dilog(-s, R::ratio({l}, {k})),
      dilog(s, R::ratio({j, l}, {k, m})),
      dilog(s, R::ratio({m}, {j})),
      dilog(s, R::ratio({k}, {j})),
      zeta2(-s),
  };
  if (s < 0 && form == NegativeLogForm::Inverted)
    t.push_back(logprod(s, R::ratio({j}, {m}), R::ratio({j}, {k})));
  else
    t.push_back(logprod(s, R::ratio({m}, {j}), R::ratio({k}, {j})));
  return t;
}

inline Potential assemble_W(const LinkDiagram& d, NegativeLogForm form = NegativeLogForm::Forward) {
  Potential p{PotentialKind::W, d.region_names, {}};
  for (const auto& x : d.crossings) {
    auto t = crossing_terms_W(x, form);
    p.terms.insert(p.terms.end(), t.begin(), t.end());
  }
  return p;
}

/// Li2(zb/za) - Li2(zb/zc) + Li2(zd/zc) - Li2(zd/za) in the over-strand frame.
/// For a negative crossing that frame is the normal form rotated a quarter
/// turn, so (a,b,c,d) enters as (d,a,b,c).
inline std::vector<Term> crossing_terms_V(const Crossing& x) {
  const auto& s = x.sides;
  if (s[A] == s[B] || s[B] == s[C] || s[C] == s[D] || s[D] == s[A])
    throw InputError("kink at crossing: adjacent corner sides coincide");
  int a = s[A], b = s[B], c = s[C], d = s[D];
  if (x.sign < 0) {
    const int a0 = a;
    a = d;
    d = c;
    c = b;
    b = a0;
  }
  using R = Monomial;
  return {dilog(1, R::ratio({b}, {a})), dilog(-1, R::ratio({b}, {c})),
          dilog(1, R::ratio({d}, {c})), dilog(-1, R::ratio({d}, {a}))};
}

inline Potential assemble_V(const LinkDiagram& d) {
  Potential p{PotentialKind::V, d.side_names, {}};
  for (const auto& x : d.crossings) {
    auto t = crossing_terms_V(x);
    p.terms.insert(p.terms.end(), t.begin(), t.end());
  }
  return p;
}

inline bool essential_value(cplx v) { return v != cplx(0.0) && std::abs(v - 1.0) > 1e-14; }

/// Sum of the terms at w, principal branch, monomials evaluated before logs.
inline cplx evaluate(const Potential& p, const std::vector<cplx>& w) {
  if (int(w.size()) != p.num_variables()) throw InputError("assignment size mismatch");
  for (auto v : w) {
    detail::require_finite(v, "evaluate");
    if (v == cplx(0.0)) throw DegenerateError("variable is zero");
  }
  cplx sum = 0.0;
  for (const auto& t : p.terms) {
    switch (t.kind) {
      case TermKind::Dilog: {
        const cplx v = t.m1.value(w);
        if (!essential_value(v)) throw DegenerateError("dilogarithm argument is 0 or 1");
        sum += double(t.sign) * li2(v);
        break;
      }
      case TermKind::LogProd:
        sum += double(t.sign) * plog(t.m1.value(w)) * plog(t.m2.value(w));
        break;
      case TermKind::Const:
        sum += double(t.sign) * kZeta2;
        break;
    }
  }
  return sum;
}

/// Multiset equality of terms, after mapping p's variables into q's by perm.
inline bool same_terms(const Potential& p, const Potential& q, const std::vector<int>& perm = {}) {
  auto remap = [&](Monomial m) {
    if (!perm.empty()) {
      for (auto& [v, e] : m.exps) v = perm[v];
      std::sort(m.exps.begin(), m.exps.end());
    }
    return m;
  };
  auto canon = [](Term t) {
    if (t.kind == TermKind::LogProd && t.m2 < t.m1) std::swap(t.m1, t.m2);
    return t;
  };
  std::vector<Term> a, b;
  for (auto t : p.terms) {
    t.m1 = remap(t.m1);
    t.m2 = remap(t.m2);
    a.push_back(canon(t));
  }
  for (const auto& t : q.terms) b.push_back(canon(t));
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

inline nlohmann::json monomial_to_json(const Monomial& m, const Potential& p) {
  nlohmann::json e = nlohmann::json::object();
  for (auto [v, k] : m.exps) e[p.variables[v]] = k;
  return {{"coeff", m.coeff}, {"exponents", e}};
}

inline nlohmann::json potential_to_json(const Potential& p) {
  nlohmann::json j;
  j["kind"] = p.kind == PotentialKind::W ? "W" : "V";
  j["variables"] = p.variables;
  j["terms"] = nlohmann::json::array();
  for (const auto& t : p.terms) {
    nlohmann::json o{{"sign", t.sign}};
    if (t.kind == TermKind::Dilog) {
      o["type"] = "dilog";
      o["arg"] = monomial_to_json(t.m1, p);
    } else if (t.kind == TermKind::LogProd) {
      o["type"] = "logprod";
      o["arg1"] = monomial_to_json(t.m1, p);
      o["arg2"] = monomial_to_json(t.m2, p);
    } else {
      o["type"] = "zeta2";
    }
    j["terms"].push_back(o);
  }
  return j;
}

inline Potential potential_from_json(const nlohmann::json& j) {
  Potential p;
  try {
    p.kind = j.at("kind").get<std::string>() == "V" ? PotentialKind::V : PotentialKind::W;
    p.variables = j.at("variables").get<std::vector<std::string>>();
    std::map<std::string, int> idx;
    for (int i = 0; i < p.num_variables(); ++i) idx[p.variables[i]] = i;
    auto mono = [&](const nlohmann::json& o) {
      Monomial m;
      m.coeff = o.value("coeff", 1);
      for (auto& [name, e] : o.at("exponents").items()) {
        auto it = idx.find(name);
        if (it == idx.end()) throw InputError("potential JSON: unknown variable " + name);
        if (e.get<int>() != 0) m.exps.push_back({it->second, e.get<int>()});
      }
      std::sort(m.exps.begin(), m.exps.end());
      return m;
    };
    for (const auto& o : j.at("terms")) {
      const auto type = o.at("type").get<std::string>();
      const int s = o.at("sign").get<int>();
      if (type == "dilog")
        p.terms.push_back(dilog(s, mono(o.at("arg"))));
      else if (type == "logprod")
        p.terms.push_back(logprod(s, mono(o.at("arg1")), mono(o.at("arg2"))));
      else if (type == "zeta2")
        p.terms.push_back(zeta2(s));
      else
        throw InputError("potential JSON: unknown term type " + type);
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("potential JSON: ") + e.what());
  }
  return p;
}

}  // namespace optlim
