// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

#include "support.hpp"

using namespace optlim;

namespace {

struct Case {
  std::string label;
  LinkDiagram diagram;
  std::vector<cplx> w;
};

struct Shared {
  std::vector<Case> twist;    // parametrized solutions of T1..T5
  std::vector<Case> solved;   // solver output on 4_1 and 5_2
  std::vector<OptimisticResult> solved_vals;
};

Shared& shared() {
  static Shared s;
  return s;
}

cplx printed(double vol, double cs) { return {-cs, vol}; }

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

std::vector<Potential> test_potentials() {
  std::vector<Potential> out;
  for (const char* name : {"4_1", "5_2", "T1", "T2", "T3", "T4", "T5"}) {
    const auto d = builtin(name);
    out.push_back(assemble_W(d));
    out.push_back(assemble_W(d, NegativeLogForm::Inverted));
    out.push_back(assemble_V(d));
  }
  return out;
}

using Result = std::pair<bool, std::string>;

Result criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  int rows = 0, ok = 0;
  std::ostringstream bad;
  for (int n = 1; n <= 5; ++n) {
    const auto P = twist_potential(n);
    const auto d = builtin("T" + std::to_string(n));
    for (auto t : twist_roots(n)) {
      const auto w = parametrize(n, t).regions();
      const auto r = w0(P, w);
      const auto& row = table3_match(n, t);
      ++rows;
      const double dv = std::abs(r.vol - row.vol), dc = std::abs(-r.raw.real() - row.cs);
      if (dv <= 5e-4 && dc <= 5e-4) {
        ++ok;
      } else {
        bad << " [n=" << n << " t=" << t.real() << (t.imag() < 0 ? "" : "+") << t.imag()
            << "i: computed i(" << r.vol << (-r.raw.real() < 0 ? "" : "+") << -r.raw.real()
            << "i), printed i(" << row.vol << (row.cs < 0 ? "" : "+") << row.cs << "i)]";
      }
      std::ostringstream label;
      label << "T" << n << " t=" << t;
      shared().twist.push_back({label.str(), d, w});
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream msg;
  msg << ok << "/" << rows << " rows within 5e-4, " << secs << " s" << bad.str();
  return {rows == 20 && ok == rows && secs < 10.0, msg.str()};
}

Result criterion2() {
  auto realizes = [](const std::vector<OptimisticResult>& vals, cplx target) {
    for (const auto& v : vals)
      if (mod_eq(v.raw, target, 4 * kPi2, 5e-4)) return true;
    return false;
  };
  std::ostringstream msg;
  bool pass = true;
  for (const char* name : {"4_1", "5_2"}) {
    const auto d = builtin(name);
    const auto P = assemble_W(d);
    const auto sols = solve(build_system(P), SolveConfig{});
    std::vector<OptimisticResult> vals;
    for (const auto& s : sols) {
      vals.push_back(w0(P, s.assignment));
      shared().solved.push_back({std::string(name) + " #" + std::to_string(s.component_hint), d,
                                 s.assignment});
      shared().solved_vals.push_back(vals.back());
    }
    msg << name << ": " << sols.size() << " solutions; ";
    if (std::string(name) == "4_1") {
      for (double sgn : {1.0, -1.0}) {
        bool hit = false;
        for (const auto& v : vals)
          if (std::abs(v.vol - sgn * 2.0299) <= 5e-4 &&
              std::abs(reduce_centered(v.raw.real(), kPi2)) <= 1e-6)
            hit = true;
        pass &= hit;
        msg << "vol " << sgn * 2.0299 << (hit ? " found; " : " MISSING; ");
      }
    } else {
      for (const auto& row : table3_rows(2)) {
        const bool hit = realizes(vals, printed(row.vol, row.cs));
        pass &= hit;
        msg << "i(" << row.vol << (row.cs < 0 ? "" : "+") << row.cs << "i)"
            << (hit ? " found; " : " MISSING; ");
      }
    }
  }
  return {pass, msg.str()};
}

Result criterion3() {
  const auto p = assemble_W(builtin("4_1"));
  Potential printed{PotentialKind::W, p.variables, oracle::printed_figure_eight()};
  const bool ok = same_terms(p, printed);
  return {ok, ok ? "28-term multiset identical to the printed four-brace potential"
                 : "term multisets differ"};
}

Result criterion4() {
  double worst_res = 0.0, worst_closed = 0.0;
  int pairs = 0;
  for (int n = 1; n <= 5; ++n) {
    const auto sys = build_system(twist_potential(n));
    const auto dsys = build_system(assemble_W(builtin("T" + std::to_string(n))));
    for (auto t : twist_roots(n)) {
      ++pairs;
      const auto p = parametrize(n, t);
      worst_res = std::max(worst_res, full_residual(sys, p.regions()).cwiseAbs().maxCoeff());
      worst_res = std::max(worst_res, full_residual(dsys, p.regions()).cwiseAbs().maxCoeff());
      for (int k = 0; k <= n + 1; ++k) worst_closed = std::max(worst_closed, rel(p.w[k], table2_w(k, t)));
    }
  }
  std::ostringstream msg;
  msg << pairs << " pairs, max residual " << worst_res << ", max closed-form deviation "
      << worst_closed;
  return {pairs == 20 && worst_res < 1e-9 && worst_closed < 1e-10, msg.str()};
}

Result criterion5() {
  int checked = 0, skipped = 0, failed = 0;
  double vres = 0.0, rt = 0.0, cong = 0.0;
  std::vector<const Case*> all;
  for (const auto& c : shared().twist) all.push_back(&c);
  for (const auto& c : shared().solved) all.push_back(&c);
  for (const auto* c : all) {
    if (!check_w_nondegenerate(c->diagram, c->w)) {
      ++skipped;
      continue;
    }
    try {
      const auto r = verify_theorem2(c->diagram, c->w);
      ++checked;
      vres = std::max(vres, r.v_residual);
      rt = std::max(rt, r.roundtrip_dev);
      cong = std::max(cong, mod_dist(r.W.raw, r.V.raw, 4 * kPi2));
      if (!(r.congruent && r.v_residual < 1e-9 && r.roundtrip_dev < 1e-9)) ++failed;
    } catch (const Error& e) {
      ++checked;
      ++failed;
    }
  }
  std::ostringstream msg;
  msg << checked << " nondegenerate solutions (" << skipped << " degenerate skipped), max V residual "
      << vres << ", max round trip " << rt << ", max |W0 - V0| mod 4pi^2 " << cong;
  return {checked > 0 && failed == 0, msg.str()};
}

Result criterion6() {
  double worst = 0.0;
  int n = 0;
  std::vector<const Case*> all;
  for (const auto& c : shared().twist) all.push_back(&c);
  for (const auto& c : shared().solved) all.push_back(&c);
  for (const auto* c : all) {
    for (auto form : {NegativeLogForm::Forward, NegativeLogForm::Inverted}) {
      const auto r = w0(assemble_W(c->diagram, form), c->w);
      worst = std::max(worst, std::abs(r.vol - bw_volume(c->diagram, c->w)));
      worst = std::max(worst, std::abs(r.vol - r.bw_vol));
    }
    ++n;
  }
  std::ostringstream msg;
  msg << n << " solutions, max |Im W0 - BW sum| " << worst;
  return {n > 0 && worst < 1e-9, msg.str()};
}

Result criterion7() {
  std::mt19937_64 rng(1007);
  bool symbolic = true;
  double worst = 0.0;
  int pots = 0;
  for (const auto& p : test_potentials()) {
    ++pots;
    const auto sys = build_system(p);
    symbolic &= euler_identity_symbolic(sys.mu);
    int used = 0;
    while (used < 1000) {
      const auto w = oracle::random_point(rng, p.num_variables());
      if (!is_essential(sys, w, 1e-8)) continue;
      ++used;
      cplx s = 0.0;
      for (auto mu : evaluate_mus(sys, w)) s += mu;
      worst = std::max(worst, std::abs(s));
    }
  }
  std::ostringstream msg;
  msg << pots << " potentials, symbolic cancellation " << (symbolic ? "exact" : "BROKEN")
      << ", max |sum mu| " << worst << " over 1000 points each";
  return {symbolic && worst < 1e-12, msg.str()};
}

Result criterion8() {
  std::mt19937_64 rng(1008);
  std::uniform_int_distribution<int> coin(0, 1);
  double scale = 0.0, variant = 0.0, flip = 0.0;
  int sols = 0;
  std::vector<const Case*> all;
  for (const auto& c : shared().twist) all.push_back(&c);
  for (const auto& c : shared().solved) all.push_back(&c);
  for (const auto* c : all) {
    ++sols;
    const auto F = assemble_W(c->diagram), I = assemble_W(c->diagram, NegativeLogForm::Inverted);
    const auto base = w0(F, c->w);
    variant = std::max(variant, mod_dist(base.raw, w0(I, c->w).raw, 4 * kPi2));
    const int pin = int(c->w.size()) - 1;
    for (int i = 0; i < 20; ++i) {
      auto lw = c->w;
      const cplx lambda = oracle::random_annulus(rng);
      for (auto& v : lw) v *= lambda;
      scale = std::max(scale, mod_dist(base.raw, w0(F, normalize(lw, pin)).raw, 4 * kPi2));
      scale = std::max(scale, mod_dist(base.raw, w0(F, lw).raw, 4 * kPi2));

      const int n = int(c->w.size());
      std::vector<int> tau(n), eps(n);
      for (auto& v : tau) v = coin(rng) ? 1 : -1;
      for (auto& v : eps) v = coin(rng) ? 1 : -1;
      const auto r = w0(sign_flip(F, tau, eps), sign_flip_point(c->w, tau, eps));
      flip = std::max(flip, mod_dist(base.raw, r.raw, 2 * kPi2));
    }
  }
  std::ostringstream msg;
  msg << sols << " solutions; scaling " << scale << ", log-form variant " << variant
      << " (mod 4pi^2); sign flips " << flip << " (mod 2pi^2)";
  return {sols > 0 && scale < 1e-9 && variant < 1e-9 && flip < 1e-9, msg.str()};
}

Result criterion9() {
  std::mt19937_64 rng(1009);
  double worst = 0.0;
  int pots = 0;
  for (const auto& p : test_potentials()) {
    ++pots;
    const auto lds = log_derivatives(p);
    int used = 0;
    while (used < 100) {
      const auto w = oracle::random_point(rng, p.num_variables());
      if (!oracle::away_from_cuts(p, w, 1e-3)) continue;
      ++used;
      for (int k = 0; k < p.num_variables(); ++k) {
        const cplx mu = evaluate_mu(lds[k], w);
        worst = std::max(worst, rel(mu, oracle::mu_finite_difference(p, w, k)));
      }
    }
  }
  std::ostringstream msg;
  msg << pots << " potentials x 100 points, max relative error " << worst;
  return {worst < 1e-6, msg.str()};
}

Result criterion10() {
  const double l2 = std::log(2.0);
  const double c1 = std::abs(li2(-1.0) + kPi2 / 12);
  const double c2 = std::abs(li2(0.5) - (kPi2 / 12 - l2 * l2 / 2));
  std::mt19937_64 rng(1010);
  double refl = 0.0, inv = 0.0, conj = 0.0, five = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const cplx z = oracle::random_annulus(rng);
    refl = std::max(refl, std::abs(li2(z) + li2(1.0 - z) - (kZeta2 - plog(z) * plog(1.0 - z))));
    const cplx l = plog(-z);
    inv = std::max(inv, std::abs(li2(z) + li2(1.0 / z) + kZeta2 + 0.5 * l * l));
    conj = std::max(conj, std::abs(li2(std::conj(z)) - std::conj(li2(z))));
    const cplx x = oracle::random_annulus(rng), y = oracle::random_annulus(rng);
    const cplx xy = 1.0 - x * y;
    five = std::max(five, std::abs(bloch_wigner(x) + bloch_wigner(y) + bloch_wigner((1.0 - x) / xy) +
                                   bloch_wigner(xy) + bloch_wigner((1.0 - y) / xy)));
  }
  double oct = 0.0, add = 0.0;
  int used = 0;
  while (used < 1000) {
    const cplx t1 = oracle::random_annulus(rng, 0.2, 5.0), t2 = oracle::random_annulus(rng, 0.2, 5.0),
               t3 = oracle::random_annulus(rng, 0.2, 5.0);
    try {
      const auto r = lemma62_check(t1, t2, t3, 1.0 / (t1 * t2 * t3));
      oct = std::max({oct, r.first, r.second});
      add = std::max(add, r.d_additivity);
      ++used;
    } catch (const DegenerateError&) {
    }
  }
  std::ostringstream msg;
  msg << "closed forms " << std::max(c1, c2) << "; 1e4 samples: reflection " << refl << ", inversion "
      << inv << ", conjugation " << conj << ", five-term " << five << "; 1e3 octahedra: identities "
      << oct << ", D additivity " << add;
  const bool ok = c1 < 1e-13 && c2 < 1e-13 && refl < 1e-11 && inv < 1e-11 && conj < 1e-11 &&
                  five < 1e-11 && oct < 1e-9 && add < 1e-10;
  return {ok, msg.str()};
}

}  // namespace

int main() {
  const std::vector<std::function<Result()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                      criterion5, criterion6, criterion7, criterion8,
                                                      criterion9, criterion10};
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Result r;
    try {
      r = criteria[i]();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    failures += !r.first;
    std::printf("%s criterion %zu: %s\n", r.first ? "PASS" : "FAIL", i + 1, r.second.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
