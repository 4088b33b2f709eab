#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace optlim;
using Catch::Approx;

TEST_CASE("plog uses arg in (-pi, pi]") {
  CHECK(std::abs(plog(1.0)) == 0.0);
  CHECK(std::abs(plog(-1.0) - cplx(0, kPi)) < 1e-15);
  CHECK(std::abs(plog(cplx(-1.0, -0.0)) - cplx(0, kPi)) < 1e-15);
  CHECK(std::abs(plog(cplx(0, std::exp(1.0))) - cplx(1.0, kPi / 2)) < 1e-15);
  CHECK_THROWS_AS(plog(0.0), DegenerateError);
  CHECK_THROWS_AS(plog(cplx(NAN, 0)), InputError);
}

TEST_CASE("li2 closed forms") {
  CHECK(std::abs(li2(0.0)) == 0.0);
  CHECK(std::abs(li2(1.0) - kZeta2) < 1e-15);
  CHECK(std::abs(li2(-1.0) + kPi2 / 12) < 1e-13);
  const double l2 = std::log(2.0);
  CHECK(std::abs(li2(0.5) - (kPi2 / 12 - l2 * l2 / 2)) < 1e-13);
  // Li2(2) = pi^2/4 - i pi log 2 (limit from below the cut)
  CHECK(std::abs(li2(2.0) - cplx(kPi2 / 4, -kPi * l2)) < 1e-13);
  CHECK(std::abs(li2(cplx(2.0, -0.0)) - cplx(kPi2 / 4, -kPi * l2)) < 1e-13);
}

TEST_CASE("li2 agrees with quadrature and series oracles") {
  const cplx z(2.0, 3.0);
  const cplx q = oracle::li2_quadrature(z), s = oracle::li2_series(z), v = li2(z);
  CHECK(std::abs(q - s) < 1e-12);
  CHECK(std::abs(v - q) < 1e-12 * std::abs(q));
  CHECK(std::abs(v - s) < 1e-13 * std::abs(s));

  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const cplx z = oracle::random_annulus(rng, 0.05, 20.0);
    INFO("z = " << z);
    const double r = std::abs(z);
    if (r < 0.7 || r > 1.4) {
      const cplx ref = oracle::li2_series(z);
      CHECK(std::abs(li2(z) - ref) <= 1e-13 * std::max(1.0, std::abs(ref)));
    } else if (std::abs(1.0 - z) > 0.3) {
      // the series converges too slowly near the unit circle
      const cplx ref = oracle::li2_quadrature(z);
      CHECK(std::abs(li2(z) - ref) <= 1e-12);
    }
  }
}

TEST_CASE("li2 is continuous from below on the cut") {
  for (double x : {1.5, 2.0, 3.0, 10.0}) {
    const cplx below = li2(cplx(x, -1e-12));
    CHECK(std::abs(li2(x) - below) < 1e-9);
    CHECK(li2(x).imag() == Approx(-kPi * std::log(x)).epsilon(1e-13));
  }
}

TEST_CASE("dilogarithm functional equations") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const cplx z = oracle::random_annulus(rng);
    INFO("z = " << z);
    // reflection
    CHECK(std::abs(li2(z) + li2(1.0 - z) - (kZeta2 - plog(z) * plog(1.0 - z))) < 1e-11);
    // inversion
    const cplx l = plog(-z);
    CHECK(std::abs(li2(z) + li2(1.0 / z) - (-kZeta2 - 0.5 * l * l)) < 1e-11);
    // conjugation
    CHECK(std::abs(li2(std::conj(z)) - std::conj(li2(z))) < 1e-12);
  }
}

TEST_CASE("Bloch-Wigner function") {
  CHECK(bloch_wigner(std::polar(1.0, kPi / 3)) == Approx(1.0149416064096536).epsilon(1e-13));
  CHECK(2 * bloch_wigner(std::polar(1.0, kPi / 3)) == Approx(2.0299).margin(5e-4));
  for (double x : {0.1, 0.5, 0.9, -3.0, 4.0}) CHECK(std::abs(bloch_wigner(x)) < 1e-14);
  CHECK_THROWS_AS(bloch_wigner(0.0), DegenerateError);
  CHECK_THROWS_AS(bloch_wigner(1.0), DegenerateError);

  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const cplx z = oracle::random_annulus(rng);
    CHECK(std::abs(bloch_wigner(std::conj(z)) + bloch_wigner(z)) < 1e-12);
    CHECK(std::abs(bloch_wigner(1.0 / z) + bloch_wigner(z)) < 1e-12);
    const cplx x = oracle::random_annulus(rng), y = oracle::random_annulus(rng);
    const cplx xy = 1.0 - x * y;
    const double five = bloch_wigner(x) + bloch_wigner(y) + bloch_wigner((1.0 - x) / xy) +
                        bloch_wigner(xy) + bloch_wigner((1.0 - y) / xy);
    CHECK(std::abs(five) < 1e-11);
  }
}

TEST_CASE("shape companions cycle with period three") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const cplx u = oracle::random_annulus(rng);
    CHECK(std::abs(prime(prime(prime(u))) - u) < 1e-10 * std::abs(u));
    CHECK(std::abs(u * prime(u) * dprime(u) + 1.0) < 1e-12);
    CHECK(std::abs(dprime(u) - prime(prime(u))) < 1e-10 * std::max(1.0, std::abs(dprime(u))));
  }
}

TEST_CASE("centered reduction") {
  CHECK(reduce_centered(kPi2 / 2, kPi2) == Approx(kPi2 / 2));
  CHECK(reduce_centered(-kPi2 / 2, kPi2) == Approx(kPi2 / 2));
  CHECK(reduce_centered(10.9583, kPi2) == Approx(10.9583 - kPi2));
}
