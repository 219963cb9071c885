#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "bz/beatty.hpp"
#include "bz/common.hpp"
#include "bz/dd.hpp"
#include "bz/diophantine.hpp"
#include "bz/theta.hpp"
#include "doctest.h"

using namespace bz;

namespace {

// Independent brute-force Theta_{v,w}(u): plain loop, no kernel machinery.
cplx brute_theta(double v, double w, double u) {
  double hw = std::sqrt(46.0 / (pi * u)) + 2.0;
  auto n0 = (long long)std::ceil(-v - hw);
  auto n1 = (long long)std::floor(-v + hw);
  cplx acc{0.0, 0.0};
  for (long long n = n0; n <= n1; ++n) {
    double x = (double)n + v;
    acc += std::exp(-pi * x * x * u) * e_of(w * (double)n);
  }
  return e_of(0.5 * v * w) * acc;
}

cplx brute_psi(double r, double q, double u) {
  return e_of(-0.5 * q * r) * brute_theta(q, r, u);
}

IrrationalNumber golden() { return IrrationalNumber::quadratic(1, 1, 5, 2); }

}  // namespace

TEST_CASE("theta transformation identity across the (v,w,u) box") {
  std::mt19937_64 rng(0x5eed5eedULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double lo = std::log(0.05), hi = std::log(20.0);
  for (int i = 0; i < 1000; ++i) {
    double v = unit(rng), w = unit(rng);
    double u = std::exp(lo + (hi - lo) * unit(rng));
    cplx lhs = theta_direct(v, w, u);
    cplx rhs = theta_direct(w, -v, 1.0 / u) / std::sqrt(u);
    CHECK(std::abs(lhs - rhs) <= 1e-12);
  }
  // theta() routes through whichever side has the short window
  CHECK(std::abs(theta(0.3, 0.7, 0.2) - theta_direct(0.3, 0.7, 0.2)) <= 1e-12);
  CHECK(theta(0.3, 0.7, 3.0) == theta_direct(0.3, 0.7, 3.0));
}

TEST_CASE("theta values, shifts, conjugation") {
  // sum exp(-pi n^2) = 1 + 2 exp(-pi) + 2 exp(-4 pi) + ...
  cplx t00 = theta(0.0, 0.0, 1.0);
  CHECK(std::abs(t00 - brute_theta(0.0, 0.0, 1.0)) <= 1e-14);
  CHECK(t00.real() == doctest::Approx(1.0864348).epsilon(1e-7));
  CHECK(std::fabs(t00.imag()) <= 1e-15);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 25; ++i) {
    double v = unit(rng), w = unit(rng), u = 0.3 + 3.0 * unit(rng);
    cplx base = theta(v, w, u);
    CHECK(std::abs(theta(v + 1.0, w, u) - e_of(-0.5 * w) * base) <= 1e-12);
    CHECK(std::abs(theta(v, w + 1.0, u) - e_of(0.5 * v) * base) <= 1e-12);
    CHECK(std::abs(theta(v, -w, u) - std::conj(base)) <= 1e-12);
    CHECK(std::abs(theta(v, w, u) - brute_theta(v, w, u)) <= 1e-12);
  }
}

TEST_CASE("psi definition, half-sum split, envelope") {
  cplx p = psi(0.0, 0.5, 1.0);
  CHECK(p.real() == doctest::Approx(0.913579).epsilon(1e-6));
  CHECK(std::fabs(p.imag()) <= 1e-15);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 40; ++i) {
    double r = 2.0 * unit(rng) - 1.0, q = 0.05 + 0.9 * unit(rng);
    double u = std::exp(std::log(0.05) + std::log(400.0) * unit(rng));
    cplx full = psi(r, q, u);
    CHECK(std::abs(full - brute_psi(r, q, u)) <= 1e-12);
    // Psi = Psi^+(r,q) + e(-r) Psi^+(-r,1-q):  n <-> -1-n swaps the halves
    cplx split = psi_plus(r, q, u) + e_of(-r) * psi_plus(-r, 1.0 - q, u);
    CHECK(std::abs(full - split) <= 1e-12);
    if (u >= 1.0) {
      double d = std::min(q, 1.0 - q);
      CHECK(std::abs(full) <= 3.0 * std::exp(-pi * d * d * u) + 1e-15);
    }
  }
}

TEST_CASE("psi_alpha sums the membership-weighted Gaussian") {
  IrrationalNumber a = golden();
  PhiContext ctx(a, 0.0, 0.5, 100000);
  cplx pa = psi_alpha(ctx, 1.0);
  // n = 0,-1 weigh 1/2 each, n = 1,-2 are Beatty terms, the rest vanish
  double want = std::exp(-pi * 0.25) + 2.0 * std::exp(-pi * 2.25) +
                2.0 * std::exp(-pi * 12.25);
  CHECK(pa.real() == doctest::Approx(want).epsilon(1e-14));
  CHECK(pa.real() == doctest::Approx(0.457640).epsilon(2e-6));
  CHECK(std::fabs(pa.imag()) <= 1e-15);

  // conj symmetry in r
  PhiContext cp(a, 0.37, 0.8, 1000), cm(a, -0.37, 0.8, 1000);
  for (double u : {0.4, 1.0, 2.5}) {
    CHECK(std::abs(psi_alpha(cp, u) - std::conj(psi_alpha(cm, u))) <= 1e-13);
  }
}

TEST_CASE("phi_direct assembles psi_alpha - gamma psi") {
  IrrationalNumber a = golden();
  double g = a.gamma();
  struct Probe {
    double r, q;
  };
  std::vector<Probe> probes = {{0.0, 0.5}, {g, 0.5}, {1.0 / 3.0, 0.9}, {g, 0.25}};
  for (const Probe& pr : probes) {
    PhiContext ctx(a, pr.r, pr.q, 100000);
    for (double u : {0.3, 1.0, 2.7}) {
      EvalResult res = phi_direct(ctx, u);
      cplx assembled = psi_alpha(ctx, u) - g * psi(pr.r, pr.q, u);
      CHECK(std::abs(res.value - assembled) <= 2e-12);
      CHECK(res.err_est > 0.0);
      CHECK(res.method == Method::direct_series);
    }
  }

  PhiContext c0(a, 0.0, 0.5, 100000);
  EvalResult at1 = phi_direct(c0, 1.0);
  CHECK(at1.value.real() == doctest::Approx(-0.106984).epsilon(1e-4));
  CHECK(std::fabs(at1.value.imag()) <= 1e-13);
  CHECK(std::abs(phi_direct(c0, 20.0).value) <= 1e-6);
}

TEST_CASE("transformed representation matches the direct one") {
  IrrationalNumber phi_a = golden();
  IrrationalNumber silver = IrrationalNumber::quadratic(1, 1, 2, 1);
  const std::int64_t kmax = 200000;
  struct Cfg {
    IrrationalNumber a;
    double r, q;
  };
  std::vector<Cfg> cfgs;
  cfgs.push_back({phi_a, 0.0, 0.5});
  cfgs.push_back({phi_a, phi_a.gamma(), 0.5});
  cfgs.push_back({phi_a, 1.0 / 3.0, 0.9});
  cfgs.push_back({silver, 0.3, 0.25});
  for (const Cfg& c : cfgs) {
    PhiContext ctx(c.a, c.r, c.q, kmax);
    for (double u : {0.3, 0.45, 0.8, 1.0, 1.7, 3.0}) {
      EvalResult d = phi_direct(ctx, u);
      EvalResult t = phi_transformed(ctx, u, kmax);
      CHECK(t.method == Method::functional_equation);
      double gap = std::abs(d.value - t.value);
      CHECK(gap <= d.err_est + t.err_est);
      CHECK(gap <= 1e-8);
    }
    // small u: strip mode at 5e-6, hit-table mode at and below 3e-6
    for (double u : {5e-6, 3e-6, 1e-6}) {
      EvalResult d = phi_direct(ctx, u);
      EvalResult t = phi_transformed(ctx, u, kmax);
      CHECK(std::abs(d.value - t.value) <= d.err_est + t.err_est + 1e-11);
    }
  }
}

TEST_CASE("resonant amplitude and the u^{-1/2} growth") {
  IrrationalNumber a = golden();
  double g = a.gamma();
  PhiContext hit(a, g, 0.5);
  REQUIRE(hit.hit().has_value());
  CHECK(hit.hit()->k == 1);
  CHECK(hit.hit()->ell == 0);
  cplx amp = small_u_amplitude(hit);
  CHECK(amp == fourier_coeff(a, 1));
  CHECK(amp.real() == doctest::Approx(-0.10750761934232043).epsilon(1e-13));
  CHECK(amp.imag() == doctest::Approx(-0.27651084492018505).epsilon(1e-13));

  // sqrt(u) phi(u) -> A
  EvalResult small = phi_transformed(hit, 1e-8, 1000000);
  CHECK(std::abs(std::sqrt(1e-8) * small.value - amp) <= 1e-6);

  // regularized mode equals plain minus the pole term, without cancellation
  for (double u : {1e-4, 1e-8}) {
    EvalResult plain = phi_transformed(hit, u, 1000000, false);
    EvalResult reg = phi_transformed(hit, u, 1000000, true);
    cplx manual = plain.value - amp / std::sqrt(u);
    // plain evaluates the hit term on the walked offset, regularized on the
    // refined one; both error fields cover that gap
    CHECK(std::abs(reg.value - manual) <= plain.err_est + reg.err_est + 1e-12);
  }
  for (double u : {1e-10, 1e-9, 1e-8, 1e-7}) {
    EvalResult reg = phi_transformed(hit, u, 1000000, true);
    CHECK(std::abs(reg.value) <= 10.0);
  }

  // off-lattice r: no hit, amplitude exactly zero, bounded growth
  PhiContext off(a, 1.0 / 3.0, 0.5);
  CHECK(!off.hit().has_value());
  CHECK(small_u_amplitude(off) == cplx{0.0, 0.0});
  CHECK(std::abs(std::sqrt(1e-8) * phi_transformed(off, 1e-8, 1000000).value) <=
        2.0);

  // integer r: the resonance sits at k = 0, excluded by design
  PhiContext intr(a, 2.0, 0.5);
  CHECK(!intr.hit().has_value());
  CHECK(small_u_amplitude(intr) == cplx{0.0, 0.0});
}
