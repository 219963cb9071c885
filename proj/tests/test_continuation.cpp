#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "bz/common.hpp"
#include "bz/continuation.hpp"
#include "bz/diophantine.hpp"
#include "bz/special.hpp"
#include "bz/theta.hpp"
#include "doctest.h"

using namespace bz;

namespace {

IrrationalNumber golden() { return IrrationalNumber::quadratic(1, 1, 5, 2); }

// independent pairing oracle at r = 1/2:
//   zeta_L(1/2, q; s) = 2^{-s} (zeta(s, q/2) - zeta(s, (q+1)/2))
cplx half_twist_pair(double q, cplx s) {
  auto hz = [&](double a) { return hurwitz_zeta(s, a).value; };
  cplx lp = std::exp(-s * std::log(2.0)) * (hz(0.5 * q) - hz(0.5 * (q + 1.0)));
  cplx lm = std::exp(-s * std::log(2.0)) *
            (hz(0.5 * (1.0 - q)) - hz(0.5 * (2.0 - q)));
  return cplx{0.0, 1.0} * lp - cplx{0.0, 1.0} * lm;
}

}  // namespace

TEST_CASE("pair value matches the scaled zeta identity at r = 0, q = 1/2") {
  // e^{i pi r} pairing with q = 1/2 collapses to 2 zeta(s, 1/2)
  for (double sv : {1.1, 2.0, 3.0}) {
    ZetaSharpValue z = zeta_sharp(0.0, 0.5, cplx{sv, 0.0});
    cplx want = (std::pow(2.0, sv + 1.0) - 2.0) * riemann_zeta(cplx{sv, 0.0}).value;
    CHECK(std::abs(z.value - want) <= 1e-12);
    CHECK(z.pole_coefficient == cplx{2.0, 0.0});
  }
}

TEST_CASE("pair strip values match the Hurwitz pairing at r = 1/2") {
  for (cplx s : {cplx{0.7, 0.3}, cplx{0.3, 0.0}, cplx{1.2, -1.0}, cplx{2.5, 0.0}}) {
    ZetaSharpValue z = zeta_sharp(0.5, 0.3, s);
    CHECK(std::abs(z.value - half_twist_pair(0.3, s)) <= 1e-9);
    CHECK(z.pole_coefficient == cplx{0.0, 0.0});
  }
  // pole carried symbolically for integer r: regular part smooth through 1
  ZetaSharpValue reg = zeta_sharp(0.0, 0.25, cplx{1.0, 0.0}, {}, true);
  CHECK(std::isfinite(reg.value.real()));
  CHECK_THROWS_AS(zeta_sharp(0.0, 0.25, cplx{1.0, 0.0}), domain_error);
}

TEST_CASE("pair values obey Schwarz reflection at q = 1/2") {
  double r = 0.3;
  for (cplx s : {cplx{0.8, 0.7}, cplx{1.6, 2.0}}) {
    ZetaSharpValue a = zeta_sharp(r, 0.5, s);
    ZetaSharpValue b = zeta_sharp(r, 0.5, std::conj(s));
    CHECK(std::abs(a.value - std::conj(b.value)) <= 1e-9);
  }
}

TEST_CASE("pair vanishes at s = 0") {
  CHECK(zeta_sharp(0.3, 0.4, cplx{0.0, 0.0}).value == cplx{0.0, 0.0});
}

TEST_CASE("upper Mellin piece is real for r = 0 at real s") {
  PhiContext ctx(golden(), 0.0, 0.5);
  Continuation c(ctx);
  for (double sv : {0.3, 1.0, 2.7}) {
    EvalResult f = c.f_infty(cplx{sv, 0.0});
    CHECK(std::abs(f.value.imag()) <= 1e-12);
  }
}

TEST_CASE("upper Mellin piece agrees with a fixed-grid refinement oracle") {
  IrrationalNumber a = golden();
  PhiContext ctx(a, 0.0, 0.5);
  Continuation c(ctx);
  cplx s{2.0, 0.0};
  EvalResult f = c.f_infty(s);

  // composite Simpson in t = ln u over the same window, enough nodes that the
  // discretization error sits far below the tolerance under test
  double hi = std::log(60.0);
  int n = 4096;
  double h = hi / n;
  cplx acc{0.0, 0.0};
  for (int i = 0; i <= n; ++i) {
    double t = h * i;
    cplx val = phi_direct(ctx, std::exp(t)).value * std::exp(0.5 * s * t);
    double w = (i == 0 || i == n) ? 1.0 : ((i & 1) ? 4.0 : 2.0);
    acc += w * val;
  }
  acc *= h / 3.0;
  CHECK(std::abs(f.value - acc) <= 1e-10);

  // halving the quadrature tolerance moves the value by at most the bounds
  ContinuationConfig tight;
  tight.quad_tol = 0.5e-12;
  Continuation c2(ctx, tight);
  EvalResult f2 = c2.f_infty(s);
  CHECK(std::abs(f.value - f2.value) <= f.err_est + f2.err_est);
}

TEST_CASE("regularized lower piece keeps the pole coefficient symbolic") {
  IrrationalNumber a = golden();
  double gphi = a.gamma();
  PhiContext hit_ctx(a, gphi, 0.5);
  Continuation ch(hit_ctx);
  F0Result f = ch.f0_regularized(cplx{1.5, 0.0});
  CHECK(f.pole_coefficient == 2.0 * hit_ctx.amplitude());
  CHECK(std::abs(f.pole_coefficient) > 0.1);

  PhiContext miss_ctx(a, 1.0 / 3.0, 0.5);
  Continuation cm(miss_ctx);
  CHECK(cm.f0_regularized(cplx{1.5, 0.0}).pole_coefficient == cplx{0.0, 0.0});

  PhiContext int_ctx(a, 0.0, 0.5);
  Continuation ci(int_ctx);
  CHECK(ci.f0_regularized(cplx{1.5, 0.0}).pole_coefficient == cplx{0.0, 0.0});

  CHECK_THROWS_AS(ch.f0_regularized(cplx{0.01, 0.0}), domain_error);
}

TEST_CASE("regularized lower piece is stable under cutoff halving") {
  IrrationalNumber a = golden();
  PhiContext ctx(a, a.gamma(), 0.5);
  ContinuationConfig base;
  ContinuationConfig halved;
  halved.u_min = 0.5 * base.u_min;
  Continuation c1(ctx, base);
  Continuation c2(ctx, halved);
  cplx s{1.5, 0.0};
  F0Result a1 = c1.f0_regularized(s);
  F0Result a2 = c2.f0_regularized(s);
  CHECK(std::abs(a1.regular.value - a2.regular.value) <=
        2.0 * (a1.regular.err_est + a2.regular.err_est));
}

TEST_CASE("direct and continued windows overlap") {
  IrrationalNumber a = golden();
  PhiContext ctx(a, a.gamma(), 0.5);
  Continuation c(ctx);
  // spec point first, then a seeded sweep across the strip
  ZSharpResult d = c.z_sharp(cplx{2.0, 0.0}, ZMode::direct);
  ZSharpResult k = c.z_sharp(cplx{2.0, 0.0}, ZMode::continued);
  CHECK(std::abs(d.value - k.value) <= 1e-8);
  CHECK(d.region_note == "direct");
  CHECK(k.region_note == "continued");

  std::mt19937 rng(20260814);
  std::uniform_real_distribution<double> re(1.1, 3.0), im(-3.0, 3.0);
  for (int i = 0; i < 20; ++i) {
    cplx s{re(rng), im(rng)};
    ZSharpResult dd_ = c.z_sharp(s, ZMode::direct);
    ZSharpResult cc_ = c.z_sharp(s, ZMode::continued);
    CAPTURE(s.real());
    CAPTURE(s.imag());
    CHECK(std::abs(dd_.value - cc_.value) <= dd_.err_est + cc_.err_est);
    CHECK(std::abs(dd_.value - cc_.value) <= 1e-7);
  }
}

TEST_CASE("automatic mode picks a region by Re s") {
  IrrationalNumber a = golden();
  PhiContext ctx(a, a.gamma(), 0.5);
  Continuation c(ctx);
  CHECK(c.z_sharp(cplx{2.2, 0.0}).region_note == "direct");
  CHECK(c.z_sharp(cplx{1.2, 0.0}).region_note == "continued");
  CHECK_THROWS_AS(c.z_sharp(cplx{0.8, 0.0}, ZMode::direct), domain_error);
}

TEST_CASE("value at s = 0 collapses to -cos(pi r)") {
  // gamma zeta#(0) = 0, the prefactor kills the integrals, and the resonance
  // term cancels against the pole, leaving the boundary piece alone
  IrrationalNumber a = golden();
  double gphi = a.gamma();
  struct Probe {
    double r;
    double want;
  } probes[] = {{0.0, -1.0}, {gphi, -std::cos(pi * gphi)}, {1.0 / 3.0, -0.5}};
  for (const auto& p : probes) {
    PhiContext ctx(a, p.r, 0.5);
    Continuation c(ctx);
    ZSharpResult z = c.z_sharp(cplx{0.0, 0.0});
    CAPTURE(p.r);
    CHECK(std::abs(z.value - cplx{p.want, 0.0}) <= 1e-10);
  }
}

TEST_CASE("continued values cross-check the fluctuation oracle for r = 0") {
  IrrationalNumber a = golden();
  PhiContext ctx(a, 0.0, 0.5);
  Continuation c(ctx);
  for (double sv : {0.25, 0.5, 0.75, 1.5}) {
    ZSharpResult z = c.z_sharp(cplx{sv, 0.0}, ZMode::continued);
    EvalResult f = z_fluctuation(a, 0.0, 0.5, cplx{sv, 0.0});
    // q = 1/2 makes both pair components equal, so half the pair is the sum
    CAPTURE(sv);
    CHECK(std::abs(0.5 * z.value - f.value) <= 1e-6);
    CHECK(std::abs(0.5 * z.value - f.value) <=
          0.5 * z.err_est + f.err_est + 1e-12);
  }
}

TEST_CASE("pole bookkeeping stays consistent near s = 1") {
  IrrationalNumber a = golden();
  PhiContext ctx(a, a.gamma(), 0.5);
  Continuation c(ctx);

  // full value must blow up; the regular part must not
  CHECK_THROWS_AS(c.z_sharp(cplx{1.0, 0.0}, ZMode::continued), domain_error);
  ZSharpResult at1 = c.z_sharp(cplx{1.0, 0.0}, ZMode::continued, true);
  CHECK(std::isfinite(at1.value.real()));

  cplx dirs[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  cplx vals[4];
  for (int i = 0; i < 4; ++i) {
    cplx s = cplx{1.0, 0.0} + 1e-7 * dirs[i];
    ZSharpResult z = c.z_sharp(s, ZMode::continued);
    vals[i] = z.value - z.pole_coefficient / (s - 1.0);
    // removing the pole from the full value reproduces the regular part
    ZSharpResult rp = c.z_sharp(s, ZMode::continued, true);
    CHECK(std::abs(vals[i] - rp.value) <= 1e-6);
  }
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      CHECK(std::abs(vals[i] - vals[j]) <= 1e-5);
  for (int i = 0; i < 4; ++i)
    CHECK(std::abs(vals[i] - at1.value) <= 1e-5);

  // no-pole twist evaluates right at s = 1 without subtraction
  PhiContext ctx3(a, 1.0 / 3.0, 0.5);
  Continuation c3(ctx3);
  CHECK(c3.z_sharp(cplx{1.0, 0.0}).pole_coefficient == cplx{0.0, 0.0});
  CHECK(std::isfinite(c3.z_sharp(cplx{1.0, 0.0}).value.real()));
}

TEST_CASE("reflection symmetry holds for the continued values at r = 0") {
  IrrationalNumber a = golden();
  PhiContext ctx(a, 0.0, 0.5);
  Continuation c(ctx);
  for (cplx s : {cplx{0.6, 1.3}, cplx{1.2, 0.4}}) {
    ZSharpResult zp = c.z_sharp(s, ZMode::continued);
    ZSharpResult zm = c.z_sharp(std::conj(s), ZMode::continued);
    CHECK(std::abs(zp.value - std::conj(zm.value)) <= 1e-10);
  }
}

TEST_CASE("contour residue matches the lattice prediction") {
  IrrationalNumber a = golden();
  double gphi = a.gamma();
  PhiContext ctx(a, gphi, 0.5);
  Continuation c(ctx);
  ResidueReport rep = c.residue_at_one();
  // 2 sin(pi k a^{-1}) / (pi k) at k = 1
  const double want = 0.59335026948718206914;
  CHECK(rep.method == "contour");
  CHECK(std::abs(rep.measured - cplx{want, 0.0}) <= 1e-9);
  CHECK(std::abs(rep.predicted_theorem - cplx{want, 0.0}) <= 1e-15);
  CHECK(std::abs(rep.predicted_density - rep.predicted_theorem) == 0.0);

  ResidueReport lim = c.residue_at_one("limit");
  CHECK(lim.method == "limit");
  CHECK(std::abs(lim.measured - rep.measured) <= 1e-4);

  CHECK_THROWS_AS(c.residue_at_one("newton"), domain_error);
}

TEST_CASE("residue measurement is additive in the carried pole") {
  // mean of (s-1) z over the contour equals the full pole coefficient
  IrrationalNumber a = golden();
  PhiContext ctx(a, 0.0, 0.5);
  Continuation c(ctx);
  ResidueReport rep = c.residue_at_one();
  // integer twist: the whole pole sits in the gamma zeta# term
  CHECK(std::abs(rep.measured) <= 1e-6);
  CHECK(std::abs(rep.predicted_theorem - cplx{2.0 * a.gamma(), 0.0}) <= 1e-15);
  CHECK(rep.predicted_density == cplx{0.0, 0.0});

  cplx full = rep.measured + cplx{2.0 * a.gamma(), 0.0};
  ZSharpResult z = c.z_sharp(cplx{1.01, 0.0}, ZMode::continued);
  CHECK(std::abs(full - z.pole_coefficient) <= 1e-5);
}

TEST_CASE("untwisted residue adjudication: density wins") {
  // continuation and the independent averaged-series oracle must agree on the
  // residue of Z itself at r = 0; both land on alpha^{-1}, not 2 alpha^{-1}
  IrrationalNumber a = golden();
  double gphi = a.gamma();
  PhiContext ctx(a, 0.0, 0.5);
  Continuation c(ctx);
  ResidueReport rep = c.residue_at_one();
  // Z# = 2 Z at q = 1/2, so res Z = (measured + pole of gamma zeta#)/2
  cplx res_z = 0.5 * rep.measured + cplx{gphi, 0.0};
  EvalResult oracle = z_fluctuation_residue(a, 0.0, 0.5);
  CHECK(std::abs(res_z - oracle.value) <= 1e-4);
  CHECK(std::abs(res_z - cplx{gphi, 0.0}) <= 1e-6);
  CHECK(std::abs(oracle.value - cplx{gphi, 0.0}) <= 1e-6);
  CHECK(std::abs(oracle.value - cplx{2.0 * gphi, 0.0}) > 0.1);
}

TEST_CASE("off-lattice twist has no pole") {
  IrrationalNumber a = golden();
  PhiContext ctx(a, 1.0 / 3.0, 0.5);
  Continuation c(ctx);
  ResidueReport rep = c.residue_at_one();
  CHECK(std::abs(rep.measured) <= 1e-6);
  CHECK(rep.predicted_theorem == cplx{0.0, 0.0});
  CHECK(rep.predicted_density == cplx{0.0, 0.0});
}

TEST_CASE("plain summation hits the cubic identity") {
  // sum over the golden Beatty set plus its complement partner at s = 3
  IrrationalNumber phi = golden();
  IrrationalNumber phi2 = IrrationalNumber::quadratic(3, 1, 5, 2);
  EvalResult a1 = z_direct(phi, 0.0, 0.5, cplx{3.0, 0.0}, 2.5e-11);
  EvalResult a2 = z_direct(phi2, 0.0, 0.5, cplx{3.0, 0.0}, 2.5e-11);
  double got = a1.value.real() + a2.value.real() + 8.0;
  CHECK(std::abs(got - 8.4143983221171599978) <= 1e-10);
  CHECK(a1.err_est <= 5e-10);
}

TEST_CASE("plain summation is shift invariant in the twist") {
  IrrationalNumber a = golden();
  double r = a.gamma();
  EvalResult z0 = z_direct(a, r, 0.5, cplx{2.5, 0.0}, 1e-8);
  EvalResult z1 = z_direct(a, r + 1.0, 0.5, cplx{2.5, 0.0}, 1e-8);
  CHECK(z0.value == z1.value);
  CHECK(z0.err_est == z1.err_est);
}

TEST_CASE("plain summation refuses an unreachable tolerance") {
  IrrationalNumber a = golden();
  CHECK_THROWS_AS(z_direct(a, 0.0, 0.5, cplx{1.5, 0.0}, 1e-10), budget_error);
  CHECK_THROWS_AS(z_direct(a, 0.0, 0.5, cplx{0.9, 0.0}, 1e-6), domain_error);
}

TEST_CASE("averaged series matches plain summation") {
  IrrationalNumber a = golden();
  cplx s{2.5, 0.0};
  // untwisted
  EvalResult f0 = z_fluctuation(a, 0.0, 0.5, s);
  EvalResult d0 = z_direct(a, 0.0, 0.5, s, 1e-9);
  CHECK(std::abs(f0.value - d0.value) <= f0.err_est + d0.err_est);
  // lattice twist exercises the resonance-subtracted walk
  EvalResult f1 = z_fluctuation(a, a.gamma(), 0.5, s);
  EvalResult d1 = z_direct(a, a.gamma(), 0.5, s, 5e-8);
  CHECK(std::abs(f1.value - d1.value) <= f1.err_est + d1.err_est);
}

TEST_CASE("averaged series pins the value at s = 0") {
  for (auto spec : {IrrationalNumber::quadratic(1, 1, 5, 2),
                    IrrationalNumber::quadratic(1, 1, 2, 1),
                    IrrationalNumber::quadratic(1, 1, 3, 1)}) {
    EvalResult z = z_fluctuation(spec, 0.0, 0.5, cplx{0.0, 0.0});
    CHECK(std::abs(z.value - cplx{-0.5, 0.0}) <= 1e-6);
  }
}

TEST_CASE("averaged series is stable in the walk length") {
  IrrationalNumber a = golden();
  cplx s{0.3, 0.0};
  EvalResult z1 = z_fluctuation(a, 0.0, 0.5, s, 500000);
  EvalResult z2 = z_fluctuation(a, 0.0, 0.5, s, 1000000);
  CHECK(std::abs(z1.value - z2.value) <= z1.err_est + z2.err_est);
}

TEST_CASE("averaged series rejects what it cannot reach") {
  IrrationalNumber a = golden();
  CHECK_THROWS_AS(z_fluctuation(a, 1.0 / 3.0, 0.5, cplx{0.5, 0.0}),
                  domain_error);
  CHECK_THROWS_AS(z_fluctuation(a, 0.0, 0.5, cplx{-0.6, 0.0}), domain_error);
  CHECK_THROWS_AS(z_fluctuation(a, a.gamma(), 0.5, cplx{-0.1, 0.0}),
                  domain_error);
}

TEST_CASE("averaged residue probe lands on the density") {
  IrrationalNumber a = golden();
  EvalResult res = z_fluctuation_residue(a, 0.0, 0.5);
  CHECK(std::abs(res.value - cplx{a.gamma(), 0.0}) <= 1e-8);
  CHECK(std::abs(res.value - cplx{a.gamma(), 0.0}) <= res.err_est + 1e-12);
}

TEST_CASE("grid scan emits a deterministic table") {
  IrrationalNumber a = golden();
  PhiContext ctx(a, a.gamma(), 0.5);
  Continuation c(ctx);
  GridSpec spec;
  spec.re_lo = 0.8;
  spec.re_hi = 1.2;
  spec.n_re = 3;  // middle point lands on the pole
  std::vector<GridPoint> rows = grid_scan(c, spec);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].ok);
  CHECK_FALSE(rows[1].ok);
  CHECK(rows[2].ok);
  CHECK(rows[1].error.find("pole") != std::string::npos);

  std::string csv = grid_csv(rows);
  CHECK(csv.rfind("s_re,s_im,val_re,val_im,err_est,pole_re,pole_im,region\n", 0) == 0);
  CHECK(csv.find(",error\n") != std::string::npos);
  CHECK(csv.find(",continued\n") != std::string::npos);
  CHECK(grid_csv(grid_scan(c, spec)) == csv);

  // a scan that dodges the pole has no error rows
  GridSpec fine;
  fine.re_lo = 1.3;
  fine.re_hi = 2.1;
  fine.n_re = 2;
  fine.im_lo = -0.5;
  fine.im_hi = 0.5;
  fine.n_im = 2;
  std::vector<GridPoint> ok_rows = grid_scan(c, fine);
  REQUIRE(ok_rows.size() == 4);
  for (const auto& p : ok_rows) CHECK(p.ok);
  // row-major: imaginary part varies on the outer loop
  CHECK(ok_rows[0].s == cplx{1.3, -0.5});
  CHECK(ok_rows[1].s == cplx{2.1, -0.5});
  CHECK(ok_rows[3].s == cplx{2.1, 0.5});
}
