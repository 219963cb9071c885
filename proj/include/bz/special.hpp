#pragma once

#include <cstdint>

#include "bz/common.hpp"

namespace bz {

// Principal log-gamma (Lanczos, g = 607/128, 15 terms; reflection for
// Re z < 1/2). Accurate to ~1e-13 relative over moderate |z|.
cplx lgamma_c(cplx z);
cplx tgamma_c(cplx z);
// 1/Gamma(z), exactly 0 at the poles z = 0, -1, -2, ...
cplx rcp_gamma(cplx z);

// Hurwitz zeta(s, q) = sum_{n>=0} (n+q)^{-s} by Euler-Maclaurin,
// q in (0, 2], s != 1 (throws domain_error within 1e-10 of the pole).
EvalResult hurwitz_zeta(cplx s, double q);

// zeta(s, q) - 1/(s-1): the pole-free part, stable through s = 1
// (at s = 1 it equals -digamma(q)).
EvalResult hurwitz_regular(cplx s, double q);

EvalResult riemann_zeta(cplx s);

// Twisted zeta sum_{n>=0} e(zn) (n+q)^{-s}. Integer z reduces to the
// Hurwitz zeta; otherwise the series is summed directly with a proven
// Dirichlet-test remainder bound, valid for Re s > 0. Throws budget_error
// when `budget` terms cannot reach `tol`.
EvalResult lerch(double z, double q, cplx s, double tol = 1e-10,
                 std::int64_t budget = 10000000);

// Symmetrized pair e^{i pi r} L(r, q; s) + e^{-i pi r} L(-r, 1-q; s) in its
// series half-plane. Integer r collapses to (-1)^r (zeta(s,q)+zeta(s,1-q)).
// q in (0, 1).
EvalResult zeta_sharp_series(double r, double q, cplx s, double tol = 1e-10,
                             std::int64_t budget = 10000000);

// Principal exponential integral E1(z), |arg z| < pi. Power series up to
// |z| = 7, modified-Lentz continued fraction beyond.
cplx expint_e1(cplx z);

// Im sum_{k>K} e(kx)/k, the sawtooth tail after K Fourier terms. Exact 0 at
// integer x; elsewhere a direct stretch up to k = 2000 plus Euler-Maclaurin
// across the tail (E1 carries the integral term). Absolute accuracy ~1e-13.
double sawtooth_tail_im(double x, std::int64_t K);

}  // namespace bz
