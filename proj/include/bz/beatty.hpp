#pragma once

#include <cstdint>
#include <vector>

#include "bz/common.hpp"
#include "bz/diophantine.hpp"

namespace bz {

// floor(alpha m) for m in [m0, m0+count), exact.
std::vector<std::int64_t> beatty_terms(const IrrationalNumber& a,
                                       std::int64_t m0, std::int64_t count);

// #{m >= 1 : floor(alpha m) <= x} = floor((x+1) gamma) for x >= 0.
std::int64_t beatty_count(const IrrationalNumber& a, std::int64_t x);

// Pulse wave X_gamma: 1 on {t} in (0, gamma), 1/2 at {t} in {0, gamma}
// (decided by exact double comparison), 0 otherwise.
double pulse_value(double gamma, double t);

// Membership weight of n in the Beatty set as sampled by the pulse wave:
// X_gamma(-n gamma) in {0, 1/2, 1}, decided exactly. Equals 1 iff n is a
// Beatty term (n >= 1), with the half values only at n = 0, -1.
double indicator_value(const IrrationalNumber& a, std::int64_t n);

// Fourier coefficient of the pulse wave: gamma at k = 0, otherwise
// exp(-i pi k gamma) sin(pi k gamma) / (pi k). The phase k gamma is reduced
// mod 2 in double-double, so large |k| stays accurate.
cplx fourier_coeff(const IrrationalNumber& a, std::int64_t k);

// Same, trusting a plain double gamma (phases drift once |k gamma| ~ 1e10).
cplx fourier_coeff(double gamma, std::int64_t k);

// Symmetric partial Fourier sum S_K evaluated at t = -n gamma:
//   gamma + sum_{0<|k|<=K} X^(k) e(-k n gamma).
double truncated_indicator(const IrrationalNumber& a, std::int64_t n,
                           std::int64_t K);

// Proven bound for |indicator - S_K| at t = -n gamma:
//   (1/pi(K+1)) (1/||t|| + 1/||t - gamma||),
// from the Abel-summed sawtooth tails on both band edges.
double indicator_tail_bound(const IrrationalNumber& a, std::int64_t n,
                            std::int64_t K);

}  // namespace bz
