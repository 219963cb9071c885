#include "bz/beatty.hpp"

#include <cmath>

#include "bz/dd.hpp"

namespace bz {

std::vector<std::int64_t> beatty_terms(const IrrationalNumber& a,
                                       std::int64_t m0, std::int64_t count) {
  if (count < 0) throw domain_error("beatty_terms: count must be >= 0");
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t m = m0; m < m0 + count; ++m)
    out.push_back(a.floor_mul(m));
  return out;
}

std::int64_t beatty_count(const IrrationalNumber& a, std::int64_t x) {
  if (x < 0) return 0;
  // floor(alpha m) <= x iff alpha m < x+1 iff m <= floor((x+1) gamma)
  return a.floor_mul_gamma(x + 1);
}

double pulse_value(double gamma, double t) {
  if (!(gamma > 0.0) || gamma >= 1.0)
    throw domain_error("pulse_value: need 0 < gamma < 1");
  double f = frac(t);
  if (f == 0.0 || f == gamma) return 0.5;
  return (f < gamma) ? 1.0 : 0.0;
}

double indicator_value(const IrrationalNumber& a, std::int64_t n) {
  switch (a.pulse_class(n)) {
    case PulseClass::in: return 1.0;
    case PulseClass::boundary: return 0.5;
    case PulseClass::out: return 0.0;
  }
  return 0.0;
}

namespace {

// cis/sin/cos of pi * (k gamma), with k gamma reduced mod 2 exactly enough:
// f = frac(k gamma / 2) in dd, k gamma = 2 f (mod 2).
struct ReducedPhase {
  double c, s;  // cos(pi k gamma), sin(pi k gamma)
};

ReducedPhase phase_of(dd g, std::int64_t k) {
  // 0.5*k is exact; |k| < 2^53 keeps double(k) exact as well
  dd f = dd_frac(dd_mul(g, 0.5 * static_cast<double>(k)));
  double a = two_pi * to_double(f);
  return {std::cos(a), std::sin(a)};
}

cplx coeff_from_phase(const ReducedPhase& ph, std::int64_t k) {
  // exp(-i pi k g) sin(pi k g)/(pi k)
  double inv = 1.0 / (pi * static_cast<double>(k));
  return cplx{ph.c * ph.s * inv, -ph.s * ph.s * inv};
}

}  // namespace

cplx fourier_coeff(const IrrationalNumber& a, std::int64_t k) {
  if (k == 0) return {a.gamma(), 0.0};
  return coeff_from_phase(phase_of(a.gamma_dd(), k), k);
}

cplx fourier_coeff(double gamma, std::int64_t k) {
  if (!(gamma > 0.0) || gamma >= 1.0)
    throw domain_error("fourier_coeff: need 0 < gamma < 1");
  if (k == 0) return {gamma, 0.0};
  return coeff_from_phase(phase_of(dd_from(gamma), k), k);
}

double truncated_indicator(const IrrationalNumber& a, std::int64_t n,
                           std::int64_t K) {
  if (K < 0) throw domain_error("truncated_indicator: K must be >= 0");
  dd g = a.gamma_dd();
  double s = to_double(g);
  // t = -n gamma; e(k t) + e(-k t) terms pair into 2 Re(X^(k) e(-k n gamma)).
  // Phase walk in dd: w_k = frac(k n gamma).
  dd step = dd_frac(dd_mul(g, static_cast<double>(n)));
  dd w = dd_from(0.0);
  for (std::int64_t k = 1; k <= K; ++k) {
    w = dd_frac(dd_add(w, step));
    cplx xk = coeff_from_phase(phase_of(g, k), k);
    double ang = -two_pi * to_double(w);
    s += 2.0 * (xk.real() * std::cos(ang) - xk.imag() * std::sin(ang));
  }
  return s;
}

double indicator_tail_bound(const IrrationalNumber& a, std::int64_t n,
                            std::int64_t K) {
  if (K < 0) throw domain_error("indicator_tail_bound: K must be >= 0");
  dd g = a.gamma_dd();
  // jump distances of t = -n gamma to the band edges 0 and gamma:
  // ||t|| = ||n gamma||, ||t - gamma|| = ||(n+1) gamma||
  double d0 = to_double(dd_dist_to_int(dd_mul(g, static_cast<double>(n))));
  double d1 = to_double(dd_dist_to_int(dd_mul(g, static_cast<double>(n + 1))));
  if (d0 == 0.0 || d1 == 0.0) return HUGE_VAL;  // on a jump: no pointwise bound
  return (1.0 / d0 + 1.0 / d1) / (pi * static_cast<double>(K + 1));
}

}  // namespace bz
