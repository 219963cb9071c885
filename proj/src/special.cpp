#include "bz/special.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "bz/dd.hpp"

namespace bz {

namespace {

constexpr double euler_gamma = 0.57721566490153286060651209;

// Lanczos approximation, g = 607/128, 15 coefficients (Godfrey's set).
constexpr double lanczos_g = 4.7421875;
constexpr double lanczos_c[15] = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

bool nonpositive_int(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 &&
         z.real() == std::nearbyint(z.real());
}

// B_{2j}/(2j)! for j = 1..kBernMax. Exact ratios up to j = 7; beyond that
// B_{2j}/(2j)! = (-1)^{j+1} 2 zeta(2j)/(2pi)^{2j} and zeta(2j) is within
// 1e-25 of a 40-term partial sum, so the identity is cheaper than more
// literals (a short zeta sum is NOT accurate enough for small j).
constexpr int kBernMax = 24;

struct BernTable {
  double v[kBernMax + 1];
  BernTable() {
    v[0] = 0.0;
    v[1] = 1.0 / 12.0;
    v[2] = -1.0 / 720.0;
    v[3] = 1.0 / 30240.0;
    v[4] = -1.0 / 1209600.0;
    v[5] = 1.0 / 47900160.0;
    v[6] = -691.0 / 1307674368000.0;
    v[7] = 1.0 / 74724249600.0;
    for (int j = 8; j <= kBernMax; ++j) {
      double z = 1.0;
      for (int n = 2; n <= 40; ++n) z += std::pow(double(n), -2.0 * j);
      double sign = (j % 2 == 1) ? 1.0 : -1.0;
      v[j] = sign * 2.0 * z / std::pow(two_pi, 2.0 * j);
    }
  }
};

const double* bern_fac() {
  static const BernTable tab;
  return tab.v;
}

// expm1(u)/u, stable near u = 0.
cplx expm1_over(cplx u) {
  if (std::abs(u) < 0.25) {
    cplx acc{1.0, 0.0}, term{1.0, 0.0};
    for (int k = 2; k <= 18; ++k) {
      term *= u / double(k);
      acc += term;
    }
    return acc;
  }
  return (std::exp(u) - 1.0) / u;
}

// Shared Euler-Maclaurin core. With `regular` set the 1/(s-1) pole is
// subtracted analytically, which keeps the expression finite through s = 1.
EvalResult hurwitz_em(cplx s, double q, bool regular) {
  if (!(q > 0.0) || q > 2.0) throw domain_error("hurwitz: q must lie in (0, 2]");
  if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
    throw domain_error("hurwitz: s is not finite");
  if (s.real() < -36.0 || std::abs(s) > 1e6)
    throw domain_error("hurwitz: s outside supported range");
  if (!regular && std::abs(s - cplx(1.0, 0.0)) < 1e-10)
    throw domain_error("hurwitz: pole at s = 1");

  int N = int(std::max(20.0, std::ceil(0.5 * std::abs(s)) + 24.0));
  cplx sum{0.0, 0.0};
  double absum = 0.0;
  for (int n = 0; n < N; ++n) {
    cplx t = std::exp(-s * std::log(double(n) + q));
    sum += t;
    absum += std::abs(t);
  }
  double x = double(N) + q;
  double L = std::log(x);
  cplx xp = std::exp(-s * L);  // x^{-s}
  cplx tail;
  if (regular) {
    // x^{1-s}/(s-1) - 1/(s-1) = -L expm1(u)/u with u = (1-s) L
    tail = -L * expm1_over((1.0 - s) * L);
  } else {
    tail = x * xp / (s - 1.0);
  }
  cplx total = sum + tail + 0.5 * xp;

  // Correction series bf[j] (s)_{2j-1} x^{-s-2j+1}; the remainder after
  // stopping is bounded by |next term| (|s|+2j+1)/(sigma+2j-1) once the
  // denominator is positive, so never stop before that.
  const double* bf = bern_fac();
  double sig = s.real();
  cplx poch = s;       // (s)_1
  cplx pw = xp / x;    // x^{-s-1}
  int j = 1;
  for (; j < 20; ++j) {
    cplx term = bf[j] * poch * pw;
    total += term;
    bool small = std::abs(term) < 1e-17 * (std::abs(total) + absum + 1.0);
    poch *= (s + double(2 * j - 1)) * (s + double(2 * j));
    pw /= x * x;
    if (small && sig + 2.0 * j + 1.0 > 0.5) {
      ++j;
      break;
    }
  }
  double denom = std::max(0.5, sig + 2.0 * j - 1.0);
  double rem = std::abs(bf[std::min(j, kBernMax)] * poch * pw) *
               ((std::abs(s) + 2.0 * j + 1.0) / denom);
  double err = rem + 9e-16 * (absum + std::abs(tail) + std::abs(total) + 1.0);
  return {total, err, Method::euler_maclaurin};
}

// Power-series half of E1, |z| <= 7 or so.
cplx e1_series(cplx z) {
  cplx term = z, sum = z;
  for (int k = 2; k <= 80; ++k) {
    term *= -z * (double(k - 1) / (double(k) * double(k)));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum) + 1e-300) break;
  }
  return -euler_gamma - std::log(z) + sum;
}

// Continued-fraction half without the exp(-z) prefactor:
// E1(z) = e^{-z} / (z + 1 - 1/(z + 3 - 4/(z + 5 - ...))), a_n = -n^2.
// Returning the fraction alone lets callers supply a phase-reduced e^{-z}.
cplx e1_cf_factor(cplx z) {
  cplx b = z + 1.0;
  cplx f = (b == cplx{0.0, 0.0}) ? cplx{1e-300, 0.0} : b;
  cplx C = f, D{0.0, 0.0};
  for (int n = 1; n <= 5000; ++n) {
    cplx a{-double(n) * double(n), 0.0};
    b = z + double(2 * n + 1);
    D = b + a * D;
    if (D == cplx{0.0, 0.0}) D = {1e-300, 0.0};
    C = b + a / C;
    if (C == cplx{0.0, 0.0}) C = {1e-300, 0.0};
    D = 1.0 / D;
    cplx delta = C * D;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) return 1.0 / f;
  }
  throw precision_error("expint_e1: continued fraction did not converge");
}

}  // namespace

cplx lgamma_c(cplx z) {
  if (nonpositive_int(z))
    throw domain_error("lgamma_c: pole at nonpositive integer");
  if (z.real() < 0.5) {
    // Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return std::log(pi / std::sin(pi * z)) - lgamma_c(1.0 - z);
  }
  cplx acc{lanczos_c[0], 0.0};
  for (int k = 1; k < 15; ++k) acc += lanczos_c[k] / (z - 1.0 + double(k));
  cplx t = z + (lanczos_g - 0.5);
  return 0.5 * std::log(two_pi) + (z - 0.5) * std::log(t) - t + std::log(acc);
}

cplx tgamma_c(cplx z) { return std::exp(lgamma_c(z)); }

cplx rcp_gamma(cplx z) {
  if (nonpositive_int(z)) return {0.0, 0.0};
  return std::exp(-lgamma_c(z));
}

EvalResult hurwitz_zeta(cplx s, double q) { return hurwitz_em(s, q, false); }

EvalResult hurwitz_regular(cplx s, double q) { return hurwitz_em(s, q, true); }

EvalResult riemann_zeta(cplx s) { return hurwitz_em(s, 1.0, false); }

EvalResult lerch(double z, double q, cplx s, double tol, std::int64_t budget) {
  if (!(q > 0.0) || q > 1.5) throw domain_error("lerch: q must lie in (0, 1.5]");
  if (!std::isfinite(z)) throw domain_error("lerch: twist is not finite");
  if (!(tol > 0.0)) throw domain_error("lerch: tol must be positive");
  if (budget < 16) throw domain_error("lerch: budget too small");
  double zf = frac(z);
  if (zf == 0.0) return hurwitz_em(s, q, false);
  double sig = s.real();
  if (sig <= 0.02)
    throw domain_error("lerch: direct series needs Re s above 0.02");

  // Dirichlet-test remainder: |sum_{n>M}| <= (2/|1-e(z)|)(1+|s|/sigma)
  // (M+1+q)^{-sigma}.
  double gap = 2.0 * std::sin(pi * dist_to_int(zf));
  double cfac = (2.0 / gap) * (1.0 + std::abs(s) / sig);
  double need = std::pow(cfac / tol, 1.0 / sig);
  if (!(need < double(budget)))
    throw budget_error("lerch: tol " + std::to_string(tol) + " needs ~" +
                       std::to_string(need) + " terms, budget " +
                       std::to_string(budget));

  dd step = dd_from(zf);
  dd w = dd_from(0.0);
  cplx acc{0.0, 0.0};
  double absacc = 0.0;
  double bound = HUGE_VAL;
  std::int64_t n = 0;
  while (true) {
    cplx an = std::exp(-s * std::log(double(n) + q));
    acc += e_of(to_double(w)) * an;
    absacc += std::abs(an);
    bound = cfac * std::pow(double(n) + 1.0 + q, -sig);
    if (bound < tol) break;
    if (n >= budget)
      throw budget_error("lerch: budget exhausted before the tail bound");
    w = dd_frac(dd_add(w, step));
    ++n;
  }
  double err = bound + 2.3e-16 * absacc * (8.0 + std::log1p(double(n)));
  return {acc, err, Method::direct_series};
}

EvalResult zeta_sharp_series(double r, double q, cplx s, double tol,
                             std::int64_t budget) {
  if (!(q > 0.0 && q < 1.0))
    throw domain_error("zeta_sharp_series: q must lie in (0, 1)");
  if (!std::isfinite(r) || std::fabs(r) > 1e15)
    throw domain_error("zeta_sharp_series: twist out of range");
  double rf = frac(r);
  if (rf == 0.0) {
    // e^{i pi r} = e^{-i pi r} = (-1)^r exactly.
    double sgn = (std::llround(std::fmod(r, 2.0)) % 2 == 0) ? 1.0 : -1.0;
    EvalResult h1 = hurwitz_em(s, q, false);
    EvalResult h2 = hurwitz_em(s, 1.0 - q, false);
    return {sgn * (h1.value + h2.value), h1.err_est + h2.err_est,
            Method::euler_maclaurin};
  }
  EvalResult l1 = lerch(rf, q, s, 0.5 * tol, budget);
  EvalResult l2 = lerch(1.0 - rf, 1.0 - q, s, 0.5 * tol, budget);
  cplx ph = e_of(0.5 * r);  // e^{i pi r}
  cplx val = ph * l1.value + std::conj(ph) * l2.value;
  double err = l1.err_est + l2.err_est +
               4e-16 * (std::abs(l1.value) + std::abs(l2.value));
  return {val, err, Method::direct_series};
}

cplx expint_e1(cplx z) {
  if (z == cplx{0.0, 0.0}) throw domain_error("expint_e1: singular at 0");
  if (z.imag() == 0.0 && z.real() < 0.0)
    throw domain_error("expint_e1: branch cut on the negative real axis");
  if (std::abs(z) <= 7.0) return e1_series(z);
  return std::exp(-z) * e1_cf_factor(z);
}

double sawtooth_tail_im(double x, std::int64_t K) {
  if (!std::isfinite(x)) throw domain_error("sawtooth_tail_im: x not finite");
  if (K < 0) throw domain_error("sawtooth_tail_im: K must be >= 0");
  double xt = signed_offset(x);
  if (xt == 0.0) return 0.0;

  // Sum the head of the tail directly so Euler-Maclaurin always starts at
  // a >= 2001, where its correction terms decay at least 4x per order.
  double direct = 0.0;
  std::int64_t a0 = K + 1;
  if (K < 2000) {
    dd xdd = dd_from(x);
    dd w = dd_frac(dd_mul(xdd, double(K + 1)));
    dd stp = dd_frac(xdd);
    for (std::int64_t k = K + 1; k <= 2000; ++k) {
      direct += std::sin(two_pi * to_double(w)) / double(k);
      w = dd_frac(dd_add(w, stp));
    }
    a0 = 2001;
  }

  // sum_{k>=a} e^{-wk}/k with w = -2 pi i xt: E1(aw) + e^{-aw}(1/(2a) +
  // sum_j bf[j] S_j), S_j = sum_i C(2j-1,i) w^{2j-1-i} i! a^{-i-1}.
  // a*xt is exact in dd, so the oscillatory prefactor is fully reduced.
  double a = double(a0);
  dd ax = dd_mul(dd_from(xt), a);
  cplx z{0.0, -two_pi * to_double(ax)};
  double th = two_pi * to_double(dd_signed_offset(ax));
  cplx eaw{std::cos(th), std::sin(th)};  // e^{-aw}
  cplx e1 = (std::abs(z) <= 7.0) ? e1_series(z) : eaw * e1_cf_factor(z);

  cplx w{0.0, -two_pi * xt};
  cplx corr{1.0 / (2.0 * a), 0.0};
  const double* bf = bern_fac();
  double wa = std::abs(w) * a;
  for (int j = 1; j <= 20; ++j) {
    int m = 2 * j - 1;
    cplx inner{0.0, 0.0};
    if (wa >= double(m)) {
      // Descend from the w^m/a end; each factor e/(wa) shrinks the term.
      cplx t{1.0 / a, 0.0};
      for (int i = 0; i < m; ++i) t *= w;
      inner = t;
      for (int e = m; e >= 1; --e) {
        t *= double(e) / (w * a);
        inner += t;
      }
    } else {
      // Ascend from the m!/a^{m+1} end; underflow to 0 here means the
      // whole inner sum is below 1e-300 and can be dropped.
      double fm = 1.0;
      for (int i = 2; i <= m; ++i) fm *= double(i);
      cplx t{fm * std::pow(a, -double(m + 1)), 0.0};
      inner = t;
      for (int e = 1; e <= m; ++e) {
        t *= w * (a / double(e));
        inner += t;
      }
    }
    cplx term = bf[j] * inner;
    corr += term;
    if (std::abs(term) < 1e-18 * (1.0 + std::abs(corr))) break;
  }
  return (e1 + eaw * corr).imag() + direct;
}

}  // namespace bz
