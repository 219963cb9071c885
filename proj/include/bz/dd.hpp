#pragma once

#include <cmath>
#include <cstdint>

namespace bz {

// Double-double value a = hi + lo with |lo| <= ulp(hi)/2, giving ~31 decimal
// digits. Used for the long Kronecker/Beatty walks, where plain doubles
// would accumulate ~1e-10 of drift over 1e7 steps, and for re-verifying
// near-hit distances where ties must be resolved exactly.
struct dd {
  double hi = 0.0;
  double lo = 0.0;
};

namespace dd_detail {

inline dd two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

// Requires |a| >= |b| (or a == 0).
inline dd quick_two_sum(double a, double b) {
  double s = a + b;
  return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

}  // namespace dd_detail

inline dd dd_from(double a) { return {a, 0.0}; }

inline dd dd_from_int(std::int64_t n) {
  // Exact split even for |n| > 2^53.
  double hi = static_cast<double>(n);
  double lo = static_cast<double>(n - static_cast<std::int64_t>(hi));
  return dd_detail::quick_two_sum(hi, lo);
}

inline double to_double(dd a) { return a.hi + a.lo; }

inline dd dd_add(dd a, dd b) {
  using namespace dd_detail;
  dd s = two_sum(a.hi, b.hi);
  dd t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline dd dd_neg(dd a) { return {-a.hi, -a.lo}; }

inline dd dd_sub(dd a, dd b) { return dd_add(a, dd_neg(b)); }

inline dd dd_add(dd a, double b) { return dd_add(a, dd{b, 0.0}); }

inline dd dd_mul(dd a, dd b) {
  using namespace dd_detail;
  dd p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline dd dd_mul(dd a, double b) {
  using namespace dd_detail;
  dd p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  return quick_two_sum(p.hi, p.lo);
}

inline dd dd_div(dd a, dd b) {
  using namespace dd_detail;
  double q1 = a.hi / b.hi;
  dd r = dd_sub(a, dd_mul(b, q1));
  double q2 = r.hi / b.hi;
  r = dd_sub(r, dd_mul(b, q2));
  double q3 = r.hi / b.hi;
  dd q = quick_two_sum(q1, q2);
  return dd_add(q, q3);
}

inline int dd_cmp(dd a, dd b) {
  if (a.hi < b.hi) return -1;
  if (a.hi > b.hi) return 1;
  if (a.lo < b.lo) return -1;
  if (a.lo > b.lo) return 1;
  return 0;
}

inline dd dd_abs(dd a) { return (a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0)) ? dd_neg(a) : a; }

inline dd dd_floor(dd a) {
  double f = std::floor(a.hi);
  if (f != a.hi) return {f, 0.0};
  return dd_detail::quick_two_sum(f, std::floor(a.lo));
}

// {a} in [0,1).
inline dd dd_frac(dd a) {
  dd r = dd_sub(a, dd_floor(a));
  if (r.hi < 0.0) r = dd_add(r, 1.0);
  if (r.hi >= 1.0) r = dd_add(r, -1.0);
  return r;
}

// Signed offset a - <a> in (-1/2, 1/2], floor convention at half-integers.
inline dd dd_signed_offset(dd a) {
  dd f = dd_frac(a);
  // f in [0,1); offset = f if f <= 1/2 else f - 1.
  if (f.hi > 0.5 || (f.hi == 0.5 && f.lo > 0.0)) return dd_add(f, -1.0);
  return f;
}

// ||a|| as a dd.
inline dd dd_dist_to_int(dd a) { return dd_abs(dd_signed_offset(a)); }

// sqrt(n) for a nonnegative integer, accurate to full dd precision.
inline dd dd_sqrt_int(std::int64_t n) {
  if (n == 0) return {0.0, 0.0};
  dd x = dd_from(std::sqrt(static_cast<double>(n)));
  dd nn = dd_from_int(n);
  // Two Newton steps: x <- x + (n - x^2) / (2x).
  for (int i = 0; i < 2; ++i) {
    dd r = dd_sub(nn, dd_mul(x, x));
    x = dd_add(x, dd_div(r, dd_mul(x, 2.0)));
  }
  return x;
}

}  // namespace bz
