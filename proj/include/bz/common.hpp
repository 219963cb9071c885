#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>

namespace bz {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double two_pi = 2.0 * pi;

// Raised for arguments outside a function's domain (alpha <= 1, q outside
// (0,1], sigma below the supported floor, ...).
struct domain_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Raised when guard/interval arithmetic cannot certify a discrete decision
// (continued-fraction digits exhausted, indicator boundary undecidable).
struct precision_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when an evaluation would exceed its configured term budget.
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Method {
  direct_series,
  euler_maclaurin,
  functional_equation,
  continuation,
  abel_oracle,
};

inline const char* method_name(Method m) {
  switch (m) {
    case Method::direct_series: return "direct-series";
    case Method::euler_maclaurin: return "euler-maclaurin";
    case Method::functional_equation: return "functional-equation";
    case Method::continuation: return "continuation";
    case Method::abel_oracle: return "abel-oracle";
  }
  return "unknown";
}

// A numeric result plus an estimate (usually a bound) of its absolute error.
struct EvalResult {
  cplx value{0.0, 0.0};
  double err_est = 0.0;
  Method method = Method::direct_series;
};

// e(t) = exp(2 pi i t)
inline cplx e_of(double t) {
  double a = two_pi * t;
  return {std::cos(a), std::sin(a)};
}

// {x} in [0,1)
inline double frac(double x) {
  double f = x - std::floor(x);
  return (f >= 1.0) ? 0.0 : f;
}

// t = m + sign * dist with m = <t>, the nearest integer under the convention
// <t> = floor(t) when {t} = 1/2, so the signed offset t - <t> lies in
// (-1/2, 1/2].
struct NearestInt {
  std::int64_t m = 0;
  int sign = 1;
  double dist = 0.0;
};

// Signed offset t - <t> in (-1/2, 1/2].
inline double signed_offset(double t, double* m_out = nullptr) {
  double m = std::nearbyint(t);  // ties to even, repaired below
  double ds = t - m;
  if (ds == -0.5) {
    m -= 1.0;
    ds = 0.5;
  }
  if (m_out) *m_out = m;
  return ds;
}

inline NearestInt nearest_int(double t) {
  double m = 0.0;
  double ds = signed_offset(t, &m);
  NearestInt r;
  r.m = static_cast<std::int64_t>(m);
  r.sign = (ds < 0.0) ? -1 : 1;
  r.dist = std::fabs(ds);
  return r;
}

// ||t|| = distance from t to the nearest integer, in [0, 1/2].
inline double dist_to_int(double t) { return std::fabs(signed_offset(t)); }

}  // namespace bz
