// Scalar reference implementations of the hot loops. These are the
// correctness baseline for the SIMD variants; both share the same panel
// structure (double-double re-seeding of long phase walks every `panel`
// steps) so that their rounding behaviour stays comparable and the pure
// arithmetic scans agree bit-for-bit.

#include <cmath>

#include "bz/dd.hpp"
#include "bz/kernels.hpp"

namespace bz::kernels {
namespace {

inline double offset_from_nearest(double t) {
  double m = std::nearbyint(t);
  double ds = t - m;
  if (ds == -0.5) ds = 0.5;
  return ds;
}

MinHit fracdist_min_scalar(double g, double r, std::int64_t k0, std::int64_t count) {
  MinHit best{HUGE_VAL, k0};
  for (std::int64_t i = 0; i < count; ++i) {
    std::int64_t k = k0 + i;
    double d = std::fabs(offset_from_nearest(r - static_cast<double>(k) * g));
    if (d < best.dist) best = {d, k};
  }
  return best;
}

void fracdist_collect_scalar(double g, double r, std::int64_t k0, std::int64_t count,
                             double thresh, std::vector<std::int64_t>* out) {
  for (std::int64_t i = 0; i < count; ++i) {
    std::int64_t k = k0 + i;
    double d = std::fabs(offset_from_nearest(r - static_cast<double>(k) * g));
    if (d <= thresh) out->push_back(k);
  }
}

void kronecker_fill_scalar(double g, double d, std::int64_t m0, std::int64_t count,
                           double* out) {
  for (std::int64_t i = 0; i < count; ++i) {
    double x = g * static_cast<double>(m0 + i) + d;
    double f = x - std::floor(x);
    if (f >= 1.0) f -= 1.0;
    if (f < 0.0) f = 0.0;
    out[i] = f;
  }
}

cplx gauss_phase_sum_scalar(double v, double w, double u, std::int64_t n0,
                            std::int64_t n1, const double* wt) {
  double sr = 0.0, si = 0.0;
  for (std::int64_t n = n0; n < n1; ++n) {
    double x = static_cast<double>(n) + v;
    double e = std::exp(-pi * x * x * u);
    if (wt) e *= wt[n - n0];
    double a = two_pi * (w * static_cast<double>(n));
    sr += e * std::cos(a);
    si += e * std::sin(a);
  }
  return {sr, si};
}

cplx beatty_gauss_sum_scalar(double g, double r, double q, double u,
                             int subtract_mean, std::int64_t n0, std::int64_t n1) {
  double sr = 0.0, si = 0.0;
  double base = subtract_mean ? -g : 0.0;
  dd gdd = dd_from(g), rdd = dd_from(r);
  for (std::int64_t p0 = n0; p0 < n1; p0 += panel) {
    std::int64_t pend = (n1 - p0 < panel) ? n1 : p0 + panel;
    double pd = static_cast<double>(p0);
    double fb = to_double(dd_frac(dd_mul(gdd, -pd)));   // frac(-g p0)
    double pb = to_double(dd_frac(dd_mul(rdd, pd)));    // frac(r p0)
    for (std::int64_t n = p0; n < pend; ++n) {
      double j = static_cast<double>(n - p0);
      double f = fb - j * g;
      f -= std::floor(f);
      if (f >= 1.0) f -= 1.0;
      double wgt = (f > 0.0 && f < g) ? 1.0 + base : base;
      double x = (pd + j) + q;
      double e = wgt * std::exp(-pi * x * x * u);
      double a = two_pi * (pb + j * r);
      sr += e * std::cos(a);
      si += e * std::sin(a);
    }
  }
  return {sr, si};
}

cplx resonance_strip_sum_scalar(const StripArgs& a) {
  double sr = 0.0, si = 0.0;
  const double piu = pi / a.u;
  const double F = std::exp(-2.0 * piu);
  const double ipi = 1.0 / pi;
  dd gdd = dd_from(a.g);
  dd half_g = dd_mul(gdd, 0.5);
  for (std::int64_t p0 = a.k0; p0 < a.k0 + a.count; p0 += panel) {
    std::int64_t pend = (a.k0 + a.count - p0 < panel) ? a.k0 + a.count : p0 + panel;
    // k g mod 2 at the panel start, from dd: 2 frac(k g / 2).
    double fb = 2.0 * to_double(dd_frac(dd_mul(half_g, static_cast<double>(p0))));
    for (std::int64_t k = p0; k < pend; ++k) {
      double j = static_cast<double>(k - p0);
      double f = fb + j * a.g;  // k g mod 2, up to +panel*g
      double s = std::sin(pi * f);
      double c = std::cos(pi * f);
      double inv_pik = ipi / static_cast<double>(k);
      double xre = s * c * inv_pik;   // Re X(k) = Re X(-k)
      double xim = -s * s * inv_pik;  // Im X(k); X(-k) = conj(X(k))
      for (int sgn = 0; sgn < 2; ++sgn) {
        double t = sgn ? a.r + f : a.r - f;
        double ds = offset_from_nearest(t);
        double e0 = std::exp(-piu * ds * ds);
        double mp = std::exp(-piu * (1.0 + 2.0 * ds));
        double mm = std::exp(-piu * (1.0 - 2.0 * ds));
        double ssr = a.qph[a.np].real(), ssi = a.qph[a.np].imag();
        double dp = mp, dm = mm, mpc = mp, mmc = mm;
        for (int jj = 1; jj <= a.np; ++jj) {
          const cplx& qp = a.qph[a.np + jj];
          const cplx& qm = a.qph[a.np - jj];
          ssr += dp * qp.real() + dm * qm.real();
          ssi += dp * qp.imag() + dm * qm.imag();
          mpc *= F;
          dp *= mpc;
          mmc *= F;
          dm *= mmc;
        }
        double aq = -two_pi * a.q * ds;
        double cq = std::cos(aq), sq = std::sin(aq);
        // X(sk) * cis(aq), with Im X flipping sign for the negative k.
        double xi = sgn ? -xim : xim;
        double cr = xre * cq - xi * sq;
        double ci = xre * sq + xi * cq;
        sr += e0 * (cr * ssr - ci * ssi);
        si += e0 * (cr * ssi + ci * ssr);
      }
    }
  }
  return {sr, si};
}

void sawtooth_imL_fill_scalar(const double* x, const double* phi,
                              const unsigned char* skip, std::int64_t n,
                              double kp1, double* out) {
  const double k2 = kp1 + 1.0, k3 = kp1 + 2.0;
  for (std::int64_t i = 0; i < n; ++i) {
    if (skip[i]) continue;
    double a = two_pi * x[i];
    double zr = std::cos(a), zi = std::sin(a);
    double w1r = 1.0 - zr, w1i = -zi;
    double inv = 1.0 / (w1r * w1r + w1i * w1i);
    double ir = w1r * inv, ii = -w1i * inv;  // 1/(1-z)
    // v = z/(K3 w1), inner = 1 - 2v, v2 = z/(K2 w1), S = (1 - v2*inner)/(K1 w1)
    double vr = (zr * ir - zi * ii), vi = (zr * ii + zi * ir);  // z/w1
    double inr = 1.0 - 2.0 * vr / k3, ini = -2.0 * vi / k3;
    double v2r = vr / k2, v2i = vi / k2;
    double tr = 1.0 - (v2r * inr - v2i * ini);
    double ti = -(v2r * ini + v2i * inr);
    double s1r = (tr * ir - ti * ii) / kp1, s1i = (tr * ii + ti * ir) / kp1;
    double Zr = std::cos(phi[i]), Zi = std::sin(phi[i]);
    out[i] = Zr * s1i + Zi * s1r;  // Im(Z * S)
  }
}

const Ops scalar_table = {
    "scalar",
    fracdist_min_scalar,
    fracdist_collect_scalar,
    kronecker_fill_scalar,
    gauss_phase_sum_scalar,
    beatty_gauss_sum_scalar,
    resonance_strip_sum_scalar,
    sawtooth_imL_fill_scalar,
};

}  // namespace

const Ops& scalar_ops() { return scalar_table; }

}  // namespace bz::kernels
