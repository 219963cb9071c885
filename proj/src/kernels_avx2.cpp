// AVX2 variants of the hot loops. Compiled with -mavx2 -mfma in this TU
// only; selected at runtime by kernels_dispatch.cpp. The panel structure and
// per-element arithmetic mirror kernels_scalar.cpp exactly, so the pure
// arithmetic scans (fracdist_*, kronecker_fill) agree bit-for-bit with the
// scalar reference; the transcendental sums differ only at rounding level
// because vexp/vsincos are polynomial kernels rather than libm calls.

#if defined(__AVX2__)

#include <immintrin.h>

#include <cmath>

#include "bz/dd.hpp"
#include "bz/kernels.hpp"

namespace bz::kernels {
namespace {

// ---------------------------------------------------------------------------
// Vector math: Cephes-style exp and sincos for 4 doubles.

const __m256d v_one = _mm256_set1_pd(1.0);
const __m256d v_half = _mm256_set1_pd(0.5);
const __m256d v_signmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x8000000000000000LL));

// exp(x) for x in [-700, 709]; flushes to 0 below -700.
inline __m256d vexp(__m256d x) {
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
  const __m256d c1 = _mm256_set1_pd(6.93145751953125e-1);
  const __m256d c2 = _mm256_set1_pd(1.42860682030941723212e-6);
  const __m256d p0 = _mm256_set1_pd(1.26177193074810590878e-4);
  const __m256d p1 = _mm256_set1_pd(3.02994407707441961300e-2);
  const __m256d p2 = _mm256_set1_pd(9.99999999999999999910e-1);
  const __m256d q0 = _mm256_set1_pd(3.00198505138664455042e-6);
  const __m256d q1 = _mm256_set1_pd(2.52448340349684104192e-3);
  const __m256d q2 = _mm256_set1_pd(2.27265548208155028766e-1);
  const __m256d q3 = _mm256_set1_pd(2.00000000000000000005e0);

  __m256d zero_mask = _mm256_cmp_pd(x, _mm256_set1_pd(-700.0), _CMP_LT_OQ);
  x = _mm256_max_pd(x, _mm256_set1_pd(-700.0));
  x = _mm256_min_pd(x, _mm256_set1_pd(709.0));

  __m256d n = _mm256_floor_pd(_mm256_fmadd_pd(x, log2e, v_half));
  x = _mm256_fnmadd_pd(n, c1, x);
  x = _mm256_fnmadd_pd(n, c2, x);
  __m256d xx = _mm256_mul_pd(x, x);
  __m256d px = _mm256_fmadd_pd(p0, xx, p1);
  px = _mm256_fmadd_pd(px, xx, p2);
  px = _mm256_mul_pd(px, x);
  __m256d qx = _mm256_fmadd_pd(q0, xx, q1);
  qx = _mm256_fmadd_pd(qx, xx, q2);
  qx = _mm256_fmadd_pd(qx, xx, q3);
  __m256d e = _mm256_div_pd(px, _mm256_sub_pd(qx, px));
  e = _mm256_fmadd_pd(e, _mm256_set1_pd(2.0), v_one);

  __m128i ni = _mm256_cvttpd_epi32(n);
  __m256i nl = _mm256_cvtepi32_epi64(ni);
  nl = _mm256_add_epi64(nl, _mm256_set1_epi64x(1023));
  nl = _mm256_slli_epi64(nl, 52);
  e = _mm256_mul_pd(e, _mm256_castsi256_pd(nl));
  return _mm256_andnot_pd(zero_mask, e);
}

// sin(x), cos(x); |x| up to ~1e9 (3-part pi/4 reduction).
inline void vsincos(__m256d x, __m256d* s_out, __m256d* c_out) {
  const __m256d four_over_pi = _mm256_set1_pd(1.27323954473516268615);
  const __m256d dp1 = _mm256_set1_pd(7.85398125648498535156e-1);
  const __m256d dp2 = _mm256_set1_pd(3.77489470793079817668e-8);
  const __m256d dp3 = _mm256_set1_pd(2.69515142907905952645e-15);
  const __m256d s0 = _mm256_set1_pd(1.58962301576546568060e-10);
  const __m256d s1 = _mm256_set1_pd(-2.50507477628578072866e-8);
  const __m256d s2 = _mm256_set1_pd(2.75573136213857245213e-6);
  const __m256d s3 = _mm256_set1_pd(-1.98412698295895385996e-4);
  const __m256d s4 = _mm256_set1_pd(8.33333333332211858878e-3);
  const __m256d s5 = _mm256_set1_pd(-1.66666666666666307295e-1);
  const __m256d k0 = _mm256_set1_pd(-1.13585365213876817300e-11);
  const __m256d k1 = _mm256_set1_pd(2.08757008419747316778e-9);
  const __m256d k2 = _mm256_set1_pd(-2.75573141792967388112e-7);
  const __m256d k3 = _mm256_set1_pd(2.48015872888517179954e-5);
  const __m256d k4 = _mm256_set1_pd(-1.38888888888730564116e-3);
  const __m256d k5 = _mm256_set1_pd(4.16666666666665929218e-2);

  __m256d sign_x = _mm256_and_pd(x, v_signmask);
  __m256d ax = _mm256_andnot_pd(v_signmask, x);

  __m256d y = _mm256_floor_pd(_mm256_mul_pd(ax, four_over_pi));
  __m128i ji = _mm256_cvttpd_epi32(y);
  __m128i jodd = _mm_and_si128(ji, _mm_set1_epi32(1));
  ji = _mm_add_epi32(ji, jodd);
  y = _mm256_add_pd(y, _mm256_cvtepi32_pd(jodd));

  __m256d z = _mm256_fnmadd_pd(y, dp1, ax);
  z = _mm256_fnmadd_pd(y, dp2, z);
  z = _mm256_fnmadd_pd(y, dp3, z);
  __m256d zz = _mm256_mul_pd(z, z);

  __m256d sp = _mm256_fmadd_pd(s0, zz, s1);
  sp = _mm256_fmadd_pd(sp, zz, s2);
  sp = _mm256_fmadd_pd(sp, zz, s3);
  sp = _mm256_fmadd_pd(sp, zz, s4);
  sp = _mm256_fmadd_pd(sp, zz, s5);
  __m256d sinz = _mm256_fmadd_pd(_mm256_mul_pd(sp, zz), z, z);

  __m256d cp = _mm256_fmadd_pd(k0, zz, k1);
  cp = _mm256_fmadd_pd(cp, zz, k2);
  cp = _mm256_fmadd_pd(cp, zz, k3);
  cp = _mm256_fmadd_pd(cp, zz, k4);
  cp = _mm256_fmadd_pd(cp, zz, k5);
  __m256d cosz = _mm256_fnmadd_pd(zz, v_half, v_one);
  cosz = _mm256_fmadd_pd(cp, _mm256_mul_pd(zz, zz), cosz);

  // Octant selection from j (even): swap at j in {2,6}, negate sin at {4,6},
  // negate cos at {2,4}.
  __m256i jl = _mm256_cvtepi32_epi64(ji);
  __m256i bit1 = _mm256_and_si256(_mm256_srli_epi64(jl, 1), _mm256_set1_epi64x(1));
  __m256i bit2 = _mm256_and_si256(_mm256_srli_epi64(jl, 2), _mm256_set1_epi64x(1));
  __m256d swap_mask =
      _mm256_castsi256_pd(_mm256_cmpeq_epi64(bit1, _mm256_set1_epi64x(1)));
  __m256d signs_mask =
      _mm256_castsi256_pd(_mm256_cmpeq_epi64(bit2, _mm256_set1_epi64x(1)));
  __m256d signc_mask = _mm256_castsi256_pd(_mm256_cmpeq_epi64(
      _mm256_xor_si256(bit1, bit2), _mm256_set1_epi64x(1)));

  __m256d s = _mm256_blendv_pd(sinz, cosz, swap_mask);
  __m256d c = _mm256_blendv_pd(cosz, sinz, swap_mask);
  s = _mm256_xor_pd(s, _mm256_and_pd(signs_mask, v_signmask));
  c = _mm256_xor_pd(c, _mm256_and_pd(signc_mask, v_signmask));
  s = _mm256_xor_pd(s, sign_x);
  *s_out = s;
  *c_out = c;
}

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(s) + _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
}

inline double offset_from_nearest_sc(double t) {
  double m = std::nearbyint(t);
  double ds = t - m;
  if (ds == -0.5) ds = 0.5;
  return ds;
}

// ds = t - <t> per lane: round-ties-even then -1/2 -> +1/2 repair.
inline __m256d voffset(__m256d t) {
  __m256d m = _mm256_round_pd(t, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d ds = _mm256_sub_pd(t, m);
  __m256d fix = _mm256_cmp_pd(ds, _mm256_set1_pd(-0.5), _CMP_EQ_OQ);
  return _mm256_blendv_pd(ds, v_half, fix);
}

// ---------------------------------------------------------------------------

MinHit fracdist_min_avx2(double g, double r, std::int64_t k0, std::int64_t count) {
  const __m256d vg = _mm256_set1_pd(g);
  const __m256d vr = _mm256_set1_pd(r);
  __m256d vbest = _mm256_set1_pd(HUGE_VAL);
  __m256d vbk = _mm256_set1_pd(static_cast<double>(k0));
  __m256d vk = _mm256_add_pd(_mm256_set1_pd(static_cast<double>(k0)),
                             _mm256_set_pd(3.0, 2.0, 1.0, 0.0));
  const __m256d vstep = _mm256_set1_pd(4.0);
  std::int64_t i = 0;
  for (; i + 4 <= count; i += 4) {
    __m256d t = _mm256_sub_pd(vr, _mm256_mul_pd(vk, vg));
    __m256d d = _mm256_andnot_pd(v_signmask, voffset(t));
    __m256d lt = _mm256_cmp_pd(d, vbest, _CMP_LT_OQ);
    vbest = _mm256_blendv_pd(vbest, d, lt);
    vbk = _mm256_blendv_pd(vbk, vk, lt);
    vk = _mm256_add_pd(vk, vstep);
  }
  double bd[4], bk[4];
  _mm256_storeu_pd(bd, vbest);
  _mm256_storeu_pd(bk, vbk);
  MinHit best{HUGE_VAL, k0};
  for (int l = 0; l < 4; ++l) {
    if (bd[l] < best.dist ||
        (bd[l] == best.dist && static_cast<std::int64_t>(bk[l]) < best.k)) {
      best = {bd[l], static_cast<std::int64_t>(bk[l])};
    }
  }
  for (; i < count; ++i) {
    std::int64_t k = k0 + i;
    double d = std::fabs(offset_from_nearest_sc(r - static_cast<double>(k) * g));
    if (d < best.dist) best = {d, k};
  }
  return best;
}

void fracdist_collect_avx2(double g, double r, std::int64_t k0, std::int64_t count,
                           double thresh, std::vector<std::int64_t>* out) {
  const __m256d vg = _mm256_set1_pd(g);
  const __m256d vr = _mm256_set1_pd(r);
  const __m256d vt = _mm256_set1_pd(thresh);
  __m256d vk = _mm256_add_pd(_mm256_set1_pd(static_cast<double>(k0)),
                             _mm256_set_pd(3.0, 2.0, 1.0, 0.0));
  const __m256d vstep = _mm256_set1_pd(4.0);
  std::int64_t i = 0;
  for (; i + 4 <= count; i += 4) {
    __m256d t = _mm256_sub_pd(vr, _mm256_mul_pd(vk, vg));
    __m256d d = _mm256_andnot_pd(v_signmask, voffset(t));
    int m = _mm256_movemask_pd(_mm256_cmp_pd(d, vt, _CMP_LE_OQ));
    if (m) {
      for (int l = 0; l < 4; ++l) {
        if (m & (1 << l)) out->push_back(k0 + i + l);
      }
    }
    vk = _mm256_add_pd(vk, vstep);
  }
  for (; i < count; ++i) {
    std::int64_t k = k0 + i;
    double d = std::fabs(offset_from_nearest_sc(r - static_cast<double>(k) * g));
    if (d <= thresh) out->push_back(k);
  }
}

void kronecker_fill_avx2(double g, double d, std::int64_t m0, std::int64_t count,
                         double* out) {
  const __m256d vg = _mm256_set1_pd(g);
  const __m256d vd = _mm256_set1_pd(d);
  __m256d vm = _mm256_add_pd(_mm256_set1_pd(static_cast<double>(m0)),
                             _mm256_set_pd(3.0, 2.0, 1.0, 0.0));
  const __m256d vstep = _mm256_set1_pd(4.0);
  std::int64_t i = 0;
  for (; i + 4 <= count; i += 4) {
    __m256d x = _mm256_add_pd(_mm256_mul_pd(vg, vm), vd);
    __m256d f = _mm256_sub_pd(x, _mm256_floor_pd(x));
    __m256d ge1 = _mm256_cmp_pd(f, v_one, _CMP_GE_OQ);
    f = _mm256_blendv_pd(f, _mm256_sub_pd(f, v_one), ge1);
    __m256d lt0 = _mm256_cmp_pd(f, _mm256_setzero_pd(), _CMP_LT_OQ);
    f = _mm256_andnot_pd(lt0, f);
    _mm256_storeu_pd(out + i, f);
    vm = _mm256_add_pd(vm, vstep);
  }
  for (; i < count; ++i) {
    double x = g * static_cast<double>(m0 + i) + d;
    double f = x - std::floor(x);
    if (f >= 1.0) f -= 1.0;
    if (f < 0.0) f = 0.0;
    out[i] = f;
  }
}

cplx gauss_phase_sum_avx2(double v, double w, double u, std::int64_t n0,
                          std::int64_t n1, const double* wt) {
  const __m256d vv = _mm256_set1_pd(v);
  const __m256d vw = _mm256_set1_pd(w);
  const __m256d vmu = _mm256_set1_pd(-pi * u);
  const __m256d v2p = _mm256_set1_pd(two_pi);
  __m256d vn = _mm256_add_pd(_mm256_set1_pd(static_cast<double>(n0)),
                             _mm256_set_pd(3.0, 2.0, 1.0, 0.0));
  const __m256d vstep = _mm256_set1_pd(4.0);
  __m256d ar = _mm256_setzero_pd(), ai = _mm256_setzero_pd();
  std::int64_t count = n1 - n0;
  std::int64_t i = 0;
  for (; i + 4 <= count; i += 4) {
    __m256d x = _mm256_add_pd(vn, vv);
    __m256d e = vexp(_mm256_mul_pd(_mm256_mul_pd(x, x), vmu));
    if (wt) e = _mm256_mul_pd(e, _mm256_loadu_pd(wt + i));
    __m256d a = _mm256_mul_pd(v2p, _mm256_mul_pd(vw, vn));
    __m256d s, c;
    vsincos(a, &s, &c);
    ar = _mm256_fmadd_pd(e, c, ar);
    ai = _mm256_fmadd_pd(e, s, ai);
    vn = _mm256_add_pd(vn, vstep);
  }
  double sr = hsum(ar), si = hsum(ai);
  for (; i < count; ++i) {
    std::int64_t n = n0 + i;
    double x = static_cast<double>(n) + v;
    double e = std::exp(-pi * x * x * u);
    if (wt) e *= wt[i];
    double a = two_pi * (w * static_cast<double>(n));
    sr += e * std::cos(a);
    si += e * std::sin(a);
  }
  return {sr, si};
}

cplx beatty_gauss_sum_avx2(double g, double r, double q, double u,
                           int subtract_mean, std::int64_t n0, std::int64_t n1) {
  const double base = subtract_mean ? -g : 0.0;
  const __m256d vg = _mm256_set1_pd(g);
  const __m256d vr = _mm256_set1_pd(r);
  const __m256d vq = _mm256_set1_pd(q);
  const __m256d vmu = _mm256_set1_pd(-pi * u);
  const __m256d v2p = _mm256_set1_pd(two_pi);
  const __m256d vbase = _mm256_set1_pd(base);
  const __m256d vone_b = _mm256_set1_pd(1.0 + base);
  dd gdd = dd_from(g), rdd = dd_from(r);
  double sr = 0.0, si = 0.0;
  for (std::int64_t p0 = n0; p0 < n1; p0 += panel) {
    std::int64_t pend = (n1 - p0 < panel) ? n1 : p0 + panel;
    double pd = static_cast<double>(p0);
    double fb = to_double(dd_frac(dd_mul(gdd, -pd)));
    double pb = to_double(dd_frac(dd_mul(rdd, pd)));
    const __m256d vfb = _mm256_set1_pd(fb);
    const __m256d vpb = _mm256_set1_pd(pb);
    const __m256d vpd = _mm256_set1_pd(pd);
    __m256d vj = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
    const __m256d vstep = _mm256_set1_pd(4.0);
    __m256d ar = _mm256_setzero_pd(), ai = _mm256_setzero_pd();
    std::int64_t len = pend - p0;
    std::int64_t i = 0;
    for (; i + 4 <= len; i += 4) {
      __m256d f = _mm256_sub_pd(vfb, _mm256_mul_pd(vj, vg));
      f = _mm256_sub_pd(f, _mm256_floor_pd(f));
      __m256d ge1 = _mm256_cmp_pd(f, v_one, _CMP_GE_OQ);
      f = _mm256_blendv_pd(f, _mm256_sub_pd(f, v_one), ge1);
      __m256d in_band = _mm256_and_pd(
          _mm256_cmp_pd(f, _mm256_setzero_pd(), _CMP_GT_OQ),
          _mm256_cmp_pd(f, vg, _CMP_LT_OQ));
      __m256d wgt = _mm256_blendv_pd(vbase, vone_b, in_band);
      __m256d x = _mm256_add_pd(_mm256_add_pd(vpd, vj), vq);
      __m256d e = _mm256_mul_pd(
          wgt, vexp(_mm256_mul_pd(_mm256_mul_pd(x, x), vmu)));
      __m256d a = _mm256_mul_pd(
          v2p, _mm256_add_pd(vpb, _mm256_mul_pd(vj, vr)));
      __m256d s, c;
      vsincos(a, &s, &c);
      ar = _mm256_fmadd_pd(e, c, ar);
      ai = _mm256_fmadd_pd(e, s, ai);
      vj = _mm256_add_pd(vj, vstep);
    }
    sr += hsum(ar);
    si += hsum(ai);
    for (; i < len; ++i) {
      double j = static_cast<double>(i);
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

cplx resonance_strip_sum_avx2(const StripArgs& a) {
  const double piu = pi / a.u;
  const double F = std::exp(-2.0 * piu);
  const __m256d vpiu = _mm256_set1_pd(piu);
  const __m256d vF = _mm256_set1_pd(F);
  const __m256d vr = _mm256_set1_pd(a.r);
  const __m256d vmq2p = _mm256_set1_pd(-two_pi * a.q);
  const __m256d vpi = _mm256_set1_pd(pi);
  const __m256d vipi = _mm256_set1_pd(1.0 / pi);
  const __m256d vg = _mm256_set1_pd(a.g);
  dd half_g = dd_mul(dd_from(a.g), 0.5);
  __m256d ar = _mm256_setzero_pd(), ai = _mm256_setzero_pd();
  double sr = 0.0, si = 0.0;
  for (std::int64_t p0 = a.k0; p0 < a.k0 + a.count; p0 += panel) {
    std::int64_t pend = (a.k0 + a.count - p0 < panel) ? a.k0 + a.count : p0 + panel;
    double fb = 2.0 * to_double(dd_frac(dd_mul(half_g, static_cast<double>(p0))));
    const __m256d vfb = _mm256_set1_pd(fb);
    const __m256d vp0 = _mm256_set1_pd(static_cast<double>(p0));
    __m256d vj = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
    std::int64_t len = pend - p0;
    std::int64_t i = 0;
    for (; i + 4 <= len; i += 4) {
      __m256d f = _mm256_add_pd(vfb, _mm256_mul_pd(vj, vg));
      __m256d kd = _mm256_add_pd(vp0, vj);
      __m256d s, c;
      vsincos(_mm256_mul_pd(vpi, f), &s, &c);
      __m256d inv_pik = _mm256_div_pd(vipi, kd);
      __m256d xre = _mm256_mul_pd(_mm256_mul_pd(s, c), inv_pik);
      __m256d xim = _mm256_mul_pd(_mm256_mul_pd(s, s), inv_pik);
      xim = _mm256_xor_pd(xim, v_signmask);  // Im X(+k) = -s^2/(pi k)
      for (int sgn = 0; sgn < 2; ++sgn) {
        __m256d t = sgn ? _mm256_add_pd(vr, f) : _mm256_sub_pd(vr, f);
        __m256d ds = voffset(t);
        __m256d e0 = vexp(_mm256_xor_pd(
            _mm256_mul_pd(vpiu, _mm256_mul_pd(ds, ds)), v_signmask));
        __m256d two_ds = _mm256_add_pd(ds, ds);
        __m256d mp = vexp(_mm256_xor_pd(
            _mm256_mul_pd(vpiu, _mm256_add_pd(v_one, two_ds)), v_signmask));
        __m256d mm = vexp(_mm256_xor_pd(
            _mm256_mul_pd(vpiu, _mm256_sub_pd(v_one, two_ds)), v_signmask));
        __m256d ssr = _mm256_set1_pd(a.qph[a.np].real());
        __m256d ssi = _mm256_set1_pd(a.qph[a.np].imag());
        __m256d dp = mp, dm = mm, mpc = mp, mmc = mm;
        for (int jj = 1; jj <= a.np; ++jj) {
          const cplx& qp = a.qph[a.np + jj];
          const cplx& qm = a.qph[a.np - jj];
          ssr = _mm256_fmadd_pd(dp, _mm256_set1_pd(qp.real()), ssr);
          ssi = _mm256_fmadd_pd(dp, _mm256_set1_pd(qp.imag()), ssi);
          ssr = _mm256_fmadd_pd(dm, _mm256_set1_pd(qm.real()), ssr);
          ssi = _mm256_fmadd_pd(dm, _mm256_set1_pd(qm.imag()), ssi);
          mpc = _mm256_mul_pd(mpc, vF);
          dp = _mm256_mul_pd(dp, mpc);
          mmc = _mm256_mul_pd(mmc, vF);
          dm = _mm256_mul_pd(dm, mmc);
        }
        __m256d sq, cq;
        vsincos(_mm256_mul_pd(vmq2p, ds), &sq, &cq);
        __m256d xi = sgn ? _mm256_xor_pd(xim, v_signmask) : xim;
        __m256d cr = _mm256_fnmadd_pd(xi, sq, _mm256_mul_pd(xre, cq));
        __m256d ci = _mm256_fmadd_pd(xi, cq, _mm256_mul_pd(xre, sq));
        __m256d tr = _mm256_fnmadd_pd(ci, ssi, _mm256_mul_pd(cr, ssr));
        __m256d ti = _mm256_fmadd_pd(ci, ssr, _mm256_mul_pd(cr, ssi));
        ar = _mm256_fmadd_pd(e0, tr, ar);
        ai = _mm256_fmadd_pd(e0, ti, ai);
      }
      vj = _mm256_add_pd(vj, _mm256_set1_pd(4.0));
    }
    // Scalar tail within the panel, same expressions as the reference.
    for (; i < len; ++i) {
      std::int64_t k = p0 + i;
      double j = static_cast<double>(i);
      double f = fb + j * a.g;
      double s = std::sin(pi * f);
      double c = std::cos(pi * f);
      double inv_pik = (1.0 / pi) / static_cast<double>(k);
      double xre = s * c * inv_pik;
      double xim = -s * s * inv_pik;
      for (int sgn = 0; sgn < 2; ++sgn) {
        double t = sgn ? a.r + f : a.r - f;
        double ds = offset_from_nearest_sc(t);
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
        double xi = sgn ? -xim : xim;
        double cr = xre * cq - xi * sq;
        double ci = xre * sq + xi * cq;
        sr += e0 * (cr * ssr - ci * ssi);
        si += e0 * (cr * ssi + ci * ssr);
      }
    }
  }
  return {sr + hsum(ar), si + hsum(ai)};
}

void sawtooth_imL_fill_avx2(const double* x, const double* phi,
                            const unsigned char* skip, std::int64_t n,
                            double kp1, double* out) {
  const __m256d v2p = _mm256_set1_pd(two_pi);
  const __m256d vk1 = _mm256_set1_pd(kp1);
  const __m256d vik2 = _mm256_set1_pd(1.0 / (kp1 + 1.0));
  const __m256d vm2k3 = _mm256_set1_pd(-2.0 / (kp1 + 2.0));
  std::int64_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d zr, zi;
    vsincos(_mm256_mul_pd(v2p, _mm256_loadu_pd(x + i)), &zi, &zr);
    __m256d w1r = _mm256_sub_pd(v_one, zr);
    __m256d w1i = _mm256_xor_pd(zi, v_signmask);
    __m256d den = _mm256_fmadd_pd(w1r, w1r, _mm256_mul_pd(w1i, w1i));
    __m256d inv = _mm256_div_pd(v_one, den);
    __m256d ir = _mm256_mul_pd(w1r, inv);
    __m256d ii = _mm256_xor_pd(_mm256_mul_pd(w1i, inv), v_signmask);
    __m256d vr = _mm256_fnmadd_pd(zi, ii, _mm256_mul_pd(zr, ir));
    __m256d vi = _mm256_fmadd_pd(zi, ir, _mm256_mul_pd(zr, ii));
    __m256d inr = _mm256_fmadd_pd(vr, vm2k3, v_one);
    __m256d ini = _mm256_mul_pd(vi, vm2k3);
    __m256d v2r = _mm256_mul_pd(vr, vik2);
    __m256d v2i = _mm256_mul_pd(vi, vik2);
    __m256d tr = _mm256_sub_pd(
        v_one, _mm256_fnmadd_pd(v2i, ini, _mm256_mul_pd(v2r, inr)));
    __m256d ti = _mm256_xor_pd(
        _mm256_fmadd_pd(v2i, inr, _mm256_mul_pd(v2r, ini)), v_signmask);
    __m256d s1r = _mm256_div_pd(
        _mm256_fnmadd_pd(ti, ii, _mm256_mul_pd(tr, ir)), vk1);
    __m256d s1i = _mm256_div_pd(
        _mm256_fmadd_pd(ti, ir, _mm256_mul_pd(tr, ii)), vk1);
    __m256d Zr, Zi;
    vsincos(_mm256_loadu_pd(phi + i), &Zi, &Zr);
    __m256d res = _mm256_fmadd_pd(Zr, s1i, _mm256_mul_pd(Zi, s1r));
    __m256i mask = _mm256_cmpeq_epi64(
        _mm256_set_epi64x(skip[i + 3], skip[i + 2], skip[i + 1], skip[i]),
        _mm256_setzero_si256());
    _mm256_maskstore_pd(out + i, mask, res);
  }
  const double k2 = kp1 + 1.0, k3 = kp1 + 2.0;
  for (; i < n; ++i) {
    if (skip[i]) continue;
    double a = two_pi * x[i];
    double zr = std::cos(a), zi = std::sin(a);
    double w1r = 1.0 - zr, w1i = -zi;
    double inv = 1.0 / (w1r * w1r + w1i * w1i);
    double ir = w1r * inv, ii = -w1i * inv;
    double vre = (zr * ir - zi * ii), vim = (zr * ii + zi * ir);
    double inr = 1.0 - 2.0 * vre / k3, ini = -2.0 * vim / k3;
    double v2r = vre / k2, v2i = vim / k2;
    double tr = 1.0 - (v2r * inr - v2i * ini);
    double ti = -(v2r * ini + v2i * inr);
    double s1r = (tr * ir - ti * ii) / kp1, s1i = (tr * ii + ti * ir) / kp1;
    double Zr = std::cos(phi[i]), Zi = std::sin(phi[i]);
    out[i] = Zr * s1i + Zi * s1r;
  }
}

const Ops avx2_table = {
    "avx2",
    fracdist_min_avx2,
    fracdist_collect_avx2,
    kronecker_fill_avx2,
    gauss_phase_sum_avx2,
    beatty_gauss_sum_avx2,
    resonance_strip_sum_avx2,
    sawtooth_imL_fill_avx2,
};

}  // namespace

const Ops& avx2_ops() { return avx2_table; }

}  // namespace bz::kernels

#endif  // __AVX2__
