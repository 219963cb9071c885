#include "bz/theta.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "bz/beatty.hpp"
#include "bz/dd.hpp"
#include "bz/kernels.hpp"
#include "bz/special.hpp"

namespace bz {

namespace {

// exp(-pi x^2 u) is below 8e-20 once pi x^2 u >= kWinLog; every window below
// is sized from this budget.
constexpr double kWinLog = 44.0;

// asymptotic sawtooth slots are good to 6/zeta^4 <= 1e-14 past this
constexpr double kZetaExact = 5000.0;

// phase walks in the kernels are validated up to ~4e6 steps
constexpr std::int64_t kStripMax = 4000000;

double window_halfwidth(double u) { return std::sqrt(kWinLog / (pi * u)); }

void check_u(double u) {
  if (!(u > 0.0) || !std::isfinite(u))
    throw domain_error("theta: u must be positive and finite");
}

}  // namespace

cplx theta_direct(double v, double w, double u) {
  check_u(u);
  double hw = window_halfwidth(u) + 1.0;
  auto n0 = static_cast<std::int64_t>(std::ceil(-v - hw));
  auto n1 = static_cast<std::int64_t>(std::floor(-v + hw)) + 1;
  cplx s = kernels::active_ops().gauss_phase_sum(v, w, u, n0, n1, nullptr);
  return e_of(0.5 * v * w) * s;
}

cplx theta(double v, double w, double u) {
  check_u(u);
  if (u >= 1.0) return theta_direct(v, w, u);
  return theta_direct(w, -v, 1.0 / u) / std::sqrt(u);
}

cplx psi(double r, double q, double u) {
  return e_of(-0.5 * q * r) * theta(q, r, u);
}

cplx psi_plus(double r, double q, double u) {
  check_u(u);
  double hw = window_halfwidth(u) + 1.0;
  auto n1 = static_cast<std::int64_t>(std::floor(-q + hw)) + 1;
  if (n1 < 1) n1 = 1;
  return kernels::active_ops().gauss_phase_sum(q, r, u, 0, n1, nullptr);
}

PhiContext::PhiContext(const IrrationalNumber& a, double r, double q,
                       std::int64_t k_max, double lattice_tol)
    : a_(a), r_(r), q_(q), g_(a.gamma()), k_max_(k_max) {
  if (!(q > 0.0 && q < 1.0)) throw domain_error("PhiContext: need 0 < q < 1");
  if (!std::isfinite(r)) throw domain_error("PhiContext: r must be finite");
  if (k_max_ < 1) throw domain_error("PhiContext: k_max must be >= 1");
  hit_ = lattice_decompose(a_, r_, k_max_, lattice_tol);
  if (hit_ && hit_->k != 0) amp_ = fourier_coeff(a_, hit_->k);
  table_t_ = std::sqrt(table_u_ * kWinLog / pi);
  table_ = near_hits(a_, r_, k_max_, table_t_);
}

cplx small_u_amplitude(const PhiContext& ctx) { return ctx.amplitude(); }

cplx psi_alpha(const PhiContext& ctx, double u) {
  check_u(u);
  double q = ctx.q();
  double hw = window_halfwidth(u) + 1.0;
  auto n0 = static_cast<std::int64_t>(std::ceil(-q - hw));
  auto n1 = static_cast<std::int64_t>(std::floor(-q + hw)) + 1;
  dd rdd = dd_from(ctx.r());
  cplx acc{0.0, 0.0};
  for (std::int64_t n = n0; n < n1; ++n) {
    double w = indicator_value(ctx.alpha(), n);
    if (w == 0.0) continue;
    double x = static_cast<double>(n) + q;
    double ph = to_double(dd_frac(dd_mul(rdd, static_cast<double>(n))));
    acc += (w * std::exp(-pi * x * x * u)) * e_of(ph);
  }
  return acc;
}

EvalResult phi_direct(const PhiContext& ctx, double u) {
  check_u(u);
  double q = ctx.q(), g = ctx.gamma(), r = ctx.r();
  double hw = window_halfwidth(u) + 1.0;
  auto n0 = static_cast<std::int64_t>(std::ceil(-q - hw));
  auto n1 = static_cast<std::int64_t>(std::floor(-q + hw)) + 1;

  // n = 0, -1 carry the exact boundary weight 1/2
  double b0 = std::exp(-pi * q * q * u);
  double b1 = std::exp(-pi * (1.0 - q) * (1.0 - q) * u);
  cplx acc = (0.5 - g) * (b0 + e_of(-r) * b1);

  std::int64_t mmax = std::max(std::llabs(n0), std::llabs(n1 - 1));
  // the kernel decides pulse membership by strict comparison on a walked
  // double orbit; require the true orbit to clear that noise by a margin
  double noise = 1e-13 + static_cast<double>(mmax) *
                             (6e-17 + ctx.alpha().uncertainty());
  bool kernel_ok = false;
  if (mmax >= 1) {
    try {
      kernel_ok = ctx.alpha().min_dist_bound(mmax) > 100.0 * noise;
    } catch (const precision_error&) {
      kernel_ok = false;
    }
  }
  const auto& ops = kernels::active_ops();
  if (kernel_ok) {
    if (n0 < -1) acc += ops.beatty_gauss_sum(g, r, q, u, 1, n0, -1);
    if (n1 > 1) acc += ops.beatty_gauss_sum(g, r, q, u, 1, 1, n1);
  } else {
    dd rdd = dd_from(r);
    for (std::int64_t n = n0; n < n1; ++n) {
      if (n == 0 || n == -1) continue;
      double w = indicator_value(ctx.alpha(), n) - g;
      double x = static_cast<double>(n) + q;
      double ph = to_double(dd_frac(dd_mul(rdd, static_cast<double>(n))));
      acc += (w * std::exp(-pi * x * x * u)) * e_of(ph);
    }
  }

  double wq = hw - 1.0;
  double geo = -std::expm1(-pi * u * (2.0 * wq + 1.0));
  double tail = 2.0 * std::exp(-pi * wq * wq * u) / std::max(geo, 1e-300);
  double mass = 1.0 / std::sqrt(u);
  double err = tail + (7e-13 + 3e-16) * (mass + 2.0);
  return {acc, err, Method::direct_series};
}

EvalResult phi_transformed(const PhiContext& ctx, double u, std::int64_t K,
                           bool subtract_amplitude) {
  check_u(u);
  if (u > 4.0)
    throw domain_error("phi_transformed: needs u <= 4 (use phi_direct)");
  if (K < 2 || K > kStripMax)
    throw domain_error("phi_transformed: K out of range [2, 4e6]");
  double q = ctx.q(), r = ctx.r(), g = ctx.gamma();
  dd gdd = ctx.alpha().gamma_dd();
  double unc = ctx.alpha().uncertainty();
  double ru = std::sqrt(u);

  int np = static_cast<int>(std::ceil(std::sqrt(u * kWinLog / pi) + 0.5));
  std::vector<cplx> qph(2 * np + 1);
  for (int j = 0; j <= np; ++j) {
    qph[np + j] = e_of(-q * j);
    qph[np - j] = std::conj(qph[np + j]);
  }

  std::int64_t k_hit =
      (ctx.hit() && ctx.hit()->k != 0 && std::llabs(ctx.hit()->k) <= K)
          ? ctx.hit()->k
          : 0;
  bool regular = subtract_amplitude && k_hit != 0;
  double sum_absx = (2.0 / pi) * (std::log(static_cast<double>(K)) + 1.0);

  // inner Gaussian around a single offset, split so the resonant term can be
  // regularized against its u -> 0 limit without cancellation
  auto inner_sm1 = [&](double ds) {
    cplx sm1{0.0, 0.0};
    for (int j = 1; j <= np; ++j) {
      double jj = static_cast<double>(j);
      sm1 += std::exp(-pi * jj * (jj + 2.0 * ds) / u) * qph[np + j] +
             std::exp(-pi * jj * (jj - 2.0 * ds) / u) * qph[np - j];
    }
    return sm1;
  };
  auto term_plain = [&](cplx x, double ds, cplx sm1) {
    return x * (e_of(-q * ds) * std::exp(-pi * ds * ds / u) * (1.0 + sm1));
  };
  auto term_regular = [&](cplx x, double ds, cplx sm1) {
    cplx cph = e_of(-q * ds);
    cplx pm1 = std::expm1(-pi * ds * ds / u) * cph + (cph - 1.0);
    return x * (pm1 * (1.0 + sm1) + sm1);
  };

  cplx strip{0.0, 0.0};
  double strip_err = 0.0;
  bool used_table = (u <= ctx.table_u() && K <= ctx.k_max());
  if (used_table) {
    for (const NearHit& h : ctx.hit_table()) {
      if (std::llabs(h.k) > K) continue;
      cplx x = fourier_coeff(ctx.alpha(), h.k);
      cplx sm1 = inner_sm1(h.ds);
      strip += (regular && h.k == k_hit) ? term_regular(x, h.ds, sm1)
                                         : term_plain(x, h.ds, sm1);
    }
    // every skipped k has exp(-pi ds^2/u) below the table floor
    double t = ctx.table_threshold();
    strip_err += sum_absx * (2.0 * np + 1.0) * std::exp(-pi * t * t / u);
  } else {
    kernels::StripArgs sa;
    sa.g = g;
    sa.r = r;
    sa.q = q;
    sa.u = u;
    sa.np = np;
    sa.qph = qph.data();
    if (!regular) {
      sa.k0 = 1;
      sa.count = K;
      strip = kernels::active_ops().resonance_strip_sum(sa);
    } else {
      std::int64_t ka = std::llabs(k_hit);
      sa.k0 = 1;
      sa.count = ka - 1;
      if (sa.count > 0) strip = kernels::active_ops().resonance_strip_sum(sa);
      sa.k0 = ka + 1;
      sa.count = K - ka;
      if (sa.count > 0) strip += kernels::active_ops().resonance_strip_sum(sa);
      for (std::int64_t sk : {ka, -ka}) {
        dd t = dd_sub(dd_from(r), dd_mul(gdd, static_cast<double>(sk)));
        double ds = to_double(dd_signed_offset(t));
        cplx x = fourier_coeff(ctx.alpha(), sk);
        cplx sm1 = inner_sm1(ds);
        strip += (sk == k_hit) ? term_regular(x, ds, sm1)
                               : term_plain(x, ds, sm1);
      }
    }
    // walked offsets carry ~1e-13 noise; the Gaussian's slope peaks at
    // 0.61 sqrt(2 pi / u)
    strip_err += (1e-13 + static_cast<double>(K) * unc) *
                 (0.61 * std::sqrt(two_pi / u) + two_pi) * sum_absx;
  }
  strip_err += 2e-16 * sum_absx * (2.0 * np + 1.0);

  // sawtooth tails: slots L(j gamma) for j in [-M, M+1]
  auto m_win = static_cast<std::int64_t>(std::ceil(std::sqrt(kWinLog / (pi * u)))) + 1;
  std::int64_t nslots = 2 * m_win + 2;
  std::vector<double> xs(nslots), ph(nslots, 0.0), out(nslots, 0.0);
  std::vector<double> rem(nslots, 0.0);
  std::vector<unsigned char> skip(nslots, 0);
  double kp1 = static_cast<double>(K + 1);
  for (std::int64_t i = 0; i < nslots; ++i) {
    std::int64_t j = i - m_win;
    double xt = to_double(dd_signed_offset(dd_mul(gdd, static_cast<double>(j))));
    xs[i] = xt;
    double w1 = 2.0 * std::fabs(std::sin(pi * xt));
    double zeta = kp1 * w1;
    if (j == 0 || zeta < kZetaExact) {
      skip[i] = 1;
    } else {
      ph[i] = two_pi * to_double(dd_signed_offset(
                  dd_mul(gdd, static_cast<double>(j) * kp1)));
      rem[i] = 6.0 / (zeta * zeta * zeta * zeta) + 1e-14;
    }
    // decimal digits shift the slot by |j| unc; the tail's slope is capped
    // by the asymptotic envelope 2 pi / ||1 - z||
    if (unc > 0.0 && j != 0)
      rem[i] += static_cast<double>(std::llabs(j)) * unc * two_pi /
                std::max(w1, 1e-300);
  }
  kernels::active_ops().sawtooth_imL_fill(xs.data(), ph.data(), skip.data(),
                                          nslots, kp1, out.data());
  for (std::int64_t i = 0; i < nslots; ++i) {
    if (!skip[i]) continue;
    if (i == m_win) continue;  // j = 0: exactly zero
    out[i] = sawtooth_tail_im(xs[i], K);
    rem[i] += 1e-12;
  }

  cplx tail{0.0, 0.0};
  double tail_err = 0.0;
  dd rdd = dd_from(r);
  for (std::int64_t m = -m_win; m <= m_win; ++m) {
    double xq = static_cast<double>(m) + q;
    double wgt = std::exp(-pi * xq * xq * u);
    double phm = to_double(dd_frac(dd_mul(rdd, static_cast<double>(m))));
    cplx wm = wgt * e_of(phm);
    tail += wm * ((out[m + m_win + 1] - out[m + m_win]) / pi);
    tail_err += wgt * (rem[m + m_win + 1] + rem[m + m_win]) / pi;
  }
  // |L| <= 3.5 uniformly bounds the discarded |m| > M terms
  double mw = static_cast<double>(m_win);
  double geo = -std::expm1(-two_pi * mw * u);
  tail_err += 2.3 * std::exp(-pi * mw * mw * u) / std::max(geo, 1e-300);

  cplx val = strip / ru + tail;
  double err = strip_err / ru + tail_err + 2.3e-16 * (std::abs(strip) / ru + 1.0);
  if (subtract_amplitude && !regular && ctx.amplitude() != cplx{0.0, 0.0}) {
    // hit exists but lies outside this K: fall back to plain subtraction
    val -= ctx.amplitude() / ru;
    err += 2.3e-16 * std::abs(ctx.amplitude()) / ru;
  }
  return {val, err, Method::functional_equation};
}

}  // namespace bz
