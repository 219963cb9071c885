#include "bz/continuation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>

#include "bz/beatty.hpp"
#include "bz/dd.hpp"
#include "bz/special.hpp"

namespace bz {

namespace {

// 16-point Gauss-Legendre on [-1,1], positive half (nodes symmetric).
constexpr double kGlX[8] = {
    0.09501250983763744019, 0.28160355077925891323,
    0.45801677765722738634, 0.61787624440264374845,
    0.75540440835500303390, 0.86563120238783174388,
    0.94457502307323257608, 0.98940093499164993260};
constexpr double kGlW[8] = {
    0.18945061045506849629, 0.18260341504492358887,
    0.16915651939500253819, 0.14959598881657673208,
    0.12462897125553387205, 0.09515851168249278481,
    0.06225352393864789286, 0.02715245941175409485};

struct Quad {
  cplx value{0.0, 0.0};
  double err = 0.0;
};

// f(t, &eval_err) -> integrand value; eval_err is the evaluator's own bound.
template <class F>
cplx gl16(F& f, double x0, double x1, double* eval_err) {
  double c = 0.5 * (x0 + x1), h = 0.5 * (x1 - x0);
  cplx acc{0.0, 0.0};
  double ea = 0.0;
  for (int i = 0; i < 8; ++i) {
    double e1 = 0.0, e2 = 0.0;
    acc += kGlW[i] * (f(c - h * kGlX[i], &e1) + f(c + h * kGlX[i], &e2));
    ea += kGlW[i] * (e1 + e2);
  }
  *eval_err = ea * h;
  return acc * h;
}

// Deterministic bisection refinement: accept a panel once halving moves the
// panel value by less than its share of tol.
template <class F>
void refine(F& f, double x0, double x1, cplx whole, double tol_per_len,
            int depth, Quad* out) {
  double mid = 0.5 * (x0 + x1);
  double el = 0.0, er = 0.0;
  cplx left = gl16(f, x0, mid, &el);
  cplx right = gl16(f, mid, x1, &er);
  double disc = std::abs(left + right - whole);
  if (depth >= 26 || disc <= tol_per_len * (x1 - x0)) {
    out->value += left + right;
    out->err += disc + el + er;
    return;
  }
  refine(f, x0, mid, left, tol_per_len, depth + 1, out);
  refine(f, mid, x1, right, tol_per_len, depth + 1, out);
}

template <class F>
Quad integrate(F&& f, double a, double b, double tol) {
  Quad out;
  if (!(b > a)) return out;
  double e0 = 0.0;
  cplx whole = gl16(f, a, b, &e0);
  refine(f, a, b, whole, tol / (b - a), 0, &out);
  return out;
}

cplx inv_pow(double x, cplx s) { return std::exp(-s * std::log(x)); }

// pi^{s/2} / Gamma(s/2): kills the continuation's quadrature error where it
// vanishes (s = 0, -2, ...) and equals 1 at s = 1.
cplx mellin_prefactor(cplx s) {
  return std::exp(0.5 * s * std::log(pi)) * rcp_gamma(0.5 * s);
}

// (mellin_prefactor(s) - 1)/(s - 1), analytic across s = 1.
cplx prefactor_ratio(cplx s) {
  cplx h = s - 1.0;
  if (std::abs(h) < 1e-4) {
    // Taylor at s = 1; cubic remainder stays below 3e-14 inside the cutoff
    return 1.5541199559354118268 +
           h * (0.59079414365025828542 + h * 0.017548704715388729965);
  }
  return (mellin_prefactor(s) - 1.0) / h;
}

bool integer_r(double r, std::int64_t* ell) {
  double n = std::nearbyint(r);
  if (n == r && std::abs(n) < 9.0e15) {
    *ell = static_cast<std::int64_t>(n);
    return true;
  }
  return false;
}

cplx half_turn(double r) {  // e^{i pi r}, parity-exact for integer r
  std::int64_t ell = 0;
  if (integer_r(r, &ell)) return cplx((ell & 1LL) ? -1.0 : 1.0, 0.0);
  return e_of(0.5 * r);
}

// Cut for the [1, inf) integrals: beyond U the envelope 3 e^{-pi d^2 u} swamps
// the u^{sigma/2 - 1} growth by e^{-44}.
double upper_cut(double sigma, double d) {
  double c = pi * d * d;
  double grow = std::max(0.0, 0.5 * sigma - 1.0);
  double U = 50.0;
  for (int i = 0; i < 4; ++i)
    U = std::max(3.0, (44.0 + 2.0 * grow * std::log(U)) / c);
  return U;
}

double envelope_tail(double U, double sigma, double d, double scale) {
  double c = pi * d * d;
  return 2.0 * scale * std::pow(U, std::max(0.0, 0.5 * sigma - 1.0)) *
         std::exp(-std::min(700.0, c * U)) / c;
}

// Mass of |Psi| <= 3 u^{-1/2} e^{-pi ds^2 / u} below u_min under u^{s/2-1}.
double psi_mass_below(double u_min, double sigma, double ds) {
  double c = pi * ds * ds;
  double V = 1.0 / u_min;
  double p = 0.5 * (1.0 - sigma);
  if (c * V >= 1.0)
    return 6.3 * std::pow(V, p) * std::exp(-std::min(700.0, c * V));
  double j0 = std::ceil(std::log2(1.0 / (c * V)));
  return 3.0 * (j0 + 2.1) * std::pow(c, -p);
}

EvalResult lerch_ladder(double z, double q, cplx s, double tol) {
  try {
    return lerch(z, q, s, tol);
  } catch (const budget_error&) {
  }
  try {
    return lerch(z, q, s, tol * 100.0);
  } catch (const budget_error&) {
  }
  return lerch(z, q, s, tol * 10000.0);
}

struct SeriesPart {
  cplx value{0.0, 0.0};
  double err = 0.0;
};

std::int64_t fluct_length(double sigma, double mod_s, double tol,
                          std::int64_t cap) {
  double want = std::pow(8.0 * std::max(1.0, mod_s) / (sigma * tol),
                         1.0 / sigma);
  want = std::min(want, static_cast<double>(cap));
  return std::max<std::int64_t>(10000, static_cast<std::int64_t>(want));
}

// sum_{n>=1} ind(n) e(rho n) (n+q)^{-s} for Re s > sigma_floor, split as
// mean gamma e(rho n) + resonant constant A + bounded fluctuation, the last
// summed with an Abel tail whose oscillation is read off the walked range.
SeriesPart beatty_series_accel(const IrrationalNumber& a, double rho, double q,
                               cplx s, std::int64_t k_scan, double tol,
                               std::int64_t cap) {
  double g = a.gamma();
  double sig = s.real();
  cplx amp{0.0, 0.0};
  double delta = 0.0;
  std::int64_t ell = 0;
  if (!integer_r(rho, &ell)) {
    if (auto hit = lattice_decompose(a, rho, k_scan, 1e-9)) {
      amp = fourier_coeff(a, hit->k);
      delta = hit->delta;
    }
  }
  double part_tol = std::max(tol * 0.25, 1e-12);
  EvalResult mean = lerch_ladder(rho, q, s, part_tol);
  EvalResult res{};
  bool has_amp = amp != cplx{0.0, 0.0};
  if (has_amp) res = hurwitz_zeta(s, 1.0 + q);

  std::int64_t N = fluct_length(sig, std::abs(s), tol, cap);
  dd step = dd_from(rho);
  dd ph = dd_from(0.0);
  cplx fsum{0.0, 0.0};
  cplx run{0.0, 0.0}, ref{0.0, 0.0};
  double dmax = 0.0;
  std::int64_t half = N / 2;
  std::int64_t m = 1, b = a.floor_mul(1);
  for (std::int64_t n = 1; n <= N; ++n) {
    ph = dd_frac(dd_add(ph, step));
    double ind = 0.0;
    if (n == b) {
      ind = 1.0;
      ++m;
      b = a.floor_mul(m);
    }
    cplx h = (ind - g) * e_of(to_double(ph)) - amp;
    run += h;
    fsum += h * std::exp(-s * std::log(static_cast<double>(n) + q));
    if (n == half) ref = run;
    if (n > half) dmax = std::max(dmax, std::abs(run - ref));
  }
  // future oscillation estimate; a residual lattice offset delta drifts the
  // partial sums quadratically, so fold that in explicitly
  double sup_d = 1.5 * dmax + 1.0 +
                 std::abs(amp) * std::min(2.0 * static_cast<double>(N),
                                          8.0 * pi * std::abs(delta) *
                                              static_cast<double>(N) *
                                              static_cast<double>(N));
  double tail = sup_d * (std::abs(s) / sig) *
                std::pow(static_cast<double>(N) + q, -sig);
  SeriesPart out;
  out.value = g * (mean.value - inv_pow(q, s)) + amp * res.value + fsum;
  out.err = g * mean.err_est + std::abs(amp) * res.err_est + tail +
            1e-15 * (std::abs(out.value) + 1.0);
  return out;
}

constexpr double kDirectTol = 1e-9;
constexpr std::int64_t kDirectCap = 4000000;

}  // namespace

ZetaSharpValue zeta_sharp(double r, double q, cplx s,
                          const ContinuationConfig& cfg, bool subtract_pole) {
  if (!(q > 0.0 && q < 1.0)) throw domain_error("zeta_sharp: q must lie in (0,1)");
  if (!std::isfinite(r)) throw domain_error("zeta_sharp: r must be finite");
  double sig = s.real();
  std::int64_t ell = 0;
  if (integer_r(r, &ell)) {
    double sign = (ell & 1LL) ? -1.0 : 1.0;
    EvalResult h0 = hurwitz_regular(s, q);
    EvalResult h1 = hurwitz_regular(s, 1.0 - q);
    ZetaSharpValue out;
    out.pole_coefficient = cplx(2.0 * sign, 0.0);
    out.value = sign * (h0.value + h1.value);
    out.err_est = h0.err_est + h1.err_est;
    out.method = Method::euler_maclaurin;
    if (!subtract_pole) {
      if (s == cplx(1.0, 0.0))
        throw domain_error("zeta_sharp: simple pole at s = 1");
      out.value += out.pole_coefficient / (s - 1.0);
    }
    return out;
  }
  if (sig > 1.0) {
    for (double tol : {1e-12, 1e-10, 3e-9}) {
      try {
        EvalResult e = zeta_sharp_series(r, q, s, tol);
        return {e.value, cplx{0.0, 0.0}, e.err_est, e.method};
      } catch (const budget_error&) {
      }
    }
  }
  cplx g = mellin_prefactor(s);
  if (g == cplx{0.0, 0.0}) {
    // prefactor zero (s = 0): the pair vanishes since its Mellin transform
    // stays finite there
    return {cplx{0.0, 0.0}, cplx{0.0, 0.0}, 1e-16, Method::continuation};
  }
  if (sig < cfg.sigma_min)
    throw domain_error("zeta_sharp: Re s below supported region");
  double d = std::min(q, 1.0 - q);
  double U = upper_cut(sig, d);
  auto f = [&](double t, double* e) {
    double u = std::exp(t);
    *e = 1e-14 * (1.0 + 1.0 / std::sqrt(u));
    return psi(r, q, u) * std::exp(0.5 * s * t);
  };
  Quad lo = integrate(f, std::log(cfg.u_min), 0.0, cfg.quad_tol);
  Quad hi = integrate(f, 0.0, std::log(U), cfg.quad_tol);
  double trunc = psi_mass_below(cfg.u_min, sig, signed_offset(r));
  ZetaSharpValue out;
  out.value = g * half_turn(r) * (lo.value + hi.value);
  out.err_est = std::abs(g) * (lo.err + hi.err + trunc +
                               envelope_tail(U, sig, d, 3.0)) +
                1e-15 * std::abs(out.value);
  out.method = Method::continuation;
  return out;
}

Continuation::Continuation(const PhiContext& ctx, ContinuationConfig cfg)
    : ctx_(ctx), cfg_(cfg) {
  if (!(cfg_.u_min > 0.0 && cfg_.u_min <= cfg_.u_switch && cfg_.u_switch <= 1.0))
    throw domain_error("continuation: need 0 < u_min <= u_switch <= 1");
  if (!(cfg_.quad_tol > 0.0))
    throw domain_error("continuation: quad_tol must be positive");
  if (!(cfg_.sigma_min > 0.0))
    throw domain_error("continuation: sigma_min must be positive");
  k_eff_ = std::min(cfg_.k_max, ctx_.k_max());
  if (k_eff_ < 2) throw domain_error("continuation: k_max must be at least 2");
  r_integer_ = integer_r(ctx_.r(), &r_ell_);
  e_pi_r_ = half_turn(ctx_.r());
  c_floor_ = 0.0;
}

cplx Continuation::phi_reg(double u, double* err) const {
  std::uint64_t key = std::bit_cast<std::uint64_t>(u);
  auto it = low_cache_.find(key);
  if (it != low_cache_.end()) {
    *err = it->second.second;
    return it->second.first;
  }
  cplx v;
  double e;
  if (u > cfg_.u_switch) {
    EvalResult p = phi_direct(ctx_, u);
    v = p.value - ctx_.amplitude() / std::sqrt(u);
    e = p.err_est + 3e-16 * std::abs(ctx_.amplitude()) / std::sqrt(u);
  } else {
    EvalResult p = phi_transformed(ctx_, u, k_eff_, true);
    v = p.value;
    e = p.err_est;
  }
  if (u <= 100.0 * cfg_.u_min) c_floor_ = std::max(c_floor_, std::abs(v));
  low_cache_.emplace(key, std::make_pair(v, e));
  *err = e;
  return v;
}

cplx Continuation::phi_plain(double u, double* err) const {
  std::uint64_t key = std::bit_cast<std::uint64_t>(u);
  auto it = high_cache_.find(key);
  if (it != high_cache_.end()) {
    *err = it->second.second;
    return it->second.first;
  }
  EvalResult p = phi_direct(ctx_, u);
  high_cache_.emplace(key, std::make_pair(p.value, p.err_est));
  *err = p.err_est;
  return p.value;
}

EvalResult Continuation::f_infty(cplx s) const {
  double sig = s.real();
  double d = std::min(ctx_.q(), 1.0 - ctx_.q());
  double U = upper_cut(sig, d);
  auto f = [this, s](double t, double* e) {
    cplx p = phi_plain(std::exp(t), e);
    cplx w = std::exp(0.5 * s * t);
    *e *= std::abs(w);
    return p * w;
  };
  Quad q = integrate(f, 0.0, std::log(U), cfg_.quad_tol);
  double tail = envelope_tail(U, sig, d, 3.0 * (1.0 + ctx_.gamma()));
  return {q.value, q.err + tail, Method::continuation};
}

F0Result Continuation::f0_regularized(cplx s) const {
  double sig = s.real();
  if (sig < cfg_.sigma_min)
    throw domain_error("f0_regularized: Re s below supported region");
  auto f = [this, s](double t, double* e) {
    cplx p = phi_reg(std::exp(t), e);
    cplx w = std::exp(0.5 * s * t);
    *e *= std::abs(w);
    return p * w;
  };
  Quad q = integrate(f, std::log(cfg_.u_min), 0.0, cfg_.quad_tol);
  // the regularized integrand keeps an oscillatory floor below u_min; bound
  // the neglected stretch by the largest magnitude seen near the cut
  double below =
      std::max(c_floor_, 1e-3) * (2.0 / sig) * std::pow(cfg_.u_min, 0.5 * sig);
  F0Result out;
  out.regular = {q.value, q.err + below, Method::continuation};
  out.pole_coefficient = 2.0 * ctx_.amplitude();
  return out;
}

ZSharpResult Continuation::z_sharp(cplx s, ZMode mode,
                                   bool subtract_pole) const {
  double sig = s.real();
  if (mode == ZMode::automatic)
    mode = (sig > 1.5) ? ZMode::direct : ZMode::continued;
  cplx A = ctx_.amplitude();
  cplx pole = 2.0 * e_pi_r_ * A;
  if (r_integer_)
    pole += cplx(((r_ell_ & 1LL) ? -2.0 : 2.0) * ctx_.gamma(), 0.0);
  if (!subtract_pole && s == cplx(1.0, 0.0) && pole != cplx{0.0, 0.0})
    throw domain_error("z_sharp: simple pole at s = 1; request pole subtraction");

  ZSharpResult out;
  out.pole_coefficient = pole;
  double qv = ctx_.q();
  cplx epr = e_pi_r_, emr = std::conj(e_pi_r_);

  if (mode == ZMode::direct) {
    if (!(sig > 1.0))
      throw domain_error("z_sharp: direct mode needs Re s > 1");
    SeriesPart zp = beatty_series_accel(ctx_.alpha(), ctx_.r(), qv, s, k_eff_,
                                        kDirectTol, kDirectCap);
    SeriesPart zm = beatty_series_accel(ctx_.alpha(), -ctx_.r(), 1.0 - qv, s,
                                        k_eff_, kDirectTol, kDirectCap);
    out.value = epr * zp.value + emr * zm.value;
    out.err_est = zp.err + zm.err;
    out.method = Method::direct_series;
    out.region_note = "direct";
    if (subtract_pole && pole != cplx{0.0, 0.0}) out.value -= pole / (s - 1.0);
    return out;
  }

  cplx g = mellin_prefactor(s);
  cplx integral{0.0, 0.0};
  double integral_err = 0.0;
  if (g != cplx{0.0, 0.0}) {
    // an exact prefactor zero (s = 0) wipes the integral term, which is what
    // lets the formula reach below sigma_min there
    if (sig < cfg_.sigma_min)
      throw domain_error("z_sharp: Re s below supported region");
    F0Result f0 = f0_regularized(s);
    EvalResult fi = f_infty(s);
    integral = f0.regular.value + fi.value;
    integral_err = std::abs(g) * (f0.regular.err_est + fi.err_est);
  }
  ZetaSharpValue zs = zeta_sharp(ctx_.r(), qv, s, cfg_, true);
  cplx reg = ctx_.gamma() * zs.value - 0.5 * epr * inv_pow(qv, s) -
             0.5 * emr * inv_pow(1.0 - qv, s) + g * epr * integral +
             2.0 * epr * A * prefactor_ratio(s);
  out.value = reg;
  if (!subtract_pole && pole != cplx{0.0, 0.0}) out.value += pole / (s - 1.0);
  out.err_est = ctx_.gamma() * zs.err_est + integral_err +
                1e-15 * (std::abs(reg) + 1.0);
  out.method = Method::continuation;
  out.region_note = "continued";
  return out;
}

ResidueReport Continuation::residue_at_one(const std::string& method) const {
  cplx gz_pole{0.0, 0.0};
  if (r_integer_)
    gz_pole = cplx(((r_ell_ & 1LL) ? -2.0 : 2.0) * ctx_.gamma(), 0.0);
  ResidueReport rep;
  if (r_integer_) {
    rep.predicted_theorem = gz_pole;
    rep.predicted_density = cplx{0.0, 0.0};
  } else if (ctx_.hit()) {
    rep.predicted_theorem = 2.0 * e_pi_r_ * ctx_.amplitude();
    rep.predicted_density = rep.predicted_theorem;
  }
  cplx acc{0.0, 0.0};
  if (method == "contour") {
    const double rho = 0.01;
    double esum = 0.0;
    for (int j = 0; j < 8; ++j) {
      cplx w = rho * e_of(j / 8.0);
      ZSharpResult z = z_sharp(1.0 + w, ZMode::continued);
      acc += w * z.value;
      esum += z.err_est;
    }
    acc /= 8.0;
    // value errors enter scaled by rho; the 8-point mean leaves a_7 rho^8
    rep.err_est = rho * esum / 8.0 + 1e-15;
    rep.method = "contour";
  } else if (method == "limit") {
    cplx prev{0.0, 0.0}, curr{0.0, 0.0};
    double elast = 0.0;
    for (int j = 5; j <= 10; ++j) {
      cplx s{1.0 + std::ldexp(1.0, -j), 0.0};
      prev = curr;
      ZSharpResult z = z_sharp(s, ZMode::continued);
      curr = (s - 1.0) * z.value;
      elast = std::abs(s - 1.0) * z.err_est;
    }
    acc = 2.0 * curr - prev;
    rep.err_est = std::abs(curr - prev) + 3.0 * elast + 1e-15;
    rep.method = "limit";
  } else {
    throw domain_error("residue_at_one: method must be contour or limit");
  }
  rep.measured = acc - gz_pole;
  return rep;
}

EvalResult z_direct(const IrrationalNumber& a, double r, double q, cplx s,
                    double tol, std::int64_t n_max) {
  if (!(q > 0.0 && q < 1.0)) throw domain_error("z_direct: q must lie in (0,1)");
  if (!(tol > 0.0)) throw domain_error("z_direct: tol must be positive");
  double sig = s.real();
  if (!(sig > 1.0)) throw domain_error("z_direct: Re s must exceed 1");
  double g = a.gamma();
  auto bound = [&](double n) {
    return g * std::pow(n + q, 1.0 - sig) / (sig - 1.0) + std::pow(n + q, -sig);
  };
  double target = 0.9 * tol;
  double nd = std::pow(g / ((sig - 1.0) * target), 1.0 / (sig - 1.0));
  if (!std::isfinite(nd)) nd = 2.0 * static_cast<double>(n_max);
  nd = std::min(std::max(nd, 64.0), 2.0 * static_cast<double>(n_max));
  while (bound(nd) > target && nd < 2.0 * static_cast<double>(n_max))
    nd *= 1.25;
  std::int64_t N = static_cast<std::int64_t>(nd) + 1;
  if (bound(static_cast<double>(N)) > target || N > n_max)
    throw budget_error("z_direct: term budget cannot reach tol");
  dd rdd = dd_from(r);
  cplx acc{0.0, 0.0};
  std::int64_t count = 0;
  for (std::int64_t m = 1;; ++m) {
    std::int64_t n = a.floor_mul(m);
    if (n > N) break;
    dd ph = dd_frac(dd_mul(rdd, static_cast<double>(n)));
    acc += e_of(to_double(ph)) *
           std::exp(-s * std::log(static_cast<double>(n) + q));
    ++count;
  }
  return {acc, bound(static_cast<double>(N)) + 1e-15 * static_cast<double>(count),
          Method::direct_series};
}

EvalResult z_fluctuation(const IrrationalNumber& a, double r, double q, cplx s,
                         std::int64_t n_max) {
  if (!(q > 0.0 && q < 1.0))
    throw domain_error("z_fluctuation: q must lie in (0,1)");
  double sig = s.real();
  double g = a.gamma();
  std::int64_t N = std::max<std::int64_t>(1000, n_max);
  std::int64_t ell = 0;
  if (integer_r(r, &ell)) {
    // e(rn) = 1, and the counting function pins |H(n)| < 1 outright, so a
    // second summation by parts reaches Re s > -1/2:
    //   sum (chi - gamma) f(n) = (gamma - 1/2) f(1) + sum h(n) (f(n)-f(n+1)),
    //   h(n) = 1/2 - frac((n+1) gamma), mean zero
    if (!(sig > -0.5))
      throw domain_error("z_fluctuation: Re s must exceed -1/2");
    EvalResult mean = hurwitz_zeta(s, 1.0 + q);
    dd gdd = a.gamma_dd();
    dd w = dd_frac(gdd);
    cplx fsum{0.0, 0.0};
    double h2 = 0.0, h2_ref = 0.0, d2max = 0.0;
    std::int64_t half = N / 2;
    cplx f_cur = std::exp(-s * std::log(1.0 + q));
    cplx f_first = f_cur;
    for (std::int64_t n = 1; n <= N; ++n) {
      w = dd_frac(dd_add(w, gdd));
      double h = 0.5 - to_double(w);
      cplx f_next = std::exp(-s * std::log(static_cast<double>(n + 1) + q));
      fsum += h * (f_cur - f_next);
      f_cur = f_next;
      h2 += h;
      if (n == half) h2_ref = h2;
      if (n > half) d2max = std::max(d2max, std::abs(h2 - h2_ref));
    }
    double sup2 = 1.5 * d2max + 2.0;
    double tail = sup2 * (std::abs(s) * std::abs(s + 1.0) / (sig + 1.0)) *
                  std::pow(static_cast<double>(N) + q, -sig - 1.0);
    cplx value = g * mean.value + (g - 0.5) * f_first + fsum;
    return {value, g * mean.err_est + tail + 1e-15 * (std::abs(value) + 1.0),
            Method::abel_oracle};
  }
  auto hit = lattice_decompose(a, r, 1000000, 1e-9);
  if (!hit)
    throw domain_error("z_fluctuation: unsupported r (no lattice decomposition)");
  if (!(sig > 0.0))
    throw domain_error("z_fluctuation: Re s must be positive for twisted r");
  SeriesPart p = beatty_series_accel(a, r, q, s, 1000000, 1e-10, N);
  return {p.value, p.err, Method::abel_oracle};
}

EvalResult z_fluctuation_residue(const IrrationalNumber& a, double r, double q,
                                 std::int64_t n_max) {
  cplx prev{0.0, 0.0}, curr{0.0, 0.0}, before{0.0, 0.0};
  double perr = 0.0;
  for (int j = 4; j <= 14; ++j) {
    double eps = std::ldexp(1.0, -j);
    EvalResult z = z_fluctuation(a, r, q, cplx{1.0 + eps, 0.0}, n_max);
    before = prev;
    prev = curr;
    curr = eps * z.value;
    perr = eps * z.err_est;
  }
  // Richardson in (s-1): residue = 2 m_{j+1} - m_j + O(4^{-j})
  cplx fin = 2.0 * curr - prev;
  cplx alt = 2.0 * prev - before;
  return {fin, std::abs(fin - alt) + 3.0 * perr + 1e-13, Method::abel_oracle};
}

std::vector<GridPoint> grid_scan(const Continuation& c, const GridSpec& spec) {
  if (spec.n_re < 1 || spec.n_im < 1)
    throw domain_error("grid_scan: grid counts must be positive");
  std::vector<GridPoint> rows;
  rows.reserve(static_cast<std::size_t>(spec.n_re) * spec.n_im);
  for (int i = 0; i < spec.n_im; ++i) {
    double im = (spec.n_im == 1)
                    ? spec.im_lo
                    : spec.im_lo + (spec.im_hi - spec.im_lo) * i / (spec.n_im - 1);
    for (int j = 0; j < spec.n_re; ++j) {
      double re = (spec.n_re == 1)
                      ? spec.re_lo
                      : spec.re_lo + (spec.re_hi - spec.re_lo) * j / (spec.n_re - 1);
      GridPoint p;
      p.s = cplx(re, im);
      try {
        p.z = c.z_sharp(p.s);
      } catch (const std::exception& ex) {
        p.ok = false;
        p.error = ex.what();
        p.z.value = cplx(std::numeric_limits<double>::quiet_NaN(),
                         std::numeric_limits<double>::quiet_NaN());
        p.z.err_est = std::numeric_limits<double>::infinity();
        p.z.region_note = "error";
      }
      rows.push_back(std::move(p));
    }
  }
  return rows;
}

std::string grid_csv(const std::vector<GridPoint>& rows) {
  std::string out = "s_re,s_im,val_re,val_im,err_est,pole_re,pole_im,region\n";
  char buf[512];
  for (const auto& p : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%s\n",
                  p.s.real(), p.s.imag(), p.z.value.real(), p.z.value.imag(),
                  p.z.err_est, p.z.pole_coefficient.real(),
                  p.z.pole_coefficient.imag(),
                  p.ok ? p.z.region_note.c_str() : "error");
    out += buf;
  }
  return out;
}

}  // namespace bz
