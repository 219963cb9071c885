#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "bz/common.hpp"
#include "bz/diophantine.hpp"
#include "bz/theta.hpp"

namespace bz {

struct ContinuationConfig {
  double u_min = 1e-10;
  double u_switch = 1e-6;
  std::int64_t k_max = 1000000;
  double quad_tol = 1e-12;
  // slack epsilon used by the Lemma-form discrepancy bound tau + eps
  double eps_exponent = 0.05;
  double sigma_min = 0.05;
};

enum class ZMode { automatic, direct, continued };

// value is the full Z#(s); its only singularity, the simple pole at s = 1,
// is carried analytically through pole_coefficient, so accuracy does not
// degrade as s -> 1. Callers wanting the pole-free part subtract
// pole_coefficient/(s-1) or request subtract_pole.
struct ZSharpResult {
  cplx value{0.0, 0.0};
  cplx pole_coefficient{0.0, 0.0};
  double err_est = 0.0;
  Method method = Method::continuation;
  std::string region_note;  // "direct" | "continued"
};

// Residue of Z# - gamma zeta# at s = 1 (for off-lattice and k != 0 cases the
// gamma zeta# part is pole-free, so this is the residue of Z# itself).
struct ResidueReport {
  cplx measured{0.0, 0.0};
  cplx predicted_theorem{0.0, 0.0};
  cplx predicted_density{0.0, 0.0};
  double err_est = 0.0;
  std::string method;  // "contour" | "limit" | "abel-oracle"
};

struct F0Result {
  // integral of (phi - A u^{-1/2}) u^{s/2-1} over [u_min, 1]: the pole-free
  // part of F0, analytic through s = 1
  EvalResult regular;
  cplx pole_coefficient{0.0, 0.0};  // 2A
};

// zeta#(r,q;s) with the Hurwitz pole (integer r only) carried symbolically.
struct ZetaSharpValue {
  cplx value{0.0, 0.0};  // full zeta#(s)
  cplx pole_coefficient{0.0, 0.0};
  double err_est = 0.0;
  Method method = Method::direct_series;
};

// Binds (ctx, cfg) and caches phi evaluations across s, so a residue contour
// or grid scan pays the quadrature nodes once.
class Continuation {
 public:
  explicit Continuation(const PhiContext& ctx, ContinuationConfig cfg = {});

  const PhiContext& context() const { return ctx_; }
  const ContinuationConfig& config() const { return cfg_; }

  // entire piece: integral of phi(u) u^{s/2-1} over [1, infinity)
  EvalResult f_infty(cplx s) const;
  // pole-free piece of the [0,1] integral; pre: Re s >= sigma_min
  F0Result f0_regularized(cplx s) const;

  ZSharpResult z_sharp(cplx s, ZMode mode = ZMode::automatic,
                       bool subtract_pole = false) const;

  // method: "contour" (mean of (s-1)Z# over |s-1| = 0.01) or "limit"
  // ((s-1)Z# extrapolated along s = 1 + 2^{-j})
  ResidueReport residue_at_one(const std::string& method = "contour") const;

 private:
  cplx phi_reg(double u, double* err) const;
  cplx phi_plain(double u, double* err) const;

  PhiContext ctx_;
  ContinuationConfig cfg_;
  std::int64_t k_eff_;
  bool r_integer_ = false;
  std::int64_t r_ell_ = 0;     // nearest integer when r is integral
  cplx e_pi_r_{1.0, 0.0};      // e^{pi i r}, parity-exact for integer r
  mutable std::unordered_map<std::uint64_t, std::pair<cplx, double>> low_cache_;
  mutable std::unordered_map<std::uint64_t, std::pair<cplx, double>> high_cache_;
  mutable double c_floor_ = 1.0;
};

ZetaSharpValue zeta_sharp(double r, double q, cplx s,
                          const ContinuationConfig& cfg = {},
                          bool subtract_pole = false);

// Plain summation over Beatty terms, tail bounded by integral comparison.
// Re s > 1; throws budget_error when the bound cannot reach tol within n_max.
EvalResult z_direct(const IrrationalNumber& a, double r, double q, cplx s,
                    double tol = 1e-10, std::int64_t n_max = 20000000);

// Abel-summation oracle for Z_alpha(r,q;s), independent of the theta
// machinery: closed-form mean part via Hurwitz zeta plus partial summation
// of the fluctuation against the exact counting function. r = 0 supports
// Re s > -0.5 (second-order); lattice r = k gamma + ell supports Re s > 0.
EvalResult z_fluctuation(const IrrationalNumber& a, double r, double q, cplx s,
                         std::int64_t n_max = 1000000);
// Residue of Z_alpha(r,q;s) at s = 1 by (s-1)-extrapolation along 1 + 2^{-j}.
EvalResult z_fluctuation_residue(const IrrationalNumber& a, double r, double q,
                                 std::int64_t n_max = 1000000);

struct GridSpec {
  double re_lo = 0.5, re_hi = 2.0;
  int n_re = 4;
  double im_lo = 0.0, im_hi = 0.0;
  int n_im = 1;
};

struct GridPoint {
  cplx s;
  ZSharpResult z;
  bool ok = true;
  std::string error;
};

// Row-major (im outer, re inner), deterministic; per-point failures are
// recorded in the row, not thrown.
std::vector<GridPoint> grid_scan(const Continuation& c, const GridSpec& spec);
// header: s_re,s_im,val_re,val_im,err_est,pole_re,pole_im,region
std::string grid_csv(const std::vector<GridPoint>& rows);

}  // namespace bz
