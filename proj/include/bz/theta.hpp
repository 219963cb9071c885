#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bz/common.hpp"
#include "bz/diophantine.hpp"

namespace bz {

// Theta_{v,w}(u) = e(vw/2) sum_{n in Z} exp(-pi (n+v)^2 u) e(wn),  u > 0,
// which satisfies Theta_{v,w}(u) = u^{-1/2} Theta_{w,-v}(1/u).
//
// theta_direct always sums the defining series (cost ~ u^{-1/2});
// theta applies the transformation for u < 1 so the window stays short.
cplx theta_direct(double v, double w, double u);
cplx theta(double v, double w, double u);

// Psi(r,q;u) = e(-qr/2) Theta_{q,r}(u) = sum_{n in Z} exp(-pi (n+q)^2 u) e(rn).
cplx psi(double r, double q, double u);
// One-sided half sum_{n >= 0}. No short-window transform exists for the half
// series, so the cost grows like u^{-1/2}.
cplx psi_plus(double r, double q, double u);

// Shared state for the Beatty-weighted Gaussian sums at fixed (alpha, r, q):
// the resonance decomposition r = k gamma + ell (k != 0) when one exists
// within k_max, the small-u amplitude it induces, and a table of every k
// whose offset ||r - k gamma|| is small enough to survive exp(-pi ds^2/u)
// somewhere below table_u(). Construction costs two scans over k <= k_max;
// decimal alphas whose digits cannot certify the scan throw precision_error.
class PhiContext {
 public:
  PhiContext(const IrrationalNumber& a, double r, double q,
             std::int64_t k_max = 1000000, double lattice_tol = 1e-9);

  const IrrationalNumber& alpha() const { return a_; }
  double r() const { return r_; }
  double q() const { return q_; }
  double gamma() const { return g_; }
  std::int64_t k_max() const { return k_max_; }

  // Pulse Fourier coefficient at the resonant k; 0 when r is off-lattice
  // (and for integer r, whose k = 0 resonance is cancelled by the gamma
  // subtraction built into phi).
  cplx amplitude() const { return amp_; }
  const std::optional<LatticeHit>& hit() const { return hit_; }

  // All 0 < |k| <= k_max with ||r - k gamma|| <= table_threshold(), sorted by
  // distance. Below table_u() these are the only k the strip sum needs.
  const std::vector<NearHit>& hit_table() const { return table_; }
  double table_u() const { return table_u_; }
  double table_threshold() const { return table_t_; }

 private:
  IrrationalNumber a_;
  double r_ = 0.0, q_ = 0.0, g_ = 0.0;
  std::int64_t k_max_ = 0;
  std::optional<LatticeHit> hit_;
  cplx amp_{0.0, 0.0};
  std::vector<NearHit> table_;
  double table_u_ = 4e-6;
  double table_t_ = 0.0;
};

// A = amplitude of the u^{-1/2} blow-up of phi as u -> 0.
cplx small_u_amplitude(const PhiContext& ctx);

// Psi_alpha(r,q;u) = sum_n ind(n) exp(-pi (n+q)^2 u) e(rn) with the exact
// membership weight ind(n) in {0, 1/2, 1}.
cplx psi_alpha(const PhiContext& ctx, double u);

// phi(u) = Psi_alpha(u) - gamma Psi(u), summed termwise over the defining
// window. Valid for every u > 0; the workhorse above the transform region.
EvalResult phi_direct(const PhiContext& ctx, double u);

// The same phi(u) for u <= 4 through the resonance expansion
//
//   phi(u) = u^{-1/2} sum_{0<|k|<=K} X(k) e(-q ds_k) sum_j e^{-pi(j+ds_k)^2/u} e(-qj)
//          + sum_m e^{-pi(m+q)^2 u} e(rm) (1/pi) [L((m+1)gamma) - L(m gamma)],
//
// ds_k the reduced offset of r - k gamma and L(x) = Im sum_{k>K} e(kx)/k, so
// the k-truncation enters only through the exactly summable sawtooth tails.
// With subtract_amplitude the resonant term is replaced by its deviation from
// the u -> 0 limit, returning phi(u) - A u^{-1/2} without cancellation.
EvalResult phi_transformed(const PhiContext& ctx, double u, std::int64_t K,
                           bool subtract_amplitude = false);

}  // namespace bz
