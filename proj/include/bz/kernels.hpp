#pragma once

#include <cstdint>
#include <vector>

#include "bz/common.hpp"

namespace bz::kernels {

// Hot inner loops, provided as a scalar reference implementation plus SIMD
// variants selected at runtime. The scalar versions are the correctness
// baseline; tests assert the SIMD versions agree (bit-exactly for the pure
// arithmetic scans, to rounding level for the transcendental sums).
//
// Shared conventions:
//  * <t> is the nearest integer with the floor convention at half-integers,
//    realized as round-ties-to-even followed by a -1/2 -> +1/2 repair, so
//    signed offsets t - <t> lie in (-1/2, 1/2].
//  * Long phase walks (k*g mod 2, n*r mod 1) are re-seeded from double-double
//    arithmetic every `panel` steps so that phase arguments stay accurate to
//    ~1e-13 absolute over ranges up to ~4e6. Both implementations use the
//    identical panel structure.

inline constexpr std::int64_t panel = 1024;

struct MinHit {
  double dist = 0.0;
  std::int64_t k = 0;
};

// Arguments for resonance_strip_sum. The value computed is
//
//   sum over k in [k0, k0+count), both signs sk = +-k, of
//     X(sk) * cis(-2 pi q ds) * E0 * S(ds),
//
// where t = r - sk*g, ds = t - <t>, E0 = exp(-pi ds^2/u), and
//
//   S(ds) = qph[np] + sum_{j=1..np} D(+j) qph[np+j] + D(-j) qph[np-j],
//   D(j)  = exp(-pi (j^2 + 2 j ds)/u),
//   X(k)  = cis(-pi k g) sin(pi k g) / (pi k).
//
// D(j) is built from the overflow-free recurrence D(j+1) = D(j) * M(j),
// M(j) = F^j M(0), F = exp(-2 pi/u), M(0) = exp(-pi (1 +- 2 ds)/u), all
// factors <= 1. qph[np+j] = cis(-2 pi q j) for j in [-np, np] is supplied by
// the caller.
struct StripArgs {
  double g = 0.0, r = 0.0, q = 0.0, u = 0.0;
  std::int64_t k0 = 1;
  std::int64_t count = 0;
  int np = 0;
  const cplx* qph = nullptr;  // size 2*np+1
};

struct Ops {
  const char* name;

  // argmin over k in [k0, k0+count) of ||r - k g||; earliest k wins ties.
  MinHit (*fracdist_min)(double g, double r, std::int64_t k0, std::int64_t count);

  // Append every k in [k0, k0+count) with ||r - k g|| <= thresh, in order.
  void (*fracdist_collect)(double g, double r, std::int64_t k0, std::int64_t count,
                           double thresh, std::vector<std::int64_t>* out);

  // out[i] = {g (m0+i) + d} for i in [0, count).
  void (*kronecker_fill)(double g, double d, std::int64_t m0, std::int64_t count,
                         double* out);

  // sum_{n=n0}^{n1-1} exp(-pi (n+v)^2 u) cis(2 pi w n) (wt ? wt[n-n0] : 1).
  // Plain-double phases: callers keep |w n| small (theta-scale sums) or pass
  // weights that are themselves O(tail)-small.
  cplx (*gauss_phase_sum)(double v, double w, double u, std::int64_t n0,
                          std::int64_t n1, const double* wt);

  // sum_{n=n0}^{n1-1} pw(n) exp(-pi (n+q)^2 u) cis(2 pi r n), where
  //   pw(n) = [frac(-n g) in (0, g)] - (subtract_mean ? g : 0).
  // Preconditions: n = -1, 0 (the exact boundary indices) are excluded from
  // [n0, n1), and the caller has verified min ||m g|| over the scanned range
  // exceeds the phase-walk noise by a safe margin, so strict comparisons
  // decide every pulse value.
  cplx (*beatty_gauss_sum)(double g, double r, double q, double u,
                           int subtract_mean, std::int64_t n0, std::int64_t n1);

  cplx (*resonance_strip_sum)(const StripArgs& a);

  // Fill out[i] = Im sum_{k > K} e(k x[i]) / k by the 3-term asymptotic
  // expansion in 1/((K+j)(1-z)), z = e(x[i]). phi[i] supplies the reduced
  // phase 2 pi frac((K+1) x[i]) (radians in (-pi, pi]), computed by the
  // caller in double-double. Slots with skip[i] != 0 are left untouched
  // (the caller fills them by the exact small-argument path).
  void (*sawtooth_imL_fill)(const double* x, const double* phi,
                            const unsigned char* skip, std::int64_t n,
                            double kp1, double* out);
};

const Ops& scalar_ops();
const Ops& active_ops();
const char* active_isa();

}  // namespace bz::kernels
