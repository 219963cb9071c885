#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bz/common.hpp"
#include "bz/dd.hpp"

namespace bz {

using boost::multiprecision::cpp_int;

// Where frac(-n gamma) falls relative to the pulse band (0, gamma):
// `in` -> weight 1, `boundary` (exactly 0 or gamma) -> weight 1/2, `out` -> 0.
enum class PulseClass { out, boundary, in };

// An irrational alpha > 1, either an exact quadratic surd (p + q sqrt(d))/c
// or a decimal truncation carrying an explicit +-1 ulp uncertainty interval.
// Quadratic surds support exact integer decisions (continued fractions,
// pulse classifications); decimal inputs make the same decisions through
// interval arithmetic and throw precision_error when their digits cannot
// certify an answer.
class IrrationalNumber {
 public:
  static IrrationalNumber quadratic(std::int64_t p, std::int64_t q,
                                    std::int64_t d, std::int64_t c);
  static IrrationalNumber decimal(const std::string& digits);
  // "golden" | "sqrt2" | "quad:p,q,d,c" | "dec:<digits>"
  static IrrationalNumber parse(const std::string& spec);

  bool is_quadratic() const;
  const std::string& describe() const;

  double alpha() const;
  double gamma() const;  // 1/alpha, in (0,1)
  dd alpha_dd() const;
  dd gamma_dd() const;
  // Half-width of the value interval (0 for quadratic surds).
  double uncertainty() const;

  // Partial quotients [a0; a1, ...] of alpha, `depth` of them. Decimal
  // inputs throw precision_error if the digits cannot certify that many.
  std::vector<std::int64_t> cf(int depth) const;
  // Largest depth the digits certify (quadratics: INT_MAX effectively).
  int cf_depth_limit() const;

  // Type estimate tau^ from convergent denominators; exactly 1.0 when the
  // expansion is detected periodic (every quadratic surd).
  double type_estimate(int depth) const;

  // Certified lower bound for min over 1 <= m <= M of ||m gamma||.
  double min_dist_bound(std::int64_t M) const;

  // Exact classification of frac(-n gamma) against the band (0, gamma).
  PulseClass pulse_class(std::int64_t n) const;

  // floor(alpha m) and floor(gamma m), exact. Double-double decides the
  // generic case; ambiguous cases fall back to integer arithmetic
  // (quadratics) or throw precision_error (decimals).
  std::int64_t floor_mul(std::int64_t m) const;
  std::int64_t floor_mul_gamma(std::int64_t m) const;

  ~IrrationalNumber();
  IrrationalNumber(const IrrationalNumber&);
  IrrationalNumber& operator=(const IrrationalNumber&);
  IrrationalNumber(IrrationalNumber&&) noexcept;
  IrrationalNumber& operator=(IrrationalNumber&&) noexcept;

 private:
  IrrationalNumber();
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct NearHit {
  std::int64_t k = 0;    // resonance index, k != 0
  std::int64_t ell = 0;  // nearest integer of r - k gamma
  double dist = 0.0;     // ||r - k gamma||, refined in double-double
  double ds = 0.0;       // signed offset r - k gamma - ell in (-1/2, 1/2]
};

struct DiscrepancyReport {
  std::int64_t m = 0;
  double d_star = 0.0;
};

struct LatticeHit {
  std::int64_t k = 0;
  std::int64_t ell = 0;
  double delta = 0.0;  // signed residual r - k gamma - ell
};

// Partial quotients -> convergents (p_k, q_k), exact.
std::vector<std::pair<cpp_int, cpp_int>> convergents(
    const std::vector<std::int64_t>& cf);

// tau^ from a raw partial-quotient list (no periodicity assumption).
double estimate_type_from_cf(const std::vector<std::int64_t>& cf);

// {gamma m + delta} for m = 1..M.
std::vector<double> kronecker_points(double gamma, double delta, std::int64_t M);

// D*(x_1..x_M) by the sorted one-sided formula.
double star_discrepancy(const std::vector<double>& points);

DiscrepancyReport star_discrepancy_report(const IrrationalNumber& a,
                                          double delta, std::int64_t M);

// All 0 < |k| <= K with ||r - k gamma|| <= T, sorted by distance
// (ties: smaller |k| first, then positive k). T in (0, 1/2].
std::vector<NearHit> near_hits(const IrrationalNumber& a, double r,
                               std::int64_t K, double T);

// (delta_K, kappa_K): the minimal distance min_{0<|k|<=K} ||r - k gamma||
// and its minimizer under the near_hits tie order.
std::pair<double, std::int64_t> delta_kappa(const IrrationalNumber& a, double r,
                                            std::int64_t K);

// Decompose r = k gamma + ell + delta with |delta| <= tol if possible.
// Throws precision_error when two distinct k qualify.
std::optional<LatticeHit> lattice_decompose(const IrrationalNumber& a, double r,
                                            std::int64_t K, double tol);

}  // namespace bz
