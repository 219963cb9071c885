#include "bz/diophantine.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <sstream>

#include "bz/kernels.hpp"

namespace bz {
namespace {

using bf50 = boost::multiprecision::cpp_bin_float_50;
using i128 = __int128;

i128 floor_div(i128 a, i128 b) {
  // b > 0
  i128 q = a / b, r = a % b;
  return (r != 0 && a < 0) ? q - 1 : q;
}

i128 isqrt(i128 n) {
  if (n <= 0) return 0;
  i128 g = static_cast<i128>(std::sqrt(static_cast<long double>(n)));
  if (g <= 0) g = 1;
  for (int i = 0; i < 3; ++i) g = (g + n / g) / 2;
  while (g > 0 && g * g > n) --g;
  while ((g + 1) * (g + 1) <= n) ++g;
  return g;
}

std::int64_t isqrt64(std::int64_t n) {
  return static_cast<std::int64_t>(isqrt(static_cast<i128>(n)));
}

cpp_int floor_div(const cpp_int& a, const cpp_int& b) {
  // b > 0; cpp_int division truncates toward zero
  cpp_int q = a / b;
  if (a < 0 && q * b != a) --q;
  return q;
}

// sign of X + Y sqrt(D), D > 0. Exact; returns 0 only on exact equality.
int surd_sign(const cpp_int& X, const cpp_int& Y, const cpp_int& D) {
  if (Y == 0) return X == 0 ? 0 : (X > 0 ? 1 : -1);
  if (X == 0) return Y > 0 ? 1 : -1;
  if (X > 0 && Y > 0) return 1;
  if (X < 0 && Y < 0) return -1;
  // the term with the larger square decides the sign
  cpp_int lhs = X * X, rhs = Y * Y * D;
  if (lhs > rhs) return X > 0 ? 1 : -1;
  if (lhs < rhs) return Y > 0 ? 1 : -1;
  return 0;
}

// floor((A + B sqrt(D))/C) with C > 0, D > 0 nonsquare (or B == 0), exact.
// Since B sqrt(D) lies strictly between consecutive integers s, s+1 (for
// B != 0), no integer can sit between (A + s)/C and (A + B sqrt(D))/C.
cpp_int surd_floor(const cpp_int& A, const cpp_int& B, const cpp_int& D,
                   const cpp_int& C) {
  if (B == 0) return floor_div(A, C);
  cpp_int s = boost::multiprecision::sqrt(cpp_int(B * B * D));
  if (B > 0) return floor_div(A + s, C);
  return floor_div(A - s - 1, C);
}

double ln_big(const cpp_int& x) {
  // x >= 1
  unsigned bits = boost::multiprecision::msb(x);
  if (bits <= 900) return std::log(x.convert_to<double>());
  unsigned shift = bits - 52;
  auto top = cpp_int(x >> shift).convert_to<std::uint64_t>();
  return std::log(static_cast<double>(top)) + shift * 0.6931471805599453;
}

dd rat_to_dd(const cpp_int& num, const cpp_int& den) {
  bf50 v = bf50(num) / bf50(den);
  double hi = v.convert_to<double>();
  double lo = bf50(v - hi).convert_to<double>();
  return dd_detail::quick_two_sum(hi, lo);
}

struct Rat {
  cpp_int n, d;  // d > 0
};

void rat_reduce(Rat* r) {
  cpp_int g = boost::multiprecision::gcd(boost::multiprecision::abs(r->n), r->d);
  if (g > 1) {
    r->n /= g;
    r->d /= g;
  }
}

int rat_cmp(const Rat& a, const Rat& b) {
  cpp_int l = a.n * b.d, r = b.n * a.d;
  return l < r ? -1 : (l == r ? 0 : 1);
}

constexpr std::int64_t quot_cap = std::int64_t{1} << 62;

}  // namespace

struct IrrationalNumber::Impl {
  bool quad = true;
  std::string desc;

  // quadratic: alpha = (p + q sqrt(d))/c, gamma = (pg + qg sqrt(d))/cg,
  // c > 0, cg > 0, gcd-reduced
  std::int64_t p = 0, q = 0, d = 0, c = 1;
  std::int64_t pg = 0, qg = 0, cg = 1;
  // PQa state for alpha: x_i = (P + sqrt(N))/C, initialized lazily
  mutable i128 pqa_N = 0;
  mutable i128 pqa_s = 0;  // floor(sqrt(N))

  // decimal: alpha in [(num-1)/den, (num+1)/den]
  cpp_int num, den;

  dd a_dd{}, g_dd{};
  double unc = 0.0, g_unc = 0.0;

  // progressive continued-fraction cache for alpha
  mutable std::vector<std::int64_t> cf_cache;
  mutable bool cf_limit_known = false;  // decimal: digits exhausted
  mutable i128 pqa_P = 0, pqa_C = 1;    // resume state (quadratic)
  mutable Rat res_lo{}, res_hi{};       // resume interval (decimal)
  mutable bool cf_started = false;

  void extend_cf(int target) const;
  std::int64_t floor_mul_impl(std::int64_t m, bool use_gamma) const;
};

void IrrationalNumber::Impl::extend_cf(int target) const {
  if (quad) {
    if (!cf_started) {
      // normalize to x = (P + sqrt(N))/C with C | N - P^2
      i128 P, C;
      if (q > 0) {
        P = p;
        C = c;
      } else {
        P = -static_cast<i128>(p);
        C = -static_cast<i128>(c);
      }
      i128 N = static_cast<i128>(q) * q * d;
      if ((N - P * P) % C != 0) {
        i128 t = C < 0 ? -C : C;
        P *= t;
        N *= t * t;
        C *= t;
      }
      pqa_N = N;
      pqa_s = isqrt(N);
      pqa_P = P;
      pqa_C = C;
      cf_started = true;
    }
    while (static_cast<int>(cf_cache.size()) < target) {
      i128 a = pqa_C > 0 ? floor_div(pqa_P + pqa_s, pqa_C)
                         : floor_div(-pqa_P - pqa_s - 1, -pqa_C);
      if (a > quot_cap)
        throw domain_error("partial quotient overflows 64 bits");
      cf_cache.push_back(static_cast<std::int64_t>(a));
      pqa_P = a * pqa_C - pqa_P;
      pqa_C = (pqa_N - pqa_P * pqa_P) / pqa_C;
    }
    return;
  }
  if (!cf_started) {
    res_lo = Rat{num - 1, den};
    res_hi = Rat{num + 1, den};
    cf_started = true;
  }
  while (!cf_limit_known && static_cast<int>(cf_cache.size()) < target) {
    if (static_cast<int>(cf_cache.size()) >= 100000) {
      cf_limit_known = true;
      break;
    }
    cpp_int al = floor_div(res_lo.n, res_lo.d);
    cpp_int ah = floor_div(res_hi.n, res_hi.d);
    if (al != ah) {
      cf_limit_known = true;
      break;
    }
    if (al > quot_cap) throw domain_error("partial quotient overflows 64 bits");
    cpp_int rl = res_lo.n - al * res_lo.d;  // lo - a >= 0
    cpp_int rh = res_hi.n - ah * res_hi.d;
    if (rl == 0 || rh == 0) {
      // an endpoint became an integer: 1/(x - a) is unbounded on the interval
      cf_cache.push_back(al.convert_to<std::int64_t>());
      cf_limit_known = true;
      break;
    }
    cf_cache.push_back(al.convert_to<std::int64_t>());
    Rat nlo{res_hi.d, rh}, nhi{res_lo.d, rl};  // invert swaps endpoints
    rat_reduce(&nlo);
    rat_reduce(&nhi);
    res_lo = nlo;
    res_hi = nhi;
  }
}

IrrationalNumber::IrrationalNumber() : impl_(new Impl) {}
IrrationalNumber::~IrrationalNumber() = default;
IrrationalNumber::IrrationalNumber(const IrrationalNumber& o)
    : impl_(new Impl(*o.impl_)) {}
IrrationalNumber& IrrationalNumber::operator=(const IrrationalNumber& o) {
  if (this != &o) impl_.reset(new Impl(*o.impl_));
  return *this;
}
IrrationalNumber::IrrationalNumber(IrrationalNumber&&) noexcept = default;
IrrationalNumber& IrrationalNumber::operator=(IrrationalNumber&&) noexcept =
    default;

IrrationalNumber IrrationalNumber::quadratic(std::int64_t p, std::int64_t q,
                                             std::int64_t d, std::int64_t c) {
  if (d < 2) throw domain_error("quadratic: need d >= 2");
  if (q == 0 || c == 0) throw domain_error("quadratic: need q != 0 and c != 0");
  {
    std::int64_t s = isqrt64(d);
    if (s * s == d) throw domain_error("quadratic: d must not be a perfect square");
  }
  constexpr std::int64_t lim_pq = 1000000000, lim_c = 1000000,
                         lim_d = 1000000000000000;
  if (std::llabs(p) > lim_pq || std::llabs(q) > lim_pq || d > lim_d ||
      std::llabs(c) > lim_c)
    throw domain_error("quadratic: coefficients out of supported range");
  if (static_cast<i128>(q) * q * d > (i128{1} << 62))
    throw domain_error("quadratic: q^2 d too large (must stay below 2^62)");

  if (c < 0) {
    p = -p;
    q = -q;
    c = -c;
  }
  std::int64_t g = std::gcd(std::gcd(std::llabs(p), std::llabs(q)), c);
  p /= g;
  q /= g;
  c /= g;

  if (surd_sign(cpp_int(p) - c, cpp_int(q), cpp_int(d)) <= 0)
    throw domain_error("alpha must exceed 1");

  IrrationalNumber r;
  Impl& im = *r.impl_;
  im.quad = true;
  im.p = p;
  im.q = q;
  im.d = d;
  im.c = c;

  // gamma = c (p - q sqrt(d)) / (p^2 - q^2 d)
  i128 G = static_cast<i128>(p) * p - static_cast<i128>(q) * q * d;
  i128 PG = static_cast<i128>(c) * p, QG = -static_cast<i128>(c) * q;
  if (G < 0) {
    G = -G;
    PG = -PG;
    QG = -QG;
  }
  auto gg = std::gcd(std::gcd(static_cast<std::int64_t>(PG < 0 ? -PG : PG),
                              static_cast<std::int64_t>(QG < 0 ? -QG : QG)),
                     static_cast<std::int64_t>(G));
  im.pg = static_cast<std::int64_t>(PG) / gg;
  im.qg = static_cast<std::int64_t>(QG) / gg;
  im.cg = static_cast<std::int64_t>(G) / gg;

  dd sq = dd_sqrt_int(d);
  im.a_dd = dd_div(dd_add(dd_mul(sq, static_cast<double>(q)), dd_from_int(p)),
                   dd_from_int(c));
  im.g_dd = dd_div(dd_from(1.0), im.a_dd);
  im.unc = 0.0;
  im.g_unc = 0.0;

  std::ostringstream os;
  os << "(" << p << " + " << q << "*sqrt(" << d << "))/" << c;
  im.desc = os.str();
  return r;
}

IrrationalNumber IrrationalNumber::decimal(const std::string& digits) {
  bool dot = false;
  int fracd = 0;
  if (digits.empty()) throw domain_error("dec: empty digit string");
  for (char ch : digits) {
    if (ch == '.') {
      if (dot) throw domain_error("dec: malformed number");
      dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      if (dot) ++fracd;
    } else {
      throw domain_error("dec: malformed number");
    }
  }
  if (digits.size() > 20000) throw domain_error("dec: too many digits");
  std::string plain;
  plain.reserve(digits.size());
  for (char ch : digits)
    if (ch != '.') plain.push_back(ch);
  if (plain.empty()) throw domain_error("dec: malformed number");
  // cpp_int would read a leading 0 as an octal prefix
  std::size_t nz = plain.find_first_not_of('0');
  plain = (nz == std::string::npos) ? "0" : plain.substr(nz);

  IrrationalNumber r;
  Impl& im = *r.impl_;
  im.quad = false;
  im.num = cpp_int(plain);
  im.den = boost::multiprecision::pow(cpp_int(10), fracd);
  if (im.num - 1 <= im.den)
    throw domain_error("alpha must exceed 1 (certified by the given digits)");

  im.a_dd = rat_to_dd(im.num, im.den);
  im.g_dd = rat_to_dd(im.den, im.num);
  bf50 u = bf50(1) / bf50(im.den);
  im.unc = u.convert_to<double>() * (1.0 + 1e-14);
  bf50 glo = bf50(im.den) / bf50(im.num + 1);
  bf50 ghi = bf50(im.den) / bf50(im.num - 1);
  im.g_unc = bf50((ghi - glo) / 2).convert_to<double>() * (1.0 + 1e-14);

  im.desc = "decimal " + digits + " (+- 1e-" + std::to_string(fracd) + ")";
  return r;
}

IrrationalNumber IrrationalNumber::parse(const std::string& spec) {
  if (spec == "golden") return quadratic(1, 1, 5, 2);
  if (spec == "sqrt2") return quadratic(0, 1, 2, 1);
  if (spec.rfind("quad:", 0) == 0) {
    std::int64_t v[4];
    char comma;
    std::istringstream is(spec.substr(5));
    for (int i = 0; i < 4; ++i) {
      if (i && !(is >> comma && comma == ','))
        throw domain_error("quad: expects p,q,d,c");
      if (!(is >> v[i])) throw domain_error("quad: expects p,q,d,c");
    }
    std::string rest;
    if (is >> rest) throw domain_error("quad: trailing input");
    return quadratic(v[0], v[1], v[2], v[3]);
  }
  if (spec.rfind("dec:", 0) == 0) return decimal(spec.substr(4));
  throw domain_error("unknown alpha spec: " + spec +
                     " (want golden|sqrt2|quad:p,q,d,c|dec:<digits>)");
}

bool IrrationalNumber::is_quadratic() const { return impl_->quad; }
const std::string& IrrationalNumber::describe() const { return impl_->desc; }
double IrrationalNumber::alpha() const { return to_double(impl_->a_dd); }
double IrrationalNumber::gamma() const { return to_double(impl_->g_dd); }
dd IrrationalNumber::alpha_dd() const { return impl_->a_dd; }
dd IrrationalNumber::gamma_dd() const { return impl_->g_dd; }
double IrrationalNumber::uncertainty() const { return impl_->unc; }

std::vector<std::int64_t> IrrationalNumber::cf(int depth) const {
  if (depth < 1) throw domain_error("cf: depth must be >= 1");
  impl_->extend_cf(depth);
  if (static_cast<int>(impl_->cf_cache.size()) < depth)
    throw precision_error("decimal digits certify only " +
                          std::to_string(impl_->cf_cache.size()) +
                          " partial quotients");
  return {impl_->cf_cache.begin(), impl_->cf_cache.begin() + depth};
}

int IrrationalNumber::cf_depth_limit() const {
  if (impl_->quad) return std::numeric_limits<int>::max();
  impl_->extend_cf(100000);
  return static_cast<int>(impl_->cf_cache.size());
}

double IrrationalNumber::type_estimate(int depth) const {
  if (depth < 1) throw domain_error("type_estimate: depth must be >= 1");
  // every quadratic surd has an eventually periodic expansion
  if (impl_->quad) return 1.0;
  return estimate_type_from_cf(cf(depth));
}

double IrrationalNumber::min_dist_bound(std::int64_t M) const {
  if (M < 1) throw domain_error("min_dist_bound: M must be >= 1");
  // Denominators of gamma = [0; a0, a1, ...]: Q_0 = 1, Q_1 = a0,
  // Q_{j+1} = a_j Q_j + Q_{j-1}. For Q_j <= M < Q_{j+1} every 1 <= m <= M has
  // ||m gamma|| >= ||Q_j gamma|| > 1/(Q_j + Q_{j+1}).
  impl_->extend_cf(2);
  if (impl_->cf_cache.empty())
    throw precision_error("digits certify no continued-fraction information");
  cpp_int Qp = 1, Q = impl_->cf_cache[0];
  int idx = 1;
  while (Q <= M) {
    impl_->extend_cf(idx + 1);
    if (static_cast<int>(impl_->cf_cache.size()) <= idx)
      throw precision_error(
          "decimal digits too short to certify a min-distance bound at M=" +
          std::to_string(M));
    cpp_int Qn = impl_->cf_cache[idx] * Q + Qp;
    Qp = Q;
    Q = Qn;
    ++idx;
  }
  double den = cpp_int(Qp + Q).convert_to<double>();
  if (!std::isfinite(den)) return 0.0;
  return 1.0 / (den * (1.0 + 1e-14));
}

PulseClass IrrationalNumber::pulse_class(std::int64_t n) const {
  // frac(0) = 0 and frac(gamma) = gamma are band edges for every alpha
  if (n == 0 || n == -1) return PulseClass::boundary;
  const Impl& im = *impl_;
  if (im.quad) {
    // y = -n gamma = (A + B sqrt(d))/C, C > 0
    cpp_int A = -cpp_int(n) * im.pg, B = -cpp_int(n) * im.qg, C = im.cg,
            D = im.d;
    cpp_int fl = surd_floor(A, B, D, C);
    cpp_int X0 = A - fl * C;
    if (X0 == 0 && B == 0) return PulseClass::boundary;  // unreachable for n != 0
    int s = surd_sign(X0 - im.pg, B - im.qg, D);
    if (s == 0) return PulseClass::boundary;  // unreachable for n != -1
    return s < 0 ? PulseClass::in : PulseClass::out;
  }
  // interval arithmetic on gamma in [den/(num+1), den/(num-1)]
  cpp_int yn = -cpp_int(n) * im.den;
  Rat ylo = n > 0 ? Rat{yn, im.num - 1} : Rat{yn, im.num + 1};
  Rat yhi = n > 0 ? Rat{yn, im.num + 1} : Rat{yn, im.num - 1};
  cpp_int fl = floor_div(ylo.n, ylo.d);
  if (fl != floor_div(yhi.n, yhi.d))
    throw precision_error("digits cannot place frac(-n gamma) for n=" +
                          std::to_string(n));
  Rat flo{ylo.n - fl * ylo.d, ylo.d}, fhi{yhi.n - fl * yhi.d, yhi.d};
  Rat glo{im.den, im.num + 1}, ghi{im.den, im.num - 1};
  if (flo.n > 0 && rat_cmp(fhi, glo) < 0) return PulseClass::in;
  if (rat_cmp(flo, ghi) > 0) return PulseClass::out;
  throw precision_error("digits cannot classify frac(-n gamma) for n=" +
                        std::to_string(n));
}

namespace {

std::int64_t checked_i64(const cpp_int& v, const char* what) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min())
    throw domain_error(std::string(what) + " overflows 64 bits");
  return v.convert_to<std::int64_t>();
}

}  // namespace

std::int64_t IrrationalNumber::floor_mul(std::int64_t m) const {
  return impl_->floor_mul_impl(m, false);
}

std::int64_t IrrationalNumber::floor_mul_gamma(std::int64_t m) const {
  return impl_->floor_mul_impl(m, true);
}

std::int64_t IrrationalNumber::Impl::floor_mul_impl(std::int64_t m,
                                                    bool use_gamma) const {
  if (m == 0) return 0;
  dd v = use_gamma ? g_dd : a_dd;
  dd est = dd_mul(v, static_cast<double>(m));
  double mag = std::fabs(to_double(est));
  if (mag > 9.0e18) throw domain_error("floor_mul overflows 64 bits");
  double f = to_double(dd_dist_to_int(est));
  double noise = mag * 1e-30 + (use_gamma ? g_unc : unc) * std::fabs(
                     static_cast<double>(m)) + 1e-300;
  if (f > 16.0 * noise)
    return static_cast<std::int64_t>(std::llround(to_double(dd_floor(est))));
  if (quad) {
    cpp_int P = cpp_int(use_gamma ? pg : p) * m;
    cpp_int Q = cpp_int(use_gamma ? qg : q) * m;
    return checked_i64(surd_floor(P, Q, cpp_int(d), cpp_int(use_gamma ? cg : c)),
                       "floor_mul");
  }
  // decimal: decide from the exact digit interval if it is tight enough
  Rat lo, hi;
  if (use_gamma) {
    lo = Rat{den, num + 1};
    hi = Rat{den, num - 1};
  } else {
    lo = Rat{num - 1, den};
    hi = Rat{num + 1, den};
  }
  if (m < 0) std::swap(lo, hi);
  cpp_int fl_lo = floor_div(lo.n * m, lo.d), fl_hi = floor_div(hi.n * m, hi.d);
  if (fl_lo == fl_hi) return checked_i64(fl_lo, "floor_mul");
  throw precision_error("digits cannot determine floor(m * " +
                        std::string(use_gamma ? "gamma" : "alpha") +
                        ") at m=" + std::to_string(m));
}

std::vector<std::pair<cpp_int, cpp_int>> convergents(
    const std::vector<std::int64_t>& cf) {
  if (cf.empty()) throw domain_error("convergents: empty expansion");
  if (cf[0] < 0) throw domain_error("convergents: a0 must be >= 0");
  for (std::size_t i = 1; i < cf.size(); ++i)
    if (cf[i] < 1) throw domain_error("convergents: quotients must be >= 1");
  std::vector<std::pair<cpp_int, cpp_int>> out;
  out.reserve(cf.size());
  cpp_int pm1 = 1, pm2 = 0, qm1 = 0, qm2 = 1;
  for (std::int64_t a : cf) {
    cpp_int pk = a * pm1 + pm2, qk = a * qm1 + qm2;
    out.emplace_back(pk, qk);
    pm2 = pm1;
    pm1 = pk;
    qm2 = qm1;
    qm1 = qk;
  }
  return out;
}

double estimate_type_from_cf(const std::vector<std::int64_t>& cf) {
  auto cv = convergents(cf);
  double t = 1.0;
  // q_2 >= 2, so ln q_k > 0 on the whole scanned range
  for (std::size_t k = 2; k + 1 < cv.size(); ++k)
    t = std::max(t, ln_big(cv[k + 1].second) / ln_big(cv[k].second));
  return t;
}

std::vector<double> kronecker_points(double gamma, double delta,
                                     std::int64_t M) {
  if (M < 1) throw domain_error("kronecker_points: M must be >= 1");
  std::vector<double> pts(static_cast<std::size_t>(M));
  kernels::active_ops().kronecker_fill(gamma, delta, 1, M, pts.data());
  return pts;
}

double star_discrepancy(const std::vector<double>& points) {
  if (points.empty()) throw domain_error("star_discrepancy: no points");
  std::vector<double> x = points;
  std::sort(x.begin(), x.end());
  if (x.front() < 0.0 || x.back() >= 1.0)
    throw domain_error("star_discrepancy: points must lie in [0,1)");
  double M = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    d = std::max(d, (i + 1) / M - x[i]);
    d = std::max(d, x[i] - i / M);
  }
  return d;
}

DiscrepancyReport star_discrepancy_report(const IrrationalNumber& a,
                                          double delta, std::int64_t M) {
  return {M, star_discrepancy(kronecker_points(a.gamma(), delta, M))};
}

namespace {

struct RefinedHit {
  NearHit h;
  dd dist_dd;
};

// dd-refined hit for one k; gamma and r enter in double-double.
RefinedHit refine_hit(dd g, double r, std::int64_t k) {
  dd t = dd_sub(dd_from(r), dd_mul(g, static_cast<double>(k)));
  dd ds = dd_signed_offset(t);
  RefinedHit rh;
  rh.h.k = k;
  rh.h.ds = to_double(ds);
  rh.h.dist = std::fabs(rh.h.ds);
  rh.h.ell = static_cast<std::int64_t>(std::llround(to_double(dd_sub(t, ds))));
  rh.dist_dd = dd_abs(ds);
  return rh;
}

bool hit_order(const RefinedHit& a, const RefinedHit& b) {
  int c = dd_cmp(a.dist_dd, b.dist_dd);
  if (c != 0) return c < 0;
  std::int64_t ka = std::llabs(a.h.k), kb = std::llabs(b.h.k);
  if (ka != kb) return ka < kb;
  return a.h.k > b.h.k;  // positive k first
}

std::vector<RefinedHit> collect_hits(const IrrationalNumber& a, double r,
                                     std::int64_t K, double T) {
  if (K < 1) throw domain_error("near_hits: K must be >= 1");
  if (!(T > 0.0) || T > 0.5) throw domain_error("near_hits: need 0 < T <= 1/2");
  double ku = static_cast<double>(K) * a.uncertainty();
  if (ku > 1e-9)
    throw precision_error(
        "digits cannot resolve near-hit distances at this K (need roughly "
        "log10(K) + 9 decimal places)");
  dd g = a.gamma_dd();
  double gd = to_double(g);
  // fl(r - k g) carries O(K eps) rounding; widen the scan, refine in dd
  double slack = 4.0 * static_cast<double>(K) * 2.3e-16 + ku + 1e-14;
  double thresh = std::min(0.5, T + slack);
  const auto& ops = kernels::active_ops();
  std::vector<std::int64_t> kpos, kneg;
  ops.fracdist_collect(gd, r, 1, K, thresh, &kpos);
  ops.fracdist_collect(-gd, r, 1, K, thresh, &kneg);
  std::vector<RefinedHit> hits;
  hits.reserve(kpos.size() + kneg.size());
  for (std::int64_t k : kpos) {
    RefinedHit rh = refine_hit(g, r, k);
    if (rh.h.dist <= T) hits.push_back(rh);
  }
  for (std::int64_t k : kneg) {
    RefinedHit rh = refine_hit(g, r, -k);
    if (rh.h.dist <= T) hits.push_back(rh);
  }
  std::sort(hits.begin(), hits.end(), hit_order);
  return hits;
}

}  // namespace

std::vector<NearHit> near_hits(const IrrationalNumber& a, double r,
                               std::int64_t K, double T) {
  auto hits = collect_hits(a, r, K, T);
  std::vector<NearHit> out;
  out.reserve(hits.size());
  for (const auto& rh : hits) out.push_back(rh.h);
  return out;
}

std::pair<double, std::int64_t> delta_kappa(const IrrationalNumber& a, double r,
                                            std::int64_t K) {
  if (K < 1) throw domain_error("delta_kappa: K must be >= 1");
  double ku = static_cast<double>(K) * a.uncertainty();
  if (ku > 1e-9)
    throw precision_error("digits cannot resolve distances at this K");
  dd g = a.gamma_dd();
  double gd = to_double(g);
  const auto& ops = kernels::active_ops();
  kernels::MinHit mp = ops.fracdist_min(gd, r, 1, K);
  kernels::MinHit mn = ops.fracdist_min(-gd, r, 1, K);
  double flmin = std::min(mp.dist, mn.dist);
  double slack = 8.0 * static_cast<double>(K) * 2.3e-16 + 2.0 * ku + 1e-14;
  double thresh = std::min(0.5, flmin + slack);
  std::vector<std::int64_t> kpos, kneg;
  ops.fracdist_collect(gd, r, 1, K, thresh, &kpos);
  ops.fracdist_collect(-gd, r, 1, K, thresh, &kneg);
  std::vector<RefinedHit> cand;
  for (std::int64_t k : kpos) cand.push_back(refine_hit(g, r, k));
  for (std::int64_t k : kneg) cand.push_back(refine_hit(g, r, -k));
  auto best = std::min_element(cand.begin(), cand.end(), hit_order);
  return {best->h.dist, best->h.k};
}

std::optional<LatticeHit> lattice_decompose(const IrrationalNumber& a, double r,
                                            std::int64_t K, double tol) {
  if (!(tol > 0.0) || tol >= 0.1)
    throw domain_error("lattice_decompose: need 0 < tol < 0.1");
  auto hits = collect_hits(a, r, K, tol);
  if (hits.empty()) return std::nullopt;
  if (hits.size() > 1)
    throw precision_error("ambiguous lattice decomposition: k=" +
                          std::to_string(hits[0].h.k) + " and k=" +
                          std::to_string(hits[1].h.k) + " both land within tol");
  return LatticeHit{hits[0].h.k, hits[0].h.ell, hits[0].h.ds};
}

}  // namespace bz
