// bzeta: command-line surface over the Beatty zeta library.
//
// Subcommands cover the diophantine layer (cf, type, discrepancy, nearhits),
// the Beatty/pulse layer (beatty, indicator, pulse, fourier), Gaussian sums
// (theta, psi, phi), classical zetas (riemann, hurwitz, lerch), the
// symmetrized Beatty zeta (zetasharp, zdirect, zsharp, residue, scan), and
// the acceptance runner (verify).
//
// Exit codes: 0 success, 1 usage or configuration error, 2 tolerance unmet
// (failed verify, exhausted term budget), 3 domain error, 4 precision
// ambiguity (digits of a decimal alpha cannot certify a decision).
//
// Output is deterministic: same argv + config produce byte-identical stdout,
// independent of --threads.
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bz/acceptance.hpp"
#include "bz/beatty.hpp"
#include "bz/common.hpp"
#include "bz/continuation.hpp"
#include "bz/diophantine.hpp"
#include "bz/special.hpp"
#include "bz/theta.hpp"

using nlohmann::ordered_json;

namespace {

std::string fmt_g(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt_c(bz::cplx z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

ordered_json jc(bz::cplx z) {
  return ordered_json{{"re", z.real()}, {"im", z.imag()}};
}

void emit(const ordered_json& j) {
  std::fputs(j.dump(2).c_str(), stdout);
  std::fputc('\n', stdout);
}

void line(const char* key, const std::string& val) {
  std::printf("%s = %s\n", key, val.c_str());
}

// strict full-string decimal parse
double parse_dec(const std::string& t) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("'" + t + "' is not a number");
  }
  if (pos != t.size())
    throw std::invalid_argument("trailing characters in number '" + t + "'");
  if (!std::isfinite(v))
    throw std::invalid_argument("number '" + t + "' is not finite");
  return v;
}

// "re" or "re,im"
bz::cplx parse_s(const std::string& t) {
  std::size_t comma = t.find(',');
  if (comma == std::string::npos) return {parse_dec(t), 0.0};
  return {parse_dec(t.substr(0, comma)), parse_dec(t.substr(comma + 1))};
}

// error model for the raw theta emissions (direct truncation + rounding);
// the same weight the quadrature assigns to its integrand nodes
double theta_err(double u) { return 1e-14 * (1.0 + 1.0 / std::sqrt(u)); }

struct EvalFmt {
  bool json;
  void put(const bz::EvalResult& r) const {
    if (json) {
      emit(ordered_json{{"value", jc(r.value)},
                        {"err_est", r.err_est},
                        {"method", bz::method_name(r.method)}});
    } else {
      line("value", fmt_c(r.value));
      line("err_est", fmt_g(r.err_est));
      line("method", bz::method_name(r.method));
    }
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Beatty zeta evaluator: twisted zeta sums over the Beatty set of an "
      "irrational alpha > 1,\ntheir symmetrized pair, and the theta-Mellin "
      "continuation across the pole at s = 1."};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "flat key=value configuration file; command-line flags win");

  std::string alpha_spec = "golden", r_spec = "0", q_spec = "0.5",
              s_spec = "2";
  double u = 1.0, tol = 1e-10;
  std::string repr = "direct", output = "text";
  bool as_json_flag = false;
  int threads = 1;
  bz::ContinuationConfig cc;

  app.add_option("--alpha", alpha_spec,
                 "alpha spec: golden | sqrt2 | quad:p,q,d,c | dec:<digits>")
      ->capture_default_str();
  app.add_option("--r", r_spec, "twist r (decimal)")->capture_default_str();
  app.add_option("--q", q_spec, "shift q (decimal)")->capture_default_str();
  app.add_option("--s", s_spec, "evaluation point, re[,im]")
      ->capture_default_str();
  app.add_option("--u", u, "argument u > 0 for theta/psi/phi")
      ->capture_default_str();
  app.add_option("--tol", tol, "target tolerance for series evaluators")
      ->capture_default_str();
  app.add_option("--repr", repr, "theta/psi/phi representation")
      ->check(CLI::IsMember({"direct", "transformed", "both"}))
      ->capture_default_str();
  app.add_flag("--json", as_json_flag, "emit JSON (same as --output json)");
  app.add_option("--output", output, "text | json | csv (csv: scan only)")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--threads", threads,
                 "worker count; schedules are deterministic, output does not "
                 "depend on it")
      ->envname("BZ_THREADS")
      ->check(CLI::Range(1, 1024))
      ->capture_default_str();
  app.add_option("--u-min", cc.u_min, "lower quadrature cutoff")
      ->capture_default_str();
  app.add_option("--u-switch", cc.u_switch,
                 "below this u phi uses the transformed representation")
      ->capture_default_str();
  app.add_option("--k-max", cc.k_max, "resonance scan depth")
      ->capture_default_str();
  app.add_option("--quad-tol", cc.quad_tol, "adaptive quadrature tolerance")
      ->capture_default_str();
  app.add_option("--sigma-min", cc.sigma_min,
                 "smallest supported Re s for the continued window")
      ->capture_default_str();
  app.add_option("--eps-exponent", cc.eps_exponent,
                 "slack epsilon in the tau+eps truncation exponent")
      ->capture_default_str();

  int cf_depth = 32, type_depth = 24;
  std::int64_t m0 = 1, count = 20, ind_n = 0, four_k = 1, disc_m = 1000,
               nh_kmax = 100000, nmax = 20000000;
  double pulse_t = 0.0, disc_delta = 0.0, nh_threshold = 1e-3, th_v = 0.0,
         th_w = 0.0;
  std::string zmode = "auto", res_method = "contour", suite = "quick";
  bool subtract_pole = false;
  bz::GridSpec grid;

  auto* c_cf = app.add_subcommand("cf", "continued fraction of alpha");
  c_cf->add_option("--depth", cf_depth, "partial quotients to print")
      ->check(CLI::Range(1, 100000))
      ->capture_default_str();
  auto* c_type = app.add_subcommand(
      "type", "approximation-type estimate from convergent denominators");
  c_type->add_option("--depth", type_depth, "convergent depth")
      ->check(CLI::Range(4, 100000))
      ->capture_default_str();
  auto* c_beatty = app.add_subcommand("beatty", "terms floor(alpha m)");
  c_beatty->add_option("--m0", m0, "first index m")->capture_default_str();
  c_beatty->add_option("--count", count, "number of terms")
      ->check(CLI::Range(std::int64_t{1}, std::int64_t{10000000}))
      ->capture_default_str();
  auto* c_ind = app.add_subcommand(
      "indicator", "membership weight of n in the Beatty set (0, 1/2, 1)");
  c_ind->add_option("--n", ind_n, "integer argument")->capture_default_str();
  auto* c_pulse =
      app.add_subcommand("pulse", "pulse wave X_gamma(t) for gamma = 1/alpha");
  c_pulse->add_option("--t", pulse_t, "evaluation point")->required();
  auto* c_four =
      app.add_subcommand("fourier", "pulse-wave Fourier coefficient at k");
  c_four->add_option("--k", four_k, "frequency")->capture_default_str();
  auto* c_disc = app.add_subcommand(
      "discrepancy", "star discrepancy of {m gamma + delta}, m = 1..M");
  c_disc->add_option("--m", disc_m, "number of points")
      ->check(CLI::Range(std::int64_t{1}, std::int64_t{100000000}))
      ->capture_default_str();
  c_disc->add_option("--delta", disc_delta, "offset")->capture_default_str();
  auto* c_nh = app.add_subcommand(
      "nearhits", "frequencies k with ||r - k gamma|| below a threshold");
  c_nh->add_option("--kmax", nh_kmax, "scan depth |k| <= kmax")
      ->check(CLI::Range(std::int64_t{1}, std::int64_t{10000000}))
      ->capture_default_str();
  c_nh->add_option("--threshold", nh_threshold, "distance cutoff in (0, 1/2]")
      ->capture_default_str();
  auto* c_theta = app.add_subcommand("theta", "two-parameter Gaussian sum");
  c_theta->add_option("--v", th_v, "quadratic shift")->capture_default_str();
  c_theta->add_option("--w", th_w, "twist")->capture_default_str();
  auto* c_psi =
      app.add_subcommand("psi", "Gaussian sum over n + q twisted by e(rn)");
  auto* c_phi = app.add_subcommand(
      "phi", "Beatty-weighted Gaussian sum minus its density part");
  auto* c_rz = app.add_subcommand("riemann", "Riemann zeta at s");
  auto* c_hz = app.add_subcommand("hurwitz", "Hurwitz zeta at (s, q)");
  auto* c_lerch =
      app.add_subcommand("lerch", "twisted zeta sum e(rn)(n+q)^-s, Re s > 1");
  auto* c_zs = app.add_subcommand(
      "zetasharp", "symmetrized twisted zeta pair, continued in s");
  c_zs->add_flag("--subtract-pole", subtract_pole,
                 "report the pole-free part (integer r only has a pole)");
  auto* c_zd = app.add_subcommand(
      "zdirect", "Beatty zeta by direct summation, Re s > 1");
  c_zd->add_option("--nmax", nmax, "term budget")
      ->check(CLI::Range(std::int64_t{64}, std::int64_t{1000000000}))
      ->capture_default_str();
  auto* c_zsh = app.add_subcommand(
      "zsharp", "symmetrized Beatty zeta, direct or continued");
  c_zsh->add_option("--mode", zmode, "evaluation window")
      ->check(CLI::IsMember({"auto", "direct", "continued"}))
      ->capture_default_str();
  c_zsh->add_flag("--subtract-pole", subtract_pole,
                  "report the pole-free part");
  auto* c_res =
      app.add_subcommand("residue", "residue at s = 1 against predictions");
  c_res->add_option("--method", res_method, "contour | limit")
      ->check(CLI::IsMember({"contour", "limit"}))
      ->capture_default_str();
  auto* c_scan =
      app.add_subcommand("scan", "zsharp over an s grid, CSV to stdout");
  c_scan->add_option("--re-lo", grid.re_lo, "")->capture_default_str();
  c_scan->add_option("--re-hi", grid.re_hi, "")->capture_default_str();
  c_scan->add_option("--n-re", grid.n_re, "")
      ->check(CLI::Range(1, 100000))
      ->capture_default_str();
  c_scan->add_option("--im-lo", grid.im_lo, "")->capture_default_str();
  c_scan->add_option("--im-hi", grid.im_hi, "")->capture_default_str();
  c_scan->add_option("--n-im", grid.n_im, "")
      ->check(CLI::Range(1, 100000))
      ->capture_default_str();
  auto* c_verify =
      app.add_subcommand("verify", "run the acceptance criteria");
  c_verify->add_option("--suite", suite, "quick | full")
      ->check(CLI::IsMember({"quick", "full"}))
      ->capture_default_str();

  for (auto* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (as_json_flag) output = "json";
  bool as_json = output == "json";

  // config values shared by every subcommand; malformed ones are usage errors
  std::optional<bz::IrrationalNumber> alpha;
  double rv = 0.0, qv = 0.5;
  bz::cplx s{2.0, 0.0};
  try {
    alpha = bz::IrrationalNumber::parse(alpha_spec);
    rv = parse_dec(r_spec);
    qv = parse_dec(q_spec);
    s = parse_s(s_spec);
    if (!(u > 0.0)) throw std::invalid_argument("u must be positive");
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    if (!(cc.u_min > 0.0 && cc.u_switch > 0.0 && cc.quad_tol > 0.0))
      throw std::invalid_argument("quadrature cutoffs must be positive");
    if (cc.k_max < 2) throw std::invalid_argument("k-max must be at least 2");
    if (!(cc.sigma_min > 0.0 && cc.sigma_min <= 1.0))
      throw std::invalid_argument("sigma-min must lie in (0, 1]");
    if (output == "csv" && !c_scan->parsed())
      throw std::invalid_argument("csv output is only defined for scan");
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "bzeta: %s\n", ex.what());
    return 1;
  }
  const bz::IrrationalNumber& A = *alpha;
  EvalFmt fmt{as_json};

  try {
    if (c_cf->parsed()) {
      std::vector<std::int64_t> terms = A.cf(cf_depth);
      if (as_json) {
        emit(ordered_json{{"alpha", A.describe()},
                          {"depth", cf_depth},
                          {"terms", terms},
                          {"err_est", 0.0}});
      } else {
        std::string body = "[" + std::to_string(terms[0]) + ";";
        for (std::size_t i = 1; i < terms.size(); ++i)
          body += (i == 1 ? " " : ", ") + std::to_string(terms[i]);
        line("cf", body + "]");
      }
      return 0;
    }
    if (c_type->parsed()) {
      double t = A.type_estimate(type_depth);
      // depth-convergence spread, floored by the universal bound tau >= 1;
      // exact for quadratics (periodic expansion)
      double err = 0.0;
      if (!A.is_quadratic())
        err = std::max(std::fabs(t - A.type_estimate(type_depth / 2)),
                       t - 1.0);
      if (as_json) {
        emit(ordered_json{{"alpha", A.describe()},
                          {"depth", type_depth},
                          {"type_estimate", t},
                          {"err_est", err}});
      } else {
        line("type_estimate", fmt_g(t));
        line("depth", std::to_string(type_depth));
        line("err_est", fmt_g(err));
      }
      return 0;
    }
    if (c_beatty->parsed()) {
      std::vector<std::int64_t> terms = bz::beatty_terms(A, m0, count);
      if (as_json) {
        emit(ordered_json{{"m0", m0},
                          {"count", count},
                          {"terms", terms},
                          {"err_est", 0.0}});
      } else {
        std::string body;
        for (std::size_t i = 0; i < terms.size(); ++i)
          body += (i ? " " : "") + std::to_string(terms[i]);
        line("terms", body);
      }
      return 0;
    }
    if (c_ind->parsed()) {
      double v = bz::indicator_value(A, ind_n);
      if (as_json)
        emit(ordered_json{{"n", ind_n}, {"value", v}, {"err_est", 0.0}});
      else
        line("indicator", fmt_g(v));
      return 0;
    }
    if (c_pulse->parsed()) {
      double v = bz::pulse_value(A.gamma(), pulse_t);
      if (as_json)
        emit(ordered_json{{"t", pulse_t},
                          {"gamma", A.gamma()},
                          {"value", v},
                          {"err_est", 0.0}});
      else
        line("pulse", fmt_g(v));
      return 0;
    }
    if (c_four->parsed()) {
      bz::cplx v = bz::fourier_coeff(A, four_k);
      double err = 2e-16 + 1e-15 * std::abs(v);
      if (as_json)
        emit(ordered_json{{"k", four_k}, {"value", jc(v)}, {"err_est", err}});
      else {
        line("coeff", fmt_c(v));
        line("err_est", fmt_g(err));
      }
      return 0;
    }
    if (c_disc->parsed()) {
      bz::DiscrepancyReport rep =
          bz::star_discrepancy_report(A, disc_delta, disc_m);
      // extreme discrepancy is bracketed by [D*, 2 D*]
      if (as_json)
        emit(ordered_json{{"m", rep.m},
                          {"d_star", rep.d_star},
                          {"extreme_lo", rep.d_star},
                          {"extreme_hi", 2.0 * rep.d_star},
                          {"err_est", 1e-13}});
      else {
        line("m", std::to_string(rep.m));
        line("d_star", fmt_g(rep.d_star));
        line("extreme", "[" + fmt_g(rep.d_star) + ", " +
                            fmt_g(2.0 * rep.d_star) + "]");
      }
      return 0;
    }
    if (c_nh->parsed()) {
      if (!(nh_threshold > 0.0 && nh_threshold <= 0.5))
        throw bz::domain_error("nearhits: threshold must lie in (0, 1/2]");
      std::vector<bz::NearHit> hits =
          bz::near_hits(A, rv, nh_kmax, nh_threshold);
      if (as_json) {
        ordered_json arr = ordered_json::array();
        for (const auto& h : hits)
          arr.push_back(ordered_json{
              {"k", h.k}, {"ell", h.ell}, {"dist", h.dist}, {"ds", h.ds}});
        emit(ordered_json{{"r", rv},
                          {"k_max", nh_kmax},
                          {"threshold", nh_threshold},
                          {"hits", arr},
                          {"err_est", 1e-15}});
      } else {
        line("hits", std::to_string(hits.size()));
        for (const auto& h : hits)
          std::printf("k=%lld ell=%lld dist=%s\n",
                      static_cast<long long>(h.k),
                      static_cast<long long>(h.ell), fmt_g(h.dist).c_str());
      }
      return 0;
    }
    if (c_theta->parsed()) {
      if (repr == "both") {
        bz::cplx d = bz::theta_direct(th_v, th_w, u);
        bz::cplx t = bz::theta_direct(th_w, -th_v, 1.0 / u) / std::sqrt(u);
        double err = 2.0 * theta_err(u);
        if (as_json)
          emit(ordered_json{{"direct", jc(d)},
                            {"transformed", jc(t)},
                            {"gap", std::abs(d - t)},
                            {"err_est", err}});
        else {
          line("direct", fmt_c(d));
          line("transformed", fmt_c(t));
          line("gap", fmt_g(std::abs(d - t)));
          line("err_est", fmt_g(err));
        }
        return 0;
      }
      bz::EvalResult r;
      if (repr == "direct") {
        r = {bz::theta_direct(th_v, th_w, u), theta_err(u),
             bz::Method::direct_series};
      } else {
        r = {bz::theta_direct(th_w, -th_v, 1.0 / u) / std::sqrt(u),
             theta_err(u), bz::Method::functional_equation};
      }
      fmt.put(r);
      return 0;
    }
    if (c_psi->parsed()) {
      bz::cplx pre = bz::e_of(-0.5 * qv * rv);
      bz::cplx d = bz::psi(rv, qv, u);
      bz::cplx t = pre * bz::theta_direct(rv, -qv, 1.0 / u) / std::sqrt(u);
      if (repr == "both") {
        double err = 2.0 * theta_err(u);
        if (as_json)
          emit(ordered_json{{"direct", jc(d)},
                            {"transformed", jc(t)},
                            {"gap", std::abs(d - t)},
                            {"err_est", err}});
        else {
          line("direct", fmt_c(d));
          line("transformed", fmt_c(t));
          line("gap", fmt_g(std::abs(d - t)));
          line("err_est", fmt_g(err));
        }
        return 0;
      }
      bz::EvalResult r;
      if (repr == "direct")
        r = {d, theta_err(u), bz::Method::direct_series};
      else
        r = {t, theta_err(u), bz::Method::functional_equation};
      fmt.put(r);
      return 0;
    }
    if (c_phi->parsed()) {
      bz::PhiContext ctx(A, rv, qv, cc.k_max);
      if (repr != "direct" && u > 4.0)
        throw bz::domain_error(
            "phi: the transformed representation requires u <= 4");
      if (repr == "both") {
        bz::EvalResult d = bz::phi_direct(ctx, u);
        bz::EvalResult t = bz::phi_transformed(ctx, u, cc.k_max);
        if (as_json)
          emit(ordered_json{
              {"direct", ordered_json{{"value", jc(d.value)},
                                      {"err_est", d.err_est}}},
              {"transformed", ordered_json{{"value", jc(t.value)},
                                           {"err_est", t.err_est}}},
              {"gap", std::abs(d.value - t.value)}});
        else {
          line("direct", fmt_c(d.value));
          line("transformed", fmt_c(t.value));
          line("gap", fmt_g(std::abs(d.value - t.value)));
          line("err_est", fmt_g(d.err_est + t.err_est));
        }
        return 0;
      }
      fmt.put(repr == "direct" ? bz::phi_direct(ctx, u)
                               : bz::phi_transformed(ctx, u, cc.k_max));
      return 0;
    }
    if (c_rz->parsed()) {
      fmt.put(bz::riemann_zeta(s));
      return 0;
    }
    if (c_hz->parsed()) {
      fmt.put(bz::hurwitz_zeta(s, qv));
      return 0;
    }
    if (c_lerch->parsed()) {
      fmt.put(bz::lerch(rv, qv, s, tol));
      return 0;
    }
    if (c_zs->parsed()) {
      bz::ZetaSharpValue z = bz::zeta_sharp(rv, qv, s, cc, subtract_pole);
      if (as_json)
        emit(ordered_json{{"value", jc(z.value)},
                          {"pole", jc(z.pole_coefficient)},
                          {"err_est", z.err_est},
                          {"method", bz::method_name(z.method)}});
      else {
        line("value", fmt_c(z.value));
        line("pole", fmt_c(z.pole_coefficient));
        line("err_est", fmt_g(z.err_est));
        line("method", bz::method_name(z.method));
      }
      return 0;
    }
    if (c_zd->parsed()) {
      fmt.put(bz::z_direct(A, rv, qv, s, tol, nmax));
      return 0;
    }
    if (c_zsh->parsed()) {
      bz::ZMode mode = zmode == "direct"      ? bz::ZMode::direct
                       : zmode == "continued" ? bz::ZMode::continued
                                              : bz::ZMode::automatic;
      bz::PhiContext ctx(A, rv, qv, cc.k_max);
      bz::Continuation c(ctx, cc);
      bz::ZSharpResult z = c.z_sharp(s, mode, subtract_pole);
      if (as_json)
        emit(ordered_json{{"value", jc(z.value)},
                          {"pole", jc(z.pole_coefficient)},
                          {"err_est", z.err_est},
                          {"method", bz::method_name(z.method)},
                          {"region", z.region_note}});
      else {
        line("value", fmt_c(z.value));
        line("pole", fmt_c(z.pole_coefficient));
        line("err_est", fmt_g(z.err_est));
        line("method", bz::method_name(z.method));
        line("region", z.region_note);
      }
      return 0;
    }
    if (c_res->parsed()) {
      bz::PhiContext ctx(A, rv, qv, cc.k_max);
      bz::Continuation c(ctx, cc);
      bz::ResidueReport rep = c.residue_at_one(res_method);
      if (as_json)
        emit(ordered_json{{"measured", jc(rep.measured)},
                          {"predicted_theorem", jc(rep.predicted_theorem)},
                          {"predicted_density", jc(rep.predicted_density)},
                          {"err_est", rep.err_est},
                          {"method", rep.method}});
      else {
        line("measured", fmt_c(rep.measured));
        line("predicted_theorem", fmt_c(rep.predicted_theorem));
        line("predicted_density", fmt_c(rep.predicted_density));
        line("err_est", fmt_g(rep.err_est));
        line("method", rep.method);
      }
      return 0;
    }
    if (c_scan->parsed()) {
      bz::PhiContext ctx(A, rv, qv, cc.k_max);
      bz::Continuation c(ctx, cc);
      std::vector<bz::GridPoint> rows = bz::grid_scan(c, grid);
      if (as_json) {
        ordered_json arr = ordered_json::array();
        for (const auto& p : rows) {
          ordered_json row{{"s", jc(p.s)}, {"ok", p.ok}};
          if (p.ok) {
            row["value"] = jc(p.z.value);
            row["err_est"] = p.z.err_est;
            row["pole"] = jc(p.z.pole_coefficient);
            row["region"] = p.z.region_note;
          } else {
            row["error"] = p.error;
          }
          arr.push_back(std::move(row));
        }
        emit(arr);
      } else {
        std::fputs(bz::grid_csv(rows).c_str(), stdout);
      }
      return 0;
    }
    if (c_verify->parsed()) {
      std::vector<bz::CriterionResult> rows = bz::run_acceptance(suite);
      if (as_json) {
        ordered_json arr = ordered_json::array();
        for (const auto& r : rows)
          arr.push_back(ordered_json{{"id", r.id},
                                     {"name", r.name},
                                     {"observed", r.observed},
                                     {"tolerance", r.tolerance},
                                     {"pass", r.pass},
                                     {"detail", r.detail}});
        emit(arr);
      } else {
        // no wall-clock column: stdout must be byte-stable across runs
        std::fputs(bz::acceptance_table(rows, false).c_str(), stdout);
      }
      return bz::acceptance_passed(rows) ? 0 : 2;
    }
  } catch (const bz::domain_error& ex) {
    std::fprintf(stderr, "bzeta: domain error: %s\n", ex.what());
    return 3;
  } catch (const bz::precision_error& ex) {
    std::fprintf(stderr, "bzeta: precision ambiguity: %s\n", ex.what());
    return 4;
  } catch (const bz::budget_error& ex) {
    std::fprintf(stderr, "bzeta: tolerance unmet: %s\n", ex.what());
    return 2;
  }
  return 1;
}
