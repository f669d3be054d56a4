#include "vgm/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "vgm/errors.hpp"
#include "vgm/validate.hpp"

namespace vgm::cli {

using nlohmann::ordered_json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

const char* kind_name(MomentKind k) { return k == MomentKind::raw ? "raw" : "central"; }

// nlohmann writes non-finite doubles as null; keep them readable.
ordered_json num(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

ordered_json record_json(const OutputRecord& r) {
  ordered_json j;
  j["inputs"]["params"] = {{"nu", num(r.nu)}, {"alpha", num(r.alpha)},
                           {"beta", num(r.beta)}, {"mu", num(r.mu)}};
  j["inputs"]["query"] = {{"order", num(r.query.order_r)},
                          {"kind", kind_name(r.query.kind)},
                          {"absolute", r.query.absolute},
                          {"method", method_name(r.query.method)},
                          {"rel_tol", num(r.query.rel_tol)},
                          {"max_terms", r.query.max_terms},
                          {"seed", r.query.seed}};
  j["value"] = num(r.value);
  j["method_used"] = method_name(r.method_used);
  j["terms_used"] = r.terms_used;
  j["error_bound"] = num(r.error_bound);
  j["elapsed_ms"] = num(r.elapsed_ms);
  return j;
}

}  // namespace

const std::string& csv_header() {
  static const std::string h =
      "nu,alpha,beta,mu,order,kind,absolute,method,rel_tol,max_terms,seed,"
      "value,method_used,terms_used,error_bound,elapsed_ms";
  return h;
}

std::string to_csv_row(const OutputRecord& r) {
  std::ostringstream os;
  os << format_double(r.nu) << ',' << format_double(r.alpha) << ',' << format_double(r.beta)
     << ',' << format_double(r.mu) << ',' << format_double(r.query.order_r) << ','
     << kind_name(r.query.kind) << ',' << (r.query.absolute ? "true" : "false") << ','
     << method_name(r.query.method) << ',' << format_double(r.query.rel_tol) << ','
     << r.query.max_terms << ',' << r.query.seed << ',' << format_double(r.value) << ','
     << method_name(r.method_used) << ',' << r.terms_used << ',' << format_double(r.error_bound)
     << ',' << format_double(r.elapsed_ms);
  return os.str();
}

std::string to_json(const OutputRecord& r) { return record_json(r).dump(); }

std::string to_text(const OutputRecord& r) {
  std::ostringstream os;
  os << "params       nu=" << format_double(r.nu) << " alpha=" << format_double(r.alpha)
     << " beta=" << format_double(r.beta) << " mu=" << format_double(r.mu) << '\n'
     << "query        " << (r.query.absolute ? "E|X|^r" : "E[X^r]")
     << " r=" << format_double(r.query.order_r) << " kind=" << kind_name(r.query.kind)
     << " method=" << method_name(r.query.method) << " rel_tol=" << format_double(r.query.rel_tol)
     << " max_terms=" << r.query.max_terms << " seed=" << r.query.seed << '\n'
     << "value        " << format_double(r.value) << '\n'
     << "method_used  " << method_name(r.method_used) << '\n'
     << "terms_used   " << r.terms_used << '\n'
     << "error_bound  " << format_double(r.error_bound) << '\n'
     << "elapsed_ms   " << format_double(r.elapsed_ms) << '\n';
  return os.str();
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

const std::map<std::string, Format> kFormats{
    {"json", Format::json}, {"csv", Format::csv}, {"text", Format::text}};

struct MomentFlags {
  std::optional<double> nu, alpha, beta, mu;
  std::optional<double> kappa, sigma, location;
  std::optional<double> sigma_u, sigma_v, rho;
  std::optional<int> n;
  std::vector<double> orders{1.0};
  std::string kind = "raw";
  bool absolute = false;
  std::string method = "auto";
  std::optional<double> rel_tol;
  int max_terms = 500;
  std::uint64_t seed = 1;
  std::size_t samples = 1000000;
  Format output = Format::text;
  bool no_timing = false;
};

double default_rel_tol() {
  const char* env = std::getenv("VGM_RELTOL");
  if (!env || !*env) return 1e-10;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v))
    throw DomainError(std::string("VGM_RELTOL must be a positive number, got '") + env + "'");
  return v;
}

VGParams build_params(const MomentFlags& f) {
  const bool vg = f.nu || f.alpha || f.beta || f.mu;
  const bool al = f.kappa || f.sigma || f.location;
  const bool prod = f.sigma_u || f.sigma_v || f.rho || f.n;
  if (int(vg) + int(al) + int(prod) != 1)
    throw DomainError(
        "give exactly one parameter form: --nu/--alpha/--beta/--mu, "
        "--kappa/--sigma/--location or --sigma-u/--sigma-v/--rho/--n");
  if (vg) {
    if (!f.nu || !f.alpha) throw DomainError("--nu and --alpha are required");
    return VGParams(*f.nu, *f.alpha, f.beta.value_or(0.0), f.mu.value_or(0.0));
  }
  if (al) {
    if (!f.kappa || !f.sigma) throw DomainError("--kappa and --sigma are required");
    return from_al(from_al_kappa({*f.kappa, *f.sigma, f.location.value_or(0.0)}));
  }
  if (!f.sigma_u || !f.sigma_v) throw DomainError("--sigma-u and --sigma-v are required");
  return from_normal_product({*f.sigma_u, *f.sigma_v, f.rho.value_or(0.0), f.n.value_or(1)});
}

int cmd_moment(const MomentFlags& f, std::ostream& out, std::ostream& err) {
  const VGParams p = build_params(f);
  MomentQuery q;
  q.kind = f.kind == "central" ? MomentKind::central : MomentKind::raw;
  q.absolute = f.absolute;
  q.method = parse_method(f.method);
  q.rel_tol = f.rel_tol ? *f.rel_tol : default_rel_tol();
  q.max_terms = f.max_terms;
  q.seed = f.seed;
  q.mc_samples = f.samples;

  std::vector<OutputRecord> recs;
  for (double r : f.orders) {
    q.order_r = r;
    const auto t0 = Clock::now();
    const EvalResult res = moment(p, q);
    OutputRecord rec;
    rec.nu = p.nu();
    rec.alpha = p.alpha();
    rec.beta = p.beta();
    rec.mu = p.mu();
    rec.query = q;
    rec.value = res.value;
    rec.method_used = res.method_used;
    rec.terms_used = res.terms_used;
    rec.error_bound = res.error_bound;
    rec.elapsed_ms = f.no_timing ? 0.0 : ms_since(t0);
    for (const auto& w : res.warnings) err << "warning: " << w << '\n';
    recs.push_back(rec);
  }
  if (f.output == Format::csv) out << csv_header() << '\n';
  for (const auto& rec : recs) {
    switch (f.output) {
      case Format::json: out << to_json(rec) << '\n'; break;
      case Format::csv: out << to_csv_row(rec) << '\n'; break;
      case Format::text: out << to_text(rec); break;
    }
  }
  return kOk;
}

struct Sp500Line {
  const char* name;
  double exact, approx, rel_err;
};

int cmd_sp500(Format fmt, bool no_timing, std::ostream& out) {
  const auto t0 = Clock::now();
  const VGParams raw(1.870, 271.1, -2.342, 2.585e-4);
  const VGParams cen = centralize(raw);
  std::vector<Sp500Line> lines;
  for (int r : {1, 3}) {
    for (const VGParams* p : {&raw, &cen}) {
      MomentQuery q;
      q.order_r = r;
      q.rel_tol = 1e-15;
      const double exact = moment(*p, q).value;
      const double approx = abs_moment_asymptotic(*p, r).value;
      const char* name = p == &raw ? (r == 1 ? "raw_r1" : "raw_r3")
                                   : (r == 1 ? "central_r1" : "central_r3");
      lines.push_back({name, exact, approx, std::fabs(approx - exact) / exact});
    }
  }
  const double elapsed = no_timing ? 0.0 : ms_since(t0);
  const double ba = raw.beta() / raw.alpha();
  const double am = raw.alpha() * raw.mu();
  const double cam = cen.alpha() * cen.mu();
  if (fmt == Format::json) {
    ordered_json j;
    j["params"] = {{"nu", raw.nu()}, {"alpha", raw.alpha()}, {"beta", raw.beta()},
                   {"mu", raw.mu()}};
    j["beta_over_alpha"] = ba;
    j["alpha_mu"] = am;
    j["central_alpha_mu"] = cam;
    for (const auto& l : lines)
      j["moments"][l.name] = {{"exact", l.exact}, {"asymptotic", l.approx},
                              {"rel_err", l.rel_err}};
    j["elapsed_ms"] = elapsed;
    out << j.dump() << '\n';
  } else if (fmt == Format::csv) {
    out << "quantity,exact,asymptotic,rel_err\n";
    out << "beta_over_alpha," << format_double(ba) << ",,\n";
    out << "alpha_mu," << format_double(am) << ",,\n";
    out << "central_alpha_mu," << format_double(cam) << ",,\n";
    for (const auto& l : lines)
      out << l.name << ',' << format_double(l.exact) << ',' << format_double(l.approx) << ','
          << format_double(l.rel_err) << '\n';
    out << "elapsed_ms," << format_double(elapsed) << ",,\n";
  } else {
    out << "VG(nu=1.870, alpha=271.1, beta=-2.342, mu=2.585e-4)\n"
        << "beta/alpha        " << format_double(ba) << '\n'
        << "alpha*mu          " << format_double(am) << '\n'
        << "central alpha*mu  " << format_double(cam) << '\n';
    for (const auto& l : lines)
      out << l.name << std::string(12 - std::string(l.name).size(), ' ')
          << "exact " << format_double(l.exact) << "  asymptotic " << format_double(l.approx)
          << "  rel_err " << format_double(l.rel_err) << '\n';
    out << "elapsed_ms        " << format_double(elapsed) << '\n';
  }
  return kOk;
}

int cmd_validate(const selftest::Options& opt, Format fmt, bool verbose, std::ostream& out) {
  const auto rep = selftest::run(opt);
  const std::size_t nfail = rep.failures();
  if (fmt == Format::json) {
    ordered_json j;
    j["cases"] = rep.cases.size();
    j["failures"] = nfail;
    std::map<std::string, std::pair<std::size_t, std::size_t>> per;
    for (const auto& c : rep.cases) {
      auto& e = per[c.suite];
      ++e.first;
      if (!c.passed) ++e.second;
    }
    for (const auto& [s, e] : per) j["suites"][s] = {{"cases", e.first}, {"failures", e.second}};
    j["failed"] = ordered_json::array();
    for (const auto& c : rep.cases) {
      if (c.passed && !verbose) continue;
      ordered_json cj = {{"suite", c.suite},         {"name", c.name},
                         {"value", num(c.value)},    {"reference", num(c.reference)},
                         {"measured", num(c.measured)}, {"tolerance", num(c.tolerance)},
                         {"passed", c.passed},       {"detail", c.detail}};
      j[c.passed ? "passed" : "failed"].push_back(cj);
    }
    out << j.dump() << '\n';
  } else if (fmt == Format::csv) {
    out << "suite,name,value,reference,measured,tolerance,passed\n";
    for (const auto& c : rep.cases) {
      if (c.passed && !verbose) continue;
      out << c.suite << ",\"" << c.name << "\"," << format_double(c.value) << ','
          << format_double(c.reference) << ',' << format_double(c.measured) << ','
          << format_double(c.tolerance) << ',' << (c.passed ? "true" : "false") << '\n';
    }
  } else {
    for (const auto& c : rep.cases) {
      if (c.passed && !verbose) continue;
      out << (c.passed ? "ok   " : "FAIL ") << c.suite << ": " << c.name
          << "  measured " << format_double(c.measured) << " tol " << format_double(c.tolerance)
          << "  value " << format_double(c.value) << " ref " << format_double(c.reference);
      if (!c.detail.empty()) out << "  (" << c.detail << ')';
      out << '\n';
    }
    out << rep.cases.size() << " cases, " << nfail << " failed\n";
  }
  return nfail == 0 ? kOk : kValidationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Moments of the variance-gamma distribution", "vgm"};
  app.require_subcommand(1);

  MomentFlags mf;
  auto* mom = app.add_subcommand("moment", "Compute E[X^r] or E|X|^r");
  mom->add_option("--nu", mf.nu, "Shape nu > -1/2");
  mom->add_option("--alpha", mf.alpha, "Tail decay alpha > |beta|");
  mom->add_option("--beta", mf.beta, "Skewness beta (default 0)");
  mom->add_option("--mu", mf.mu, "Location mu (default 0)");
  mom->add_option("--kappa", mf.kappa, "Asymmetric Laplace kappa > 0");
  mom->add_option("--sigma", mf.sigma, "Asymmetric Laplace sigma > 0");
  mom->add_option("--location", mf.location, "Asymmetric Laplace location (default 0)");
  mom->add_option("--sigma-u", mf.sigma_u, "Product form: sd of U");
  mom->add_option("--sigma-v", mf.sigma_v, "Product form: sd of V");
  mom->add_option("--rho", mf.rho, "Product form: correlation (default 0)");
  mom->add_option("--n", mf.n, "Product form: number of averaged products (default 1)");
  mom->add_option("--order,-r", mf.orders, "Order r; a comma list gives one record each")
      ->delimiter(',');
  mom->add_option("--kind", mf.kind, "raw or central")
      ->check(CLI::IsMember({"raw", "central"}));
  mom->add_flag("--absolute", mf.absolute, "E|X|^r instead of E[X^r]");
  mom->add_option("--method", mf.method,
                  "auto, raw, even, odd-series, symmetric, halfint, asymptotic, mu-zero, quad, mc");
  mom->add_option("--rel-tol", mf.rel_tol, "Series/quadrature tolerance (default 1e-10 or VGM_RELTOL)");
  mom->add_option("--max-terms", mf.max_terms, "Series term limit");
  mom->add_option("--seed", mf.seed, "Monte-Carlo seed");
  mom->add_option("--samples", mf.samples, "Monte-Carlo sample count");
  mom->add_option("--output,-o", mf.output, "json, csv or text")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
  mom->add_flag("--no-timing", mf.no_timing, "Report elapsed_ms as 0");

  Format sp_fmt = Format::text;
  bool sp_no_timing = false;
  auto* sp = app.add_subcommand("sp500", "Asymptotic vs exact moments for the S&P 500 fit");
  sp->add_option("--output,-o", sp_fmt, "json, csv or text")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
  sp->add_flag("--no-timing", sp_no_timing, "Report elapsed_ms as 0");

  selftest::Options vopt;
  std::string grid = "full";
  std::optional<double> vtol;
  Format v_fmt = Format::text;
  bool verbose = false;
  auto* val = app.add_subcommand("validate", "Run the formula, identity and truncation checks");
  val->add_option("--grid", grid, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  val->add_option("--tol", vtol, "Override every suite tolerance");
  val->add_option("--threads", vopt.threads, "Worker threads")->check(CLI::PositiveNumber);
  val->add_option("--suite", vopt.suites, "Run only these suites (grid, identity, truncation)")
      ->check(CLI::IsMember(selftest::suite_names()));
  val->add_option("--output,-o", v_fmt, "json, csv or text")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
  val->add_flag("--verbose,-v", verbose, "List passing cases too");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (mom->parsed()) return cmd_moment(mf, out, err);
    if (sp->parsed()) return cmd_sp500(sp_fmt, sp_no_timing, out);
    vopt.grid = grid == "quick" ? selftest::Grid::quick : selftest::Grid::full;
    if (vtol) {
      if (!(*vtol > 0.0)) throw DomainError("--tol must be positive");
      vopt.tolerance = vtol;
    }
    return cmd_validate(vopt, v_fmt, verbose, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UnsupportedError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << " (partial value " << format_double(e.partial_value())
        << ")\n";
    return kNumerical;
  } catch (const OverflowError& e) {
    err << "error: " << e.what() << '\n';
    return kNumerical;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace vgm::cli
