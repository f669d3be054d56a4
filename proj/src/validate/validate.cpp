#include "vgm/validate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iterator>
#include <limits>
#include <thread>

#include "vgm/errors.hpp"
#include "vgm/moments.hpp"
#include "vgm/oracle.hpp"
#include "vgm/specfun.hpp"

namespace vgm::selftest {

namespace {

using Task = std::function<CaseResult()>;

std::string fmt(const char* f, double a, double b, double c, double d) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double rel_diff(double v, double ref) {
  if (v == ref) return 0.0;
  return std::fabs(v - ref) / std::max(std::fabs(ref), 1e-300);
}

CaseResult compare(std::string suite, std::string name, double v, double ref, double tol) {
  CaseResult c;
  c.suite = std::move(suite);
  c.name = std::move(name);
  c.value = v;
  c.reference = ref;
  c.measured = rel_diff(v, ref);
  c.tolerance = tol;
  c.passed = c.measured <= tol;
  return c;
}

// Wraps a task so that an exception becomes a failed case.
Task guarded(std::string suite, std::string name, double tol, std::function<CaseResult()> f) {
  return [suite, name, tol, f] {
    try {
      return f();
    } catch (const std::exception& e) {
      CaseResult c;
      c.suite = suite;
      c.name = name;
      c.tolerance = tol;
      c.measured = std::nan("");
      c.detail = e.what();
      return c;
    }
  };
}

VGParams grid_params(const GridPoint& g) {
  const double a = kGridAlpha;
  return {g.nu, a, g.beta_ratio * a, g.alpha_mu / a};
}

std::string point_name(const GridPoint& g) {
  return fmt("nu=%g b/a=%g a*mu=%g r=%g", g.nu, g.beta_ratio, g.alpha_mu, g.r);
}

double tol_or(const Options& o, double t) { return o.tolerance ? *o.tolerance : t; }

void grid_suite(const Options& o, std::vector<Task>& tasks) {
  const double tol = tol_or(o, 1e-7);
  for (const auto& g : moment_grid(o.grid)) {
    const std::string name = point_name(g);
    tasks.push_back(guarded("grid", name, tol, [g, name, tol] {
      const VGParams p = grid_params(g);
      MomentQuery q;
      q.order_r = g.r;
      const auto e = moment(p, q);
      const auto ref = oracle::quad_abs_moment(p, g.r, 1e-12);
      auto c = compare("grid", name, e.value, ref.value, tol);
      c.detail = method_name(e.method_used);
      return c;
    }));
  }
}

void truncation_suite(const Options& o, std::vector<Task>& tasks) {
  const double slack = 0.05;
  for (const auto& g : moment_grid(o.grid)) {
    if (g.r % 2 == 0 || g.alpha_mu == 0.0) continue;
    const std::string name = point_name(g);
    const double tol = tol_or(o, 1.0);
    tasks.push_back(guarded("truncation", name, tol, [g, name, tol, slack] {
      const VGParams p = grid_params(g);
      SeriesControl ctrl;
      ctrl.extra_terms = 50;
      OddSeriesTrace tr;
      const auto e = abs_moment_odd_series(p, g.r, ctrl, &tr);
      CaseResult c;
      c.suite = "truncation";
      c.name = name;
      c.value = tr.residual;
      c.reference = e.error_bound;
      // residual / bound must not exceed 1.
      c.measured = e.error_bound > 0.0 ? tr.residual / e.error_bound : (tr.residual > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
      c.tolerance = tol;
      // Largest |t_{j+1} / t_j| over the second half of the summed terms.
      double ratio = 0.0;
      const std::size_t n = tr.term.size();
      for (std::size_t j = n / 2; j + 1 < n; ++j)
        if (tr.term[j] != 0.0) ratio = std::max(ratio, std::fabs(tr.term[j + 1] / tr.term[j]));
      const double limit = 2.0 * std::fabs(g.beta_ratio) + slack;
      c.passed = c.measured <= tol && ratio <= limit;
      c.detail = fmt("terms=%g late_ratio=%.3g limit=%.3g bound=%.3g", e.terms_used, ratio, limit,
                     e.error_bound);
      return c;
    }));
  }
}

void identity_suite(const Options& o, std::vector<Task>& tasks) {
  const double a = kGridAlpha;
  // Mean and second moment against the raw formula, reflection symmetry.
  for (const auto& g : moment_grid(o.grid)) {
    if (g.r != 1) continue;
    const VGParams p = grid_params(g);
    const std::string pn = fmt("nu=%g b/a=%g a*mu=%g", g.nu, g.beta_ratio, g.alpha_mu, 0);
    const double t1 = tol_or(o, 1e-10);
    tasks.push_back(guarded("identity", "mean=raw1 " + pn, t1, [p, pn, t1] {
      const double ref = mean(p);
      const double v = raw_moment(p, 1).value;
      // Relative to the spread when the mean itself is ~0.
      auto c = compare("identity", "mean=raw1 " + pn, v, ref, t1);
      c.measured = std::fabs(v - ref) / std::max(std::fabs(ref), std::sqrt(variance(p)));
      c.passed = c.measured <= t1;
      return c;
    }));
    tasks.push_back(guarded("identity", "even2=raw2 " + pn, t1, [p, pn, t1] {
      return compare("identity", "even2=raw2 " + pn, abs_moment_even(p, 2).value,
                     raw_moment(p, 2).value, t1);
    }));
    const double t2 = tol_or(o, 1e-10);
    for (int r = 1; r <= 5; ++r) {
      const std::string n = "reflect r=" + std::to_string(r) + " " + pn;
      tasks.push_back(guarded("identity", n, t2, [p, r, n, t2] {
        MomentQuery q;
        q.order_r = r;
        const VGParams m(p.nu(), p.alpha(), -p.beta(), -p.mu());
        return compare("identity", n, moment(m, q).value, moment(p, q).value, t2);
      }));
    }
  }
  // Odd series against the half-integer closed form, and even against it.
  const double t3 = tol_or(o, 1e-9);
  for (double nu : {0.5, 1.5, 2.5})
    for (double b : {0.0, 0.5, 0.9})
      for (double am : {0.05, 1.0, 3.0}) {
        const VGParams p(nu, a, b * a, am / a);
        for (int r : {1, 2, 3, 4, 5}) {
          const std::string n =
              fmt(r % 2 ? "series=halfint nu=%g b/a=%g a*mu=%g r=%g" :
                          "even=halfint nu=%g b/a=%g a*mu=%g r=%g",
                  nu, b, am, r);
          tasks.push_back(guarded("identity", n, t3, [p, r, n, t3] {
            const double h = abs_moment_halfint(p, r).value;
            const double v = r % 2 ? abs_moment_odd_series(p, r).value : abs_moment_even(p, r).value;
            return compare("identity", n, v, h, t3);
          }));
        }
      }
  // beta = 0: the general series reduces to the symmetric sums.
  const double t4 = tol_or(o, 1e-12);
  for (double nu : {-0.3, 0.0, 1.0, 1.87})
    for (double am : {-2.0, -0.07, 0.07, 2.0})
      for (int r : {1, 3, 5}) {
        const VGParams p(nu, a, 0.0, am / a);
        const std::string n = fmt("series=symmetric nu=%g a*mu=%g r=%g", nu, am, r, 0);
        tasks.push_back(guarded("identity", n, t4, [p, r, n, t4] {
          return compare("identity", n, abs_moment_odd_series(p, r).value,
                         abs_moment_symmetric(p, r).value, t4);
        }));
      }
  // Asymmetric Laplace closed forms against quadrature.
  const double t5 = tol_or(o, 1e-10);
  for (double al : {1.0, 2.0, 5.0})
    for (double b : {0.0, 0.5, 0.9})
      for (double mu : {-1.0, 0.0, 0.3}) {
        const ALParams lp{al, b * al, mu};
        const std::string pn = fmt("alpha=%g b/a=%g mu=%g", al, b, mu, 0);
        tasks.push_back(guarded("identity", "AL E|X| " + pn, t5, [lp, pn, t5] {
          const auto q = oracle::quad_abs_moment(from_al(lp), 1.0, 1e-12);
          return compare("identity", "AL E|X| " + pn, al_abs_first_moment(lp), q.value, t5);
        }));
        tasks.push_back(guarded("identity", "AL mean deviation " + pn, t5, [lp, pn, t5] {
          const auto q = oracle::quad_abs_moment(centralize(from_al(lp)), 1.0, 1e-12);
          return compare("identity", "AL mean deviation " + pn, al_mean_deviation(lp), q.value, t5);
        }));
        tasks.push_back(guarded("identity", "AL confluent=incgamma " + pn, t5, [lp, pn, t5] {
          return compare("identity", "AL confluent=incgamma " + pn, al_abs_moment(lp, 2.5).value,
                         al_abs_moment_incgamma(lp, 2.5).value, t5);
        }));
      }
  // G function identities and the defining integral.
  const double t6 = tol_or(o, 1e-9);
  const double t7 = tol_or(o, 1e-8);
  for (double nu : {0.3, 0.5, 1.0, 1.87})
    for (double x : {0.5, 1.0, 5.0}) {
      const std::string pn = fmt("nu=%g x=%g", nu, x, 0, 0);
      tasks.push_back(guarded("identity", "G(nu,nu)=struve " + pn, t6, [nu, x, pn, t6] {
        using namespace specfun;
        const double g = big_g(GArgs(nu, nu, x)).real();
        const double v = x * (bessel_k(nu, x).real() * struve_l(nu - 1.0, x).real() +
                              bessel_k(nu - 1.0, x).real() * struve_l(nu, x).real());
        return compare("identity", "G(nu,nu)=struve " + pn, g, v, t6);
      }));
      tasks.push_back(guarded("identity", "G(nu+1,nu) closed " + pn, t6, [nu, x, pn, t6] {
        using namespace specfun;
        const double g = big_g(GArgs(nu + 1.0, nu, x)).real();
        const double v = 1.0 - std::exp((nu + 1.0) * std::log(x) + bessel_k(nu + 1.0, x).log_abs() -
                                        nu * std::log(2.0) - ln_gamma(nu + 1.0));
        return compare("identity", "G(nu+1,nu) closed " + pn, g, v, t6);
      }));
      for (double mu : {nu, nu + 0.5, nu + 3.0}) {
        const std::string n = fmt("G=integral mu=%g nu=%g x=%g", mu, nu, x, 0);
        tasks.push_back(guarded("identity", n, t7, [mu, nu, x, n, t7] {
          using namespace specfun;
          const double lhs = std::exp(ln_big_g_norm(mu, nu) + big_g(GArgs(mu, nu, x)).log_abs());
          const auto q = oracle::quad_kbessel_integral(mu, nu, x, 1e-13);
          return compare("identity", n, lhs, q.value, t7);
        }));
      }
    }
}

}  // namespace

std::size_t Report::failures() const {
  return static_cast<std::size_t>(
      std::count_if(cases.begin(), cases.end(), [](const CaseResult& c) { return !c.passed; }));
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"grid", "identity", "truncation"};
  return names;
}

std::vector<GridPoint> moment_grid(Grid g) {
  std::vector<double> nus{-0.3, 0.0, 0.5, 1.0, 1.87, 2.5};
  std::vector<double> betas{0.0, 0.3, 0.7, 0.9};
  std::vector<double> mus{-2.0, -0.07, 0.0, 0.07, 2.0};
  if (g == Grid::quick) {
    nus = {0.0, 0.5, 1.87};
    betas = {0.0, 0.7};
    mus = {-0.07, 2.0};
  }
  std::vector<GridPoint> out;
  for (double nu : nus)
    for (double b : betas)
      for (double am : mus)
        for (int r = 1; r <= 5; ++r) out.push_back({nu, b, am, r});
  return out;
}

Report run(const Options& opt) {
  std::vector<Task> tasks;
  auto wanted = [&](const std::string& s) {
    return opt.suites.empty() ||
           std::find(opt.suites.begin(), opt.suites.end(), s) != opt.suites.end();
  };
  for (const auto& s : opt.suites)
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
      throw UnsupportedError("unknown validation suite '" + s + "'");
  if (wanted("grid")) grid_suite(opt, tasks);
  if (wanted("identity")) identity_suite(opt, tasks);
  if (wanted("truncation")) truncation_suite(opt, tasks);

  Report rep;
  rep.cases.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) rep.cases[i] = tasks[i]();
  };
  const unsigned n = std::max(1u, std::min<unsigned>(opt.threads, tasks.size()));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return rep;
}

}  // namespace vgm::selftest
