#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vgm/errors.hpp"
#include "vgm/moments.hpp"
#include "vgm/oracle.hpp"
#include "vgm/specfun.hpp"
#include "vgm/vgdist.hpp"

namespace py = pybind11;
using namespace vgm;

namespace {

MomentKind parse_kind(const std::string& s) {
  if (s == "raw") return MomentKind::raw;
  if (s == "central") return MomentKind::central;
  throw UnsupportedError("kind must be 'raw' or 'central', got '" + s + "'");
}

// Unscaled value; large results overflow to inf like any double.
double real(const specfun::FnEval& f) { return f.real(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Moments of the variance-gamma distribution";

  auto domain = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<PoleError>(m, "PoleError", domain.ptr());
  py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_ArithmeticError);
  py::register_exception<OverflowError>(m, "OverflowError", PyExc_OverflowError);

  py::class_<VGParams>(m, "VGParams")
      .def(py::init<double, double, double, double>(), py::arg("nu"), py::arg("alpha"),
           py::arg("beta") = 0.0, py::arg("mu") = 0.0)
      .def_property_readonly("nu", &VGParams::nu)
      .def_property_readonly("alpha", &VGParams::alpha)
      .def_property_readonly("beta", &VGParams::beta)
      .def_property_readonly("mu", &VGParams::mu)
      .def_property_readonly("norm", &VGParams::norm)
      .def(py::self == py::self)
      .def("__repr__", [](const VGParams& p) {
        return "VGParams(nu=" + py::repr(py::float_(p.nu())).cast<std::string>() +
               ", alpha=" + py::repr(py::float_(p.alpha())).cast<std::string>() +
               ", beta=" + py::repr(py::float_(p.beta())).cast<std::string>() +
               ", mu=" + py::repr(py::float_(p.mu())).cast<std::string>() + ")";
      });

  py::class_<ALParams>(m, "ALParams")
      .def(py::init<double, double, double>(), py::arg("alpha"), py::arg("beta") = 0.0,
           py::arg("mu") = 0.0)
      .def_readwrite("alpha", &ALParams::alpha)
      .def_readwrite("beta", &ALParams::beta)
      .def_readwrite("mu", &ALParams::mu);

  py::class_<ALKappaSigma>(m, "ALKappaSigma")
      .def(py::init<double, double, double>(), py::arg("kappa"), py::arg("sigma"),
           py::arg("location") = 0.0)
      .def_readwrite("kappa", &ALKappaSigma::kappa)
      .def_readwrite("sigma", &ALKappaSigma::sigma)
      .def_readwrite("location", &ALKappaSigma::location);

  py::class_<ProductNormalParams>(m, "ProductNormalParams")
      .def(py::init<double, double, double, int>(), py::arg("sigma_u"), py::arg("sigma_v"),
           py::arg("rho") = 0.0, py::arg("n") = 1)
      .def_readwrite("sigma_u", &ProductNormalParams::sigma_u)
      .def_readwrite("sigma_v", &ProductNormalParams::sigma_v)
      .def_readwrite("rho", &ProductNormalParams::rho)
      .def_readwrite("n", &ProductNormalParams::n);

  m.def("pdf", [](const VGParams& p, double x) { return pdf(p, x); }, py::arg("params"),
        py::arg("x"));
  m.def(
      "pdf",
      [](const VGParams& p, py::array_t<double, py::array::c_style | py::array::forcecast> x) {
        py::array_t<double> out(x.request().shape);
        const double* in = x.data();
        double* o = out.mutable_data();
        for (py::ssize_t i = 0; i < x.size(); ++i) o[i] = pdf(p, in[i]);
        return out;
      },
      py::arg("params"), py::arg("x"));
  m.def("mean", &mean);
  m.def("variance", &variance);
  m.def("shift", &shift, py::arg("params"), py::arg("a"));
  m.def("centralize", &centralize);
  m.def("convolve_iid", &convolve_iid, py::arg("params"), py::arg("n"));
  m.def("from_al", &from_al);
  m.def("from_al_kappa", &from_al_kappa);
  m.def("to_al_kappa", &to_al_kappa);
  m.def("from_normal_product", &from_normal_product);
  m.def(
      "sample",
      [](const VGParams& p, std::size_t count, std::uint64_t seed, unsigned threads) {
        std::vector<double> v;
        {
          py::gil_scoped_release nogil;
          v = sample(p, seed, count, threads);
        }
        return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
      },
      py::arg("params"), py::arg("count"), py::arg("seed") = 1, py::arg("threads") = 1);

  py::class_<EvalResult>(m, "EvalResult")
      .def_readonly("value", &EvalResult::value)
      .def_property_readonly("method_used",
                             [](const EvalResult& r) { return method_name(r.method_used); })
      .def_readonly("terms_used", &EvalResult::terms_used)
      .def_readonly("error_bound", &EvalResult::error_bound)
      .def_readonly("warnings", &EvalResult::warnings)
      .def("__float__", [](const EvalResult& r) { return r.value; })
      .def("__repr__", [](const EvalResult& r) {
        return "EvalResult(value=" + py::repr(py::float_(r.value)).cast<std::string>() +
               ", method_used='" + method_name(r.method_used) + "')";
      });

  m.def(
      "moment",
      [](const VGParams& p, double order, const std::string& kind, bool absolute,
         const std::string& method, double rel_tol, int max_terms, std::uint64_t seed,
         std::size_t samples) {
        MomentQuery q;
        q.order_r = order;
        q.kind = parse_kind(kind);
        q.absolute = absolute;
        q.method = parse_method(method);
        q.rel_tol = rel_tol;
        q.max_terms = max_terms;
        q.seed = seed;
        q.mc_samples = samples;
        return moment(p, q);
      },
      py::arg("params"), py::arg("order"), py::arg("kind") = "raw", py::arg("absolute") = true,
      py::arg("method") = "auto", py::arg("rel_tol") = 1e-10, py::arg("max_terms") = 500,
      py::arg("seed") = 1, py::arg("samples") = 1000000);

  m.def("raw_moment", &raw_moment, py::arg("params"), py::arg("r"));
  m.def("abs_moment_mu_zero", &abs_moment_mu_zero, py::arg("params"), py::arg("r"));
  m.def("abs_moment_even", &abs_moment_even, py::arg("params"), py::arg("r"));
  m.def(
      "abs_moment_odd_series",
      [](const VGParams& p, int r, double rel_tol, int max_terms) {
        return abs_moment_odd_series(p, r, SeriesControl{rel_tol, max_terms, 0});
      },
      py::arg("params"), py::arg("r"), py::arg("rel_tol") = 1e-10, py::arg("max_terms") = 500);
  m.def("abs_moment_symmetric", &abs_moment_symmetric, py::arg("params"), py::arg("r"));
  m.def("abs_moment_halfint", &abs_moment_halfint, py::arg("params"), py::arg("r"));
  m.def("abs_moment_asymptotic", &abs_moment_asymptotic, py::arg("params"), py::arg("r"),
        py::arg("threshold") = 0.1);
  m.def("al_abs_moment", &al_abs_moment, py::arg("al"), py::arg("r"));
  m.def("al_abs_first_moment", &al_abs_first_moment);
  m.def("al_mean_deviation", &al_mean_deviation);
  m.def("al_mean_deviation_kappa", &al_mean_deviation_kappa);
  m.def("al_meandev_stddev_ratio", &al_meandev_stddev_ratio, py::arg("kappa"));

  m.def(
      "quad_abs_moment",
      [](const VGParams& p, double r, double rel_tol) {
        const auto q = oracle::quad_abs_moment(p, r, rel_tol);
        return py::make_tuple(q.value, q.est_abs_err);
      },
      py::arg("params"), py::arg("r"), py::arg("rel_tol") = 1e-12,
      "Returns (value, estimated absolute error).");
  m.def("quad_cdf", &oracle::quad_cdf, py::arg("params"), py::arg("x"),
        py::arg("rel_tol") = 1e-12);
  m.def(
      "mc_abs_moment",
      [](const VGParams& p, double r, std::size_t n, std::uint64_t seed) {
        const auto mc = oracle::mc_abs_moment(p, r, n, seed);
        return py::make_tuple(mc.estimate, mc.std_error);
      },
      py::arg("params"), py::arg("r"), py::arg("n"), py::arg("seed") = 1,
      "Returns (estimate, standard error).");

  m.def("bessel_k", [](double nu, double x) { return real(specfun::bessel_k(nu, x)); },
        py::arg("order"), py::arg("x"));
  m.def("big_g", [](double mu, double nu, double x) {
    return real(specfun::big_g(specfun::GArgs(mu, nu, x)));
  }, py::arg("order_mu"), py::arg("order_nu"), py::arg("x"));
  m.def("hyp2f1", [](double a, double b, double c, double z) {
    return real(specfun::hyp2f1(a, b, c, z));
  });
}
