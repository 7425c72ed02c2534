#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cvtele/cli.hpp"
#include "cvtele/entanglement.hpp"
#include "cvtele/localization.hpp"
#include "cvtele/montecarlo.hpp"
#include "cvtele/optimizer.hpp"
#include "cvtele/teleportation.hpp"

namespace py = pybind11;
using namespace cvtele;

namespace {

CovarianceMatrix as_cm(const Matrix& m)
{
  return CovarianceMatrix::from_matrix(m);
}

LogBase parse_base(const std::string& base)
{
  if (base == "2")
    return LogBase::two;
  if (base == "e")
    return LogBase::e;
  throw InvalidArgument("log base must be '2' or 'e'");
}

BiasMode parse_mode(bool unconstrained)
{
  return unconstrained ? BiasMode::unconstrained : BiasMode::clamped;
}

py::dict optimum_dict(const OptimizationResult& r)
{
  py::dict d;
  d["d_opt"] = r.d_opt;
  d["g_opt"] = r.g_opt;
  d["fidelity_opt"] = r.fidelity_opt;
  d["eta_n"] = r.eta_n;
  d["at_boundary"] = r.at_boundary;
  d["method"] = r.method == OptimizationMethod::numerical ? "numerical" : "closed_form";
  return d;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
  m.doc() = "Noisy Gaussian resources for continuous-variable teleportation networks.";

  py::class_<ResourceSpec>(m, "ResourceSpec")
      .def(py::init([](int modes, double n1, double n2, double rbar, double d) {
             return ResourceSpec{modes, n1, n2, rbar, d};
           }),
           py::arg("modes"), py::arg("n1") = 1.0, py::arg("n2") = 1.0, py::arg("rbar") = 0.0, py::arg("d") = 0.0)
      .def_readwrite("modes", &ResourceSpec::modes)
      .def_readwrite("n1", &ResourceSpec::n1)
      .def_readwrite("n2", &ResourceSpec::n2)
      .def_readwrite("rbar", &ResourceSpec::rbar)
      .def_readwrite("d", &ResourceSpec::d)
      .def_property_readonly("r1", &ResourceSpec::r1)
      .def_property_readonly("r2", &ResourceSpec::r2)
      .def("__repr__", [](const ResourceSpec& s) {
        return "ResourceSpec(modes=" + std::to_string(s.modes) + ", n1=" + std::to_string(s.n1) +
               ", n2=" + std::to_string(s.n2) + ", rbar=" + std::to_string(s.rbar) + ", d=" + std::to_string(s.d) +
               ")";
      });

  py::class_<ResourceFamily>(m, "ResourceFamily")
      .def(py::init([](int modes, double n1, double n2, double rbar) { return ResourceFamily{modes, n1, n2, rbar}; }),
           py::arg("modes"), py::arg("n1") = 1.0, py::arg("n2") = 1.0, py::arg("rbar") = 0.0)
      .def_readwrite("modes", &ResourceFamily::modes)
      .def_readwrite("n1", &ResourceFamily::n1)
      .def_readwrite("n2", &ResourceFamily::n2)
      .def_readwrite("rbar", &ResourceFamily::rbar)
      .def("at", &ResourceFamily::at, py::arg("d"));

  // covariance matrices cross the boundary as numpy arrays
  m.def(
      "build_resource",
      [](const ResourceSpec& spec, bool unconstrained) { return build_resource(spec, parse_mode(unconstrained)).matrix(); },
      py::arg("spec"), py::arg("unconstrained") = false);
  m.def("symplectic_form", &symplectic_form, py::arg("n_modes"));
  m.def("n_splitter", [](int n) { return n_splitter(n).matrix(); }, py::arg("n_modes"));
  m.def("symplectic_eigenvalues", py::overload_cast<const Matrix&>(&symplectic_eigenvalues), py::arg("sigma"));
  m.def("purity", [](const Matrix& s) { return purity(as_cm(s)); }, py::arg("sigma"));
  m.def("is_physical", [](const Matrix& s, double tol) { return as_cm(s).is_physical(tol); }, py::arg("sigma"),
        py::arg("tol") = 1e-9);

  m.def("eta_two_mode", [](const Matrix& s) { return eta_two_mode(as_cm(s)); }, py::arg("sigma"));
  m.def("eta_generalized", &eta_generalized, py::arg("spec"));
  m.def("entanglement_of_teleportation", &entanglement_of_teleportation, py::arg("eta_n"));
  m.def(
      "eof_symmetric", [](double eta, const std::string& base) { return eof_symmetric(eta, parse_base(base)); },
      py::arg("eta"), py::arg("base") = "2");
  m.def(
      "eof_localizable", [](double e_t, const std::string& base) { return eof_localizable(e_t, parse_base(base)); },
      py::arg("e_t"), py::arg("base") = "2");
  m.def(
      "contangle_from_et", [](double e_t, const std::string& base) { return contangle_from_ET(e_t, parse_base(base)); },
      py::arg("e_t"), py::arg("base") = "2");
  m.def(
      "entanglement_report",
      [](const ResourceSpec& spec, const std::string& base, bool unconstrained) {
        const auto r = entanglement_report(spec, parse_base(base), parse_mode(unconstrained));
        py::dict d;
        d["eta"] = r.eta;
        d["eta_n"] = r.eta_n;
        d["e_f"] = r.e_f;
        d["e_t"] = r.e_t;
        d["e_f_loc"] = r.e_f_loc;
        d["e_tau"] = r.e_tau;
        return d;
      },
      py::arg("spec"), py::arg("base") = "2", py::arg("unconstrained") = false);

  m.def(
      "fidelity",
      [](const ResourceSpec& spec, std::optional<double> gain, int sender, int receiver, bool unconstrained) {
        const auto r = fidelity_network(spec, {sender, receiver, gain}, parse_mode(unconstrained));
        py::dict d;
        d["fidelity"] = r.fidelity;
        d["var_x_rel"] = r.var_x_rel;
        d["var_p_tot"] = r.var_p_tot;
        d["gain"] = r.gain_used;
        return d;
      },
      py::arg("spec"), py::arg("gain") = py::none(), py::arg("sender") = 0, py::arg("receiver") = 1,
      py::arg("unconstrained") = false);
  m.def("fidelity_from_variances", &fidelity_from_variances, py::arg("var_x_rel"), py::arg("var_p_tot"));

  m.def("g_opt", &g_N_opt, py::arg("modes"), py::arg("n1"), py::arg("n2"), py::arg("rbar"));
  m.def("d_opt", &d_N_opt, py::arg("modes"), py::arg("n1"), py::arg("n2"), py::arg("rbar"));
  m.def(
      "optimal_fidelity",
      [](const ResourceFamily& f, bool unconstrained) { return optimum_dict(optimal_fidelity(f, parse_mode(unconstrained))); },
      py::arg("family"), py::arg("unconstrained") = false);
  m.def(
      "numerical_optimum",
      [](const ResourceFamily& f, double d_lo, double d_hi) { return optimum_dict(numerical_optimum(f, {d_lo, d_hi})); },
      py::arg("family"), py::arg("d_lo"), py::arg("d_hi"));
  m.def(
      "worst_case",
      [](const ResourceFamily& f) {
        const auto w = worst_case(f);
        py::dict d;
        d["d_worst"] = w.d_worst;
        d["fidelity_worst"] = w.fidelity_worst;
        d["r1_zero"] = w.r1_zero;
        return d;
      },
      py::arg("family"));
  m.def("d_unbiased", [](const ResourceFamily& f) { return d_unbiased(f).d; }, py::arg("family"));

  m.def(
      "localize",
      [](const Matrix& s, int k, int l) { return localize(as_cm(s), {k, l}).cm.matrix(); }, py::arg("sigma"),
      py::arg("k") = 0, py::arg("l") = 1);
  m.def(
      "localizable_eta", [](const ResourceSpec& spec, bool unconstrained) { return localizable_eta(spec, parse_mode(unconstrained)); },
      py::arg("spec"), py::arg("unconstrained") = false);

  m.def(
      "simulate",
      [](const ResourceSpec& spec, std::uint64_t samples, std::uint64_t seed, std::optional<double> gain) {
        McConfig c;
        c.spec = spec;
        c.samples = samples;
        c.seed = seed;
        c.params.gain = gain;
        McEstimate e;
        {
          py::gil_scoped_release release;
          e = simulate(c);
        }
        py::dict d;
        d["fidelity_mean"] = e.fidelity_mean;
        d["std_error"] = e.std_error;
        d["var_x_rel"] = e.var_x_rel_hat;
        d["var_p_tot"] = e.var_p_tot_hat;
        return d;
      },
      py::arg("spec"), py::arg("samples") = 1'000'000, py::arg("seed") = 0, py::arg("gain") = py::none());

  m.def(
      "sweep_csv",
      [](std::vector<int> n_list, double n1, double n2, double rbar_min, double rbar_max, int steps) {
        cli::SweepConfig c;
        c.n_list = std::move(n_list);
        c.n1 = n1;
        c.n2 = n2;
        c.rbar_min = rbar_min;
        c.rbar_max = rbar_max;
        c.steps = steps;
        py::gil_scoped_release release;
        return cli::sweep_csv(cli::sweep(c));
      },
      py::arg("n_list") = std::vector<int>{2, 3, 4, 8, 20, 50}, py::arg("n1") = 1.0, py::arg("n2") = 1.0,
      py::arg("rbar_min") = 0.0, py::arg("rbar_max") = 2.0, py::arg("steps") = 41);
}
