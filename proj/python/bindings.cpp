// Python bindings: dense numpy arrays in and out (complex128 for SPDMs and
// Hamiltonians, float64 for rates, targets and interaction matrices).

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spdmlab/checks.hpp"
#include "spdmlab/dynamics.hpp"
#include "spdmlab/errors.hpp"
#include "spdmlab/model.hpp"
#include "spdmlab/oracle.hpp"
#include "spdmlab/resetting.hpp"
#include "spdmlab/steady.hpp"
#include "spdmlab/twosite.hpp"

namespace py = pybind11;
using namespace spdm;

namespace {

BathSpec make_bath(const RealVector& gamma, const RealVector& f) {
  BathSpec b{gamma, f};
  b.validate();
  return b;
}

InteractionSpec make_interaction(const std::optional<RealMatrix>& u, Index n) {
  return u ? InteractionSpec(*u) : InteractionSpec::zero(n);
}

IntegratorSpec make_spec(const std::string& method, double dt, double t_final,
                         std::size_t sample_every, bool clip) {
  IntegratorSpec s;
  s.method = parse_method(method);
  s.dt = dt;
  s.t_final = t_final;
  s.sample_every = sample_every;
  s.clip = clip;
  s.validate();
  return s;
}

FermiBasis parse_basis(const std::string& name) {
  if (name == "site") return FermiBasis::site;
  if (name == "env_eigenbasis") return FermiBasis::env_eigenbasis;
  throw ConfigError("basis must be site or env_eigenbasis");
}

py::dict check_to_dict(const checks::CheckResult& r) {
  py::dict d;
  d["name"] = r.name;
  d["value"] = r.value;
  d["bound"] = r.bound;
  d["pass"] = r.pass;
  d["detail"] = r.detail;
  return d;
}

}  // namespace

PYBIND11_MODULE(_spdmlab, m) {
  m.doc() = "SPDM dynamics of fermionic lattices under resetting and GKLS baths";

  auto base = py::register_exception<Error>(m, "SpdmError", PyExc_RuntimeError);
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
  py::register_exception<SingularError>(m, "SingularError", base.ptr());
  py::register_exception<DivergenceError>(m, "DivergenceError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

  // linalg / model
  m.def("hermitian_eig", [](const ComplexMatrix& h) {
    const HermitianEig e = hermitian_eig(h);
    return py::make_tuple(e.eigenvalues, e.eigenvectors);
  }, py::arg("h"), "Ascending eigenvalues and orthonormal eigenvectors of a Hermitian matrix.");
  m.def("propagator", &propagator, py::arg("m"), py::arg("tau"), "exp(-i M tau)");
  m.def("ring_hamiltonian",
        [](Index n, double hopping, std::optional<std::vector<double>> onsite, bool periodic) {
          RingSpec r;
          r.n = n;
          r.hopping = hopping;
          r.onsite = onsite ? *onsite : std::vector<double>(static_cast<std::size_t>(n), 0.0);
          r.periodic = periodic;
          return build_ring_hamiltonian(r);
        },
        py::arg("n"), py::arg("hopping") = 1.0, py::arg("onsite") = py::none(),
        py::arg("periodic") = true);
  m.def("fermi_dirac_target",
        [](const ComplexMatrix& m_ee, double beta, double mu, const std::string& basis) {
          ThermalTarget t;
          t.beta = beta;
          t.mu = mu;
          t.basis = parse_basis(basis);
          return fermi_dirac_target(m_ee, t);
        },
        py::arg("m_ee"), py::arg("beta") = 1.0, py::arg("mu") = 0.0, py::arg("basis") = "site");
  m.def("hartree_potential",
        [](const ComplexMatrix& v, const RealMatrix& u) {
          return hartree_potential(v, InteractionSpec(u));
        },
        py::arg("v"), py::arg("u"));

  // dynamics
  m.def("rhs_affine",
        [](const ComplexMatrix& v, const ComplexMatrix& mm, const RealVector& gamma,
           const RealVector& f) { return rhs_affine(v, mm, make_bath(gamma, f)); },
        py::arg("v"), py::arg("m"), py::arg("gamma"), py::arg("f"));
  m.def("rhs_hartree",
        [](const ComplexMatrix& v, const ComplexMatrix& mm, const RealMatrix& u,
           const RealVector& gamma, const RealVector& f) {
          return rhs_hartree(v, mm, InteractionSpec(u), make_bath(gamma, f));
        },
        py::arg("v"), py::arg("m"), py::arg("u"), py::arg("gamma"), py::arg("f"));
  m.def("project_physical", &project_physical, py::arg("v"),
        "Hermitize and clip the spectrum to [0, 1].");
  m.def("integrate",
        [](const ComplexMatrix& mm, const RealVector& gamma, const RealVector& f,
           const ComplexMatrix& v0, std::optional<RealMatrix> u, const std::string& method,
           double dt, double t_final, std::size_t sample_every, bool clip) {
          const BathSpec bath = make_bath(gamma, f);
          const InteractionSpec inter = make_interaction(u, mm.rows());
          const IntegratorSpec spec = make_spec(method, dt, t_final, sample_every, clip);
          Trajectory<ComplexMatrix> traj;
          {
            py::gil_scoped_release release;
            traj = integrate(
                [&](const ComplexMatrix& v) { return rhs_hartree(v, mm, inter, bath); }, v0, spec);
          }
          return py::make_tuple(traj.times, traj.records);
        },
        py::arg("m"), py::arg("gamma"), py::arg("f"), py::arg("v0"), py::arg("u") = py::none(),
        py::arg("method") = "rk4", py::arg("dt") = 1e-2, py::arg("t_final") = 1.0,
        py::arg("sample_every") = 1, py::arg("clip") = true,
        "Returns (times, snapshots) of the Hartree-shifted SPDM flow.");

  // resetting
  m.def("ri_reset",
        [](const ComplexMatrix& v, const ComplexMatrix& f_e, Index n_s) {
          return ri_reset(v, f_e, Partition::make(n_s, v.rows() - n_s));
        },
        py::arg("v"), py::arg("f_e"), py::arg("n_s"));
  m.def("subsystem_affine_map",
        [](const ComplexMatrix& mm, double tau, const ComplexMatrix& f_e, Index n_s) {
          const AffineMap a = subsystem_affine_map(mm, tau, f_e, Partition::make(n_s, mm.rows() - n_s));
          return py::make_tuple(a.a, a.b);
        },
        py::arg("m"), py::arg("tau"), py::arg("f_e"), py::arg("n_s"),
        "(A, B) with V_S -> A V_S A^dagger + B.");
  m.def("run_protocol",
        [](const ComplexMatrix& mm, const ComplexMatrix& f_e, Index n_s, const ComplexMatrix& v0,
           double tau, std::size_t n_strokes, const std::string& kind,
           std::optional<RealMatrix> u) {
          ResetProtocol p;
          p.kind = parse_reset_kind(kind);
          p.tau = tau;
          p.n_strokes = n_strokes;
          const InteractionSpec inter = make_interaction(u, mm.rows());
          const ProtocolRun run =
              run_protocol(mm, inter, f_e, Partition::make(n_s, mm.rows() - n_s), p, v0);
          std::vector<double> t, n;
          for (const auto& r : run.records) {
            t.push_back(r.time);
            n.push_back(r.n_s_avg);
          }
          py::dict d;
          d["t"] = t;
          d["n_s_avg"] = n;
          d["final_state"] = run.final_state;
          d["clipped_strokes"] = run.clipped_strokes;
          return d;
        },
        py::arg("m"), py::arg("f_e"), py::arg("n_s"), py::arg("v0"), py::arg("tau") = 0.5,
        py::arg("n_strokes") = 1, py::arg("kind") = "ri", py::arg("u") = py::none());

  // steady
  m.def("steady_affine",
        [](const ComplexMatrix& mm, const RealVector& gamma, const RealVector& f) {
          return steady_affine(mm, make_bath(gamma, f));
        },
        py::arg("m"), py::arg("gamma"), py::arg("f"));
  m.def("steady_ri",
        [](const ComplexMatrix& a, const ComplexMatrix& b) { return steady_ri(AffineMap{a, b}); },
        py::arg("a"), py::arg("b"));
  m.def("steady_hartree",
        [](const ComplexMatrix& mm, const RealMatrix& u, const RealVector& gamma,
           const RealVector& f, double eta, double tol, std::size_t max_iter) {
          FixedPointSpec s;
          s.eta = eta;
          s.tol = tol;
          s.max_iter = max_iter;
          const HartreeFixedPoint fp = steady_hartree(mm, InteractionSpec(u), make_bath(gamma, f), s);
          py::dict d;
          d["v"] = fp.v;
          d["iterations"] = fp.iterations;
          d["residual"] = fp.residual;
          return d;
        },
        py::arg("m"), py::arg("u"), py::arg("gamma"), py::arg("f"), py::arg("eta") = 0.5,
        py::arg("tol") = 1e-10, py::arg("max_iter") = 500);

  // two-site model
  py::class_<twosite::Params>(m, "TwoSiteParams")
      .def(py::init<>())
      .def_readwrite("eps1", &twosite::Params::eps1)
      .def_readwrite("eps2", &twosite::Params::eps2)
      .def_readwrite("hopping", &twosite::Params::hopping)
      .def_readwrite("gamma1", &twosite::Params::gamma1)
      .def_readwrite("gamma2", &twosite::Params::gamma2)
      .def_readwrite("f1", &twosite::Params::f1)
      .def_readwrite("f2", &twosite::Params::f2)
      .def_readwrite("u", &twosite::Params::u)
      .def("hamiltonian", &twosite::Params::hamiltonian)
      .def_static("resonant", &twosite::resonant_params)
      .def("__repr__", [](const twosite::Params& p) {
        return "TwoSiteParams(eps1=" + std::to_string(p.eps1) + ", eps2=" + std::to_string(p.eps2) +
               ", hopping=" + std::to_string(p.hopping) + ", u=" + std::to_string(p.u) + ")";
      });
  m.def("two_site_run",
        [](const twosite::Params& p, double dt, double t_final, std::size_t sample_every,
           const std::string& method) {
          const twosite::Run run = twosite::run(p, twosite::default_initial_state(),
                                                make_spec(method, dt, t_final, sample_every, true));
          std::vector<double> t, n1, n2;
          for (const auto& s : run.samples) {
            t.push_back(s.t);
            n1.push_back(s.n1);
            n2.push_back(s.n2);
          }
          py::dict d;
          d["t"] = t;
          d["n1"] = n1;
          d["n2"] = n2;
          return d;
        },
        py::arg("params"), py::arg("dt") = 1e-2, py::arg("t_final") = 200.0,
        py::arg("sample_every") = 10, py::arg("method") = "rk4",
        "Trajectory from the default initial state.");
  m.def("two_site_sweep_u",
        [](const twosite::Params& p, const std::vector<double>& grid, double dt, double t_final,
           unsigned jobs) {
          std::vector<twosite::SteadyPoint> pts;
          {
            py::gil_scoped_release release;
            pts = twosite::sweep_u(p, grid, twosite::default_initial_state(),
                                   make_spec("rk4", dt, t_final, 1000, true), {}, jobs);
          }
          std::vector<double> n1, n2;
          for (const auto& s : pts) {
            n1.push_back(s.n1);
            n2.push_back(s.n2);
          }
          return py::make_tuple(n1, n2);
        },
        py::arg("params"), py::arg("u_grid"), py::arg("dt") = 1e-2, py::arg("t_final") = 200.0,
        py::arg("jobs") = 1, "(n1ss, n2ss) over the U grid.");
  m.def("two_site_delta_n1",
        [](const twosite::Params& p, const std::vector<double>& ugrid,
           const std::vector<double>& f2grid, double dt, double t_final, unsigned jobs) {
          std::vector<twosite::DeltaPoint> pts;
          {
            py::gil_scoped_release release;
            pts = twosite::sweep_delta_n1(p, ugrid, f2grid, twosite::default_initial_state(),
                                          make_spec("rk4", dt, t_final, 1000, true), jobs);
          }
          RealMatrix out(static_cast<Index>(ugrid.size()), static_cast<Index>(f2grid.size()));
          for (std::size_t k = 0; k < pts.size(); ++k) {
            out(static_cast<Index>(k / f2grid.size()), static_cast<Index>(k % f2grid.size())) =
                pts[k].delta_n1;
          }
          return out;
        },
        py::arg("params"), py::arg("u_grid"), py::arg("f2_grid"), py::arg("dt") = 1e-2,
        py::arg("t_final") = 200.0, py::arg("jobs") = 1,
        "Delta n1ss as a (len(u_grid), len(f2_grid)) array.");

  // exact reference
  m.def("exact_embedding_deviation",
        [](const ComplexMatrix& mm, const RealVector& gamma, const RealVector& f,
           const ComplexMatrix& v0, double t_final, double dt) {
          const oracle::FockOperators ops(mm.rows());
          return oracle::verify_embedding(mm, make_bath(gamma, f), oracle::gaussian_state(v0, ops),
                                          t_final, dt)
              .max_deviation;
        },
        py::arg("m"), py::arg("gamma"), py::arg("f"), py::arg("v0"), py::arg("t_final") = 5.0,
        py::arg("dt") = 1e-3,
        "Max SPDM deviation between the many-body master equation and the SPDM flow (N <= 4).");

  m.def("verify", [](std::uint64_t seed) {
    py::list out;
    for (const auto& r : checks::verify_suite(seed)) out.append(check_to_dict(r));
    return out;
  }, py::arg("seed") = 12345, "Runs the fast verification suite; one dict per check.");
}
