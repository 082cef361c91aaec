#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qeac/qeac.hpp"

namespace py = pybind11;
using namespace qeac;

namespace {

py::int_ to_py(const BigInt& n) {
  return py::int_(py::module_::import("builtins").attr("int")(n.str()));
}

Geometry make_geometry(const std::vector<std::array<double, 3>>& positions, double omega0, double v0) {
  Geometry g{positions, omega0, v0};
  validate(g);
  return g;
}

LambParams make_lamb(const std::string& model, double delta0, double gamma0) {
  LambParams p{LambModel::zero, delta0, gamma0};
  if (model == "collective") p.model = LambModel::collective;
  else if (model == "cos_kernel") p.model = LambModel::cos_kernel;
  else if (model != "zero") throw InvalidArgument("lamb must be zero, collective or cos_kernel");
  return p;
}

py::dict result_to_dict(const EvolutionResult& r) {
  py::dict d;
  d["times"] = r.times;
  d["fidelity"] = r.fidelity;
  d["trace"] = r.trace;
  d["purity"] = r.purity;
  d["excitation"] = r.excitation;
  d["min_eigenvalue"] = r.min_eigenvalue;
  if (!r.snapshots.empty()) d["snapshots"] = r.snapshots;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Collective dark-state codes and correlated amplitude damping";

  static py::exception<Error> error(m, "QeacError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def("irrep_multiplicities", [](int L) {
    py::dict out;
    for (const auto& [two_j, n] : irrep_multiplicities(L).multiplicities) out[py::int_(two_j)] = to_py(n);
    return out;
  }, py::arg("L"), "Map 2j -> number of spin-j irreps in L qubits.");
  m.def("dark_count", [](int L) { return to_py(dark_count(L)); }, py::arg("L"));
  m.def("efficiency", &efficiency, py::arg("L"));
  m.def("efficiency_asymptote", &efficiency_asymptote, py::arg("L"));

  m.def("collective_operators", [](int L) {
    const CollectiveOperators ops = collective_operators(L);
    py::dict d;
    d["s_plus"] = ops.s_plus;
    d["s_minus"] = ops.s_minus;
    d["s_z"] = ops.s_z;
    d["s_squared"] = ops.s_squared;
    return d;
  }, py::arg("L"));

  m.def("compute_dark_basis", [](int L) {
    const DarkBasis b = compute_dark_basis(L);
    std::vector<std::pair<int, int>> labels;
    for (const auto& l : b.labels) labels.emplace_back(l.two_j, l.copy);
    return py::make_tuple(b.vectors, labels);
  }, py::arg("L"), "Returns (vectors, [(two_j, copy), ...]); columns are dark states.");
  m.def("paper_codewords", [](int L) { return paper_codewords(L).codewords; }, py::arg("L"));
  m.def("dark_residual", &dark_residual, py::arg("state"), py::arg("L"));
  m.def("logical_encode", py::overload_cast<int, const CVector&>(&logical_encode), py::arg("L"), py::arg("logical"));
  m.def("ket", [](const std::string& bits) { return ket(bits); }, py::arg("bits"));

  m.def("encode_two_bit", &encode_two_bit, py::arg("c0"), py::arg("c1"));
  m.def("decode_two_bit", [](const CVector& state) {
    const DecodedQubit d = decode_two_bit(state);
    return py::make_tuple(d.c0, d.c1, d.ancilla_residual);
  }, py::arg("state"), "Returns (c0, c1, ancilla_residual).");
  m.def("encode_unitary", &encode_unitary);

  py::class_<DampingModel>(m, "DampingModel")
      .def_readonly("L", &DampingModel::L)
      .def_readonly("gamma", &DampingModel::gamma)
      .def_readonly("delta", &DampingModel::delta)
      .def_property_readonly("gamma0", &DampingModel::gamma0);
  m.def("collective_model", &collective_model, py::arg("L"), py::arg("gamma0"), py::arg("delta0") = 0.0);
  m.def("independent_model", &independent_model, py::arg("L"), py::arg("gamma0"), py::arg("delta0") = 0.0);
  m.def("correlated_model",
        [](const std::vector<std::array<double, 3>>& positions, double omega0, double v0, double gamma0,
           const std::string& lamb, double delta0) {
          return correlated_model(make_geometry(positions, omega0, v0), gamma0, make_lamb(lamb, delta0, gamma0));
        },
        py::arg("positions"), py::arg("omega0"), py::arg("v0"), py::arg("gamma0"), py::arg("lamb") = "zero",
        py::arg("delta0") = 0.0);
  m.def("custom_model", &custom_model, py::arg("gamma"), py::arg("delta"));
  m.def("gamma_matrix",
        [](const std::vector<std::array<double, 3>>& positions, double omega0, double v0, double gamma0) {
          return gamma_matrix(make_geometry(positions, omega0, v0), gamma0);
        },
        py::arg("positions"), py::arg("omega0"), py::arg("v0"), py::arg("gamma0"));
  m.def("collectivity_ratio",
        [](const std::vector<std::array<double, 3>>& positions, double omega0, double v0) {
          return collectivity_ratio(make_geometry(positions, omega0, v0));
        },
        py::arg("positions"), py::arg("omega0"), py::arg("v0"));

  m.def("lindblad_rhs", [](const DampingModel& model, const CMatrix& rho) {
    return lindblad_generator(model, collective_operators(model.L))(0.0, rho);
  }, py::arg("model"), py::arg("rho"));
  m.def("evolve_master",
        [](const CMatrix& rho0, const DampingModel& model, const std::vector<double>& t_grid, double dt,
           const CVector& reference, bool snapshots) {
          py::gil_scoped_release release;
          EvolutionResult r = evolve_master(rho0, model, t_grid, dt, reference, snapshots);
          py::gil_scoped_acquire acquire;
          return result_to_dict(r);
        },
        py::arg("rho0"), py::arg("model"), py::arg("t_grid"), py::arg("dt"), py::arg("reference"),
        py::arg("snapshots") = false);
  m.def("ensemble_average",
        [](const CVector& psi0, const DampingModel& model, double dt, double t_max, int samples, int n_traj,
           std::uint64_t seed, int workers) {
          const JumpChannels channels = jump_channels(model, collective_operators(model.L));
          TrajectoryConfig config{dt, t_max, samples, n_traj, seed};
          EnsembleResult r;
          {
            py::gil_scoped_release release;
            r = ensemble_average(psi0, channels, config, workers);
          }
          return py::make_tuple(r.times, r.rho, r.total_jumps);
        },
        py::arg("psi0"), py::arg("model"), py::arg("dt") = 1e-3, py::arg("t_max") = 1.0, py::arg("samples") = 11,
        py::arg("n_traj") = 1, py::arg("seed") = 0, py::arg("workers") = 1,
        "Returns (times, [rho, ...], total_jumps).");
  m.def("trace_distance", &trace_distance, py::arg("a"), py::arg("b"));
}
