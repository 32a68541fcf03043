#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stirap/basis.hpp"
#include "stirap/dynamics.hpp"
#include "stirap/errors.hpp"
#include "stirap/io.hpp"
#include "stirap/model.hpp"
#include "stirap/sweeps.hpp"
#include "stirap/version.hpp"

namespace py = pybind11;
using namespace stirap;

namespace {

using PopulationArray = Eigen::Matrix<double, Eigen::Dynamic, kDim, Eigen::RowMajor>;

Eigen::VectorXd to_array(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

py::dict row_dict(const SweepResult& r, const SweepRow& row) {
    py::dict d;
    for (std::size_t a = 0; a < r.axis_names.size(); ++a) d[py::str(r.axis_names[a])] = row.parameters[a];
    d["F"] = row.fidelity;
    d["P1"] = row.P1;
    d["P11"] = row.P11;
    d["P12"] = row.P12;
    d["maxPe"] = row.max_Pe;
    d["wall_ms"] = row.wall_ms;
    d["mu"] = row.mu ? py::cast(*row.mu) : py::none();
    d["status"] = row.status;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Atom-BEC three-dimensional entanglement by adiabatic passage";
    m.attr("__version__") = kVersion;
    m.attr("DIM") = kDim;

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ParamError>(m, "ParamError", base.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<IntegrationError>(m, "IntegrationError", base.ptr());
    py::register_exception<NumericalHealthError>(m, "NumericalHealthError", base.ptr());
    py::register_exception<BasisError>(m, "BasisError", base.ptr());

    py::class_<SystemParams>(m, "SystemParams")
        .def(py::init<>())
        .def_static("reference", &SystemParams::reference)
        .def_readwrite("omega0", &SystemParams::omega0)
        .def_readwrite("gA", &SystemParams::gA)
        .def_readwrite("gB", &SystemParams::gB)
        .def_readwrite("nu", &SystemParams::nu)
        .def_readwrite("N", &SystemParams::N)
        .def_readwrite("tau", &SystemParams::tau)
        .def_readwrite("t0", &SystemParams::t0)
        .def_readwrite("kappa_cav", &SystemParams::kappa_cav)
        .def_readwrite("kappa_fib", &SystemParams::kappa_fib)
        .def_readwrite("gamma", &SystemParams::gamma)
        .def_readwrite("branching_A", &SystemParams::branching_A)
        .def_readwrite("branching_B", &SystemParams::branching_B)
        .def_readwrite("apply_overlap", &SystemParams::apply_overlap)
        .def_readwrite("compensate_drive", &SystemParams::compensate_drive)
        .def("validate", &SystemParams::validate)
        .def("gB_eff", &SystemParams::gB_eff)
        .def("to_json", [](const SystemParams& p) { return to_json(p).dump(); })
        .def("__repr__", [](const SystemParams& p) { return "SystemParams(" + to_json(p).dump() + ")"; });

    py::class_<IntegratorConfig>(m, "IntegratorConfig")
        .def(py::init<>())
        .def_readwrite("t_start", &IntegratorConfig::t_start)
        .def_readwrite("t_end", &IntegratorConfig::t_end)
        .def_readwrite("abs_tol", &IntegratorConfig::abs_tol)
        .def_readwrite("rel_tol", &IntegratorConfig::rel_tol)
        .def_readwrite("max_step", &IntegratorConfig::max_step)
        .def_readwrite("sample_interval", &IntegratorConfig::sample_interval)
        .def_readwrite("record_states", &IntegratorConfig::record_states)
        .def_property(
            "method", [](const IntegratorConfig& c) { return to_string(c.method); },
            [](IntegratorConfig& c, const std::string& s) { c.method = integration_method_from_string(s); })
        .def("validate", &IntegratorConfig::validate)
        .def("sample_times", &IntegratorConfig::sample_times);

    py::class_<GaussianLobe>(m, "GaussianLobe")
        .def(py::init([](double amplitude, double center, double width) { return GaussianLobe{amplitude, center, width}; }),
             py::arg("amplitude"), py::arg("center"), py::arg("width"))
        .def_readwrite("amplitude", &GaussianLobe::amplitude)
        .def_readwrite("center", &GaussianLobe::center)
        .def_readwrite("width", &GaussianLobe::width);

    py::class_<PulseSchedule>(m, "PulseSchedule")
        .def("omega_A", [](const PulseSchedule& s, double t) { return s.omega_A(t); })
        .def("omega_B", [](const PulseSchedule& s, double t) { return s.omega_B(t); })
        .def_readonly("description", &PulseSchedule::description);

    m.def("default_schedule", &default_schedule, py::arg("params"));
    m.def("lobe_schedule", &lobe_schedule, py::arg("lobes_A"), py::arg("lobes_B"));
    m.def("pulse_omega_A", &pulse_omega_A, py::arg("t"), py::arg("params"));
    m.def("pulse_omega_B", &pulse_omega_B, py::arg("t"), py::arg("params"));
    m.def("overlap_mu", &overlap_mu, py::arg("N"));

    m.def("label_name", &label_name, py::arg("index"));
    m.def("excitation_numbers", [] {
        std::vector<int> out;
        for (int i = 0; i < kDim; ++i) out.push_back(excitation_number(label_of(i)));
        return out;
    });
    m.def("describe_state", [](int i) { return describe(label_of(i)); }, py::arg("index"));

    m.def("hamiltonian", &hamiltonian, py::arg("t"), py::arg("params"), py::arg("schedule"));
    m.def(
        "dark_state",
        [](double t, const SystemParams& p, const PulseSchedule& s) {
            const DarkState d = dark_state(t, p, s);
            return py::make_tuple(Vector(d.amplitudes.amplitudes()), d.normalization);
        },
        py::arg("t"), py::arg("params"), py::arg("schedule"),
        "Returns (amplitudes, K) of the zero-energy state connected to phi1.");
    m.def("target_state", [] { return Vector(target_state().amplitudes()); });
    m.def("collapse_operators", [](const SystemParams& p) {
        py::list out;
        for (const auto& op : collapse_operators(p)) out.append(py::make_tuple(op.channel_label, op.matrix));
        return out;
    });

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("mixed", &Trajectory::mixed)
        .def_property_readonly("times", [](const Trajectory& t) { return to_array(t.times); })
        .def_property_readonly("populations",
                               [](const Trajectory& t) {
                                   PopulationArray a(static_cast<Eigen::Index>(t.populations.size()), kDim);
                                   for (std::size_t k = 0; k < t.populations.size(); ++k)
                                       for (int i = 0; i < kDim; ++i)
                                           a(static_cast<Eigen::Index>(k), i) = t.populations[k][static_cast<std::size_t>(i)];
                                   return a;
                               })
        .def_property_readonly("error_probability", [](const Trajectory& t) { return to_array(t.error_probability); })
        .def_property_readonly("fidelity", [](const Trajectory& t) { return to_array(t.fidelity); })
        .def_property_readonly("norm_or_trace", [](const Trajectory& t) { return to_array(t.norm_or_trace); })
        .def_property_readonly("excitation", [](const Trajectory& t) { return to_array(t.excitation); })
        .def_property_readonly("min_eigenvalue", [](const Trajectory& t) { return to_array(t.min_eigenvalue); })
        .def_readonly("accepted_steps", &Trajectory::accepted_steps)
        .def("to_csv", [](const Trajectory& t) { return trajectory_csv(t); })
        .def("__len__", &Trajectory::size);

    m.def(
        "evolve_schrodinger",
        [](const SystemParams& p, const PulseSchedule& s, IntegratorConfig cfg, const Vector& psi0) {
            cfg.record_states = false;
            py::gil_scoped_release release;
            return evolve_schrodinger(p, s, cfg, StateVector(psi0));
        },
        py::arg("params"), py::arg("schedule"), py::arg("config"), py::arg("psi0"));
    m.def(
        "evolve_lindblad",
        [](const SystemParams& p, const PulseSchedule& s, IntegratorConfig cfg, const Matrix& rho0) {
            cfg.record_states = false;
            py::gil_scoped_release release;
            return evolve_lindblad(p, s, cfg, DensityMatrix(rho0));
        },
        py::arg("params"), py::arg("schedule"), py::arg("config"), py::arg("rho0"));

    m.def("fidelity", [](const Vector& psi, const Vector& target) { return fidelity(StateVector(psi), StateVector(target)); },
          py::arg("state"), py::arg("target"));
    m.def("fidelity", [](const Matrix& rho, const Vector& target) { return fidelity(DensityMatrix(rho), StateVector(target)); },
          py::arg("state"), py::arg("target"));
    m.def(
        "error_probability",
        [](const Vector& psi, const SystemParams& p, const PulseSchedule& s, double t) {
            return error_probability(StateVector(psi), p, s, t);
        },
        py::arg("psi"), py::arg("params"), py::arg("schedule"), py::arg("t"));

    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("axis_names", &SweepResult::axis_names)
        .def_property_readonly("rows",
                               [](const SweepResult& r) {
                                   py::list out;
                                   for (const auto& row : r.rows) out.append(row_dict(r, row));
                                   return out;
                               })
        .def("to_csv", [](const SweepResult& r, bool timing) { return sweep_csv(r, SweepCsvOptions{timing}); },
             py::arg("timing") = true)
        .def("to_json", [](const SweepResult& r) { return to_json(r).dump(); })
        .def("__len__", [](const SweepResult& r) { return r.rows.size(); });

    m.def(
        "sweep_decay",
        [](const std::vector<double>& gammas, const std::vector<double>& kappas, const SystemParams& p,
           const IntegratorConfig& cfg, int workers) {
            py::gil_scoped_release release;
            return sweep_decay(gammas, kappas, p, cfg, workers);
        },
        py::arg("gammas"), py::arg("kappas"), py::arg("params"), py::arg("config") = IntegratorConfig{},
        py::arg("workers") = 1);
    m.def(
        "sweep_atom_number",
        [](const std::vector<std::int64_t>& Ns, const SystemParams& p, const IntegratorConfig& cfg, int workers) {
            py::gil_scoped_release release;
            return sweep_atom_number(Ns, p, cfg, workers);
        },
        py::arg("Ns"), py::arg("params"), py::arg("config") = IntegratorConfig{}, py::arg("workers") = 1);
    m.def("default_atom_grid", &default_atom_grid);
    m.def("atom_sweep_base", &atom_sweep_base);
}
