// Python bindings for the haptosim core: grid operators, the IMEX stepper,
// the stability-constant chain, envelopes, bound verification, experiments.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hapto/config.hpp"
#include "hapto/constants.hpp"
#include "hapto/envelope.hpp"
#include "hapto/experiments.hpp"
#include "hapto/io.hpp"
#include "hapto/linsolve.hpp"
#include "hapto/operators.hpp"
#include "hapto/phi.hpp"

namespace py = pybind11;
using namespace hapto;

namespace {

py::array_t<double> field_to_numpy(const Field& f) {
    const Grid& g = f.grid();
    py::array_t<double> out = (g.dim == 1)
                                  ? py::array_t<double>({g.nx})
                                  : py::array_t<double>({g.ny, g.nx});
    std::copy(f.values().begin(), f.values().end(), out.mutable_data());
    return out;
}

Field field_from_numpy(const Grid& g, py::array_t<double, py::array::c_style | py::array::forcecast> a) {
    if (a.size() != g.cells()) throw std::invalid_argument("array size does not match grid");
    std::vector<double> values(a.data(), a.data() + a.size());
    return Field(g, std::move(values));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Simulator and bound-verification harness for the four-component "
              "haptotaxis model of oncolytic virotherapy";

    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

    py::class_<Grid>(m, "Grid")
        .def_static("interval", &Grid::interval, py::arg("nx"), py::arg("lx") = 1.0)
        .def_static("rectangle", &Grid::rectangle, py::arg("nx"), py::arg("ny"),
                    py::arg("lx") = 1.0, py::arg("ly") = 1.0)
        .def_readonly("dim", &Grid::dim)
        .def_readonly("nx", &Grid::nx)
        .def_readonly("ny", &Grid::ny)
        .def_readonly("lx", &Grid::lx)
        .def_readonly("ly", &Grid::ly)
        .def_readonly("dx", &Grid::dx)
        .def_readonly("dy", &Grid::dy)
        .def_property_readonly("cells", &Grid::cells)
        .def("cell_volume", &Grid::cell_volume)
        .def("domain_measure", &Grid::domain_measure);

    py::class_<Field>(m, "Field")
        .def(py::init([](const Grid& g, double fill) { return Field(g, fill); }), py::arg("grid"),
             py::arg("fill") = 0.0)
        .def(py::init(&field_from_numpy), py::arg("grid"), py::arg("values"))
        .def_property_readonly("grid", &Field::grid)
        .def("numpy", &field_to_numpy);

    py::class_<FieldNorms>(m, "FieldNorms")
        .def_readonly("min", &FieldNorms::min)
        .def_readonly("max", &FieldNorms::max)
        .def_readonly("sup", &FieldNorms::sup)
        .def_readonly("l1", &FieldNorms::l1)
        .def_readonly("l2", &FieldNorms::l2);

    m.def("laplacian", &laplacian, py::arg("f"));
    m.def("haptotaxis_divergence", &haptotaxis_divergence, py::arg("u"), py::arg("v"));
    m.def("integrate", &integrate, py::arg("f"));
    m.def("grad_quartic_norm", &grad_quartic_norm, py::arg("v"));
    m.def("field_norms", &field_norms, py::arg("f"));

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init([](double beta, double rho, double d_w, double d_z) {
                 ModelParams p{beta, rho, d_w, d_z};
                 p.validate();
                 return p;
             }),
             py::arg("beta") = 2.0, py::arg("rho") = 0.0, py::arg("d_w") = 1.0,
             py::arg("d_z") = 1.0)
        .def_readwrite("beta", &ModelParams::beta)
        .def_readwrite("rho", &ModelParams::rho)
        .def_readwrite("d_w", &ModelParams::d_w)
        .def_readwrite("d_z", &ModelParams::d_z);

    py::class_<StepControl>(m, "StepControl")
        .def(py::init<>())
        .def_readwrite("dt_max", &StepControl::dt_max)
        .def_readwrite("cfl", &StepControl::cfl)
        .def_readwrite("lin_tol", &StepControl::lin_tol)
        .def_readwrite("t_end", &StepControl::t_end)
        .def_readwrite("output_every", &StepControl::output_every);

    py::class_<InitSpec>(m, "InitSpec")
        .def(py::init<>())
        .def_readwrite("gamma", &InitSpec::gamma)
        .def_readwrite("amp_u", &InitSpec::amp_u)
        .def_readwrite("amp_v", &InitSpec::amp_v)
        .def_readwrite("amp_w", &InitSpec::amp_w)
        .def_readwrite("amp_z", &InitSpec::amp_z)
        .def_readwrite("mode_kx", &InitSpec::mode_kx)
        .def_readwrite("mode_ky", &InitSpec::mode_ky)
        .def_readwrite("seed", &InitSpec::seed)
        .def_readwrite("homogeneous", &InitSpec::homogeneous);

    py::class_<State>(m, "State")
        .def_readonly("t", &State::t)
        .def_readonly("u", &State::u)
        .def_readonly("v", &State::v)
        .def_readonly("w", &State::w)
        .def_readonly("z", &State::z);

    py::class_<DiagRow>(m, "DiagRow")
        .def_readonly("t", &DiagRow::t)
        .def_readonly("min_u", &DiagRow::min_u)
        .def_readonly("max_u", &DiagRow::max_u)
        .def_readonly("sup_u", &DiagRow::sup_u)
        .def_readonly("min_v", &DiagRow::min_v)
        .def_readonly("sup_v", &DiagRow::sup_v)
        .def_readonly("min_w", &DiagRow::min_w)
        .def_readonly("sup_w", &DiagRow::sup_w)
        .def_readonly("min_z", &DiagRow::min_z)
        .def_readonly("sup_z", &DiagRow::sup_z)
        .def_readonly("int_u", &DiagRow::int_u)
        .def_readonly("int_z", &DiagRow::int_z)
        .def_readonly("gradv4", &DiagRow::gradv4)
        .def_readonly("sup_a", &DiagRow::sup_a);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("rows", &Trajectory::rows)
        .def_readonly("frames", &Trajectory::frames)
        .def_readonly("final_state", &Trajectory::final_state)
        .def_readonly("aborted", &Trajectory::aborted)
        .def_readonly("abort_reason", &Trajectory::abort_reason)
        .def("end_time", &Trajectory::end_time);

    m.def("initial_state", &initial_state, py::arg("grid"), py::arg("spec"));
    m.def("step", &step, py::arg("state"), py::arg("params"), py::arg("ctl"));
    m.def("run", &run, py::arg("state"), py::arg("params"), py::arg("ctl"),
          py::arg("keep_frames") = false);
    m.def("diagnostics", &diagnostics, py::arg("state"));
    m.def("mass_balance_residual", &mass_balance_residual, py::arg("before"), py::arg("after"),
          py::arg("params"), py::arg("dt"));

    py::class_<StabilityConstants>(m, "StabilityConstants")
        .def_readonly("beta", &StabilityConstants::beta)
        .def_readonly("gamma", &StabilityConstants::gamma)
        .def_readonly("M", &StabilityConstants::M)
        .def_readonly("K1", &StabilityConstants::K1)
        .def_readonly("delta", &StabilityConstants::delta)
        .def_readonly("K2", &StabilityConstants::K2)
        .def_readonly("c2", &StabilityConstants::c2)
        .def_readonly("eps_star", &StabilityConstants::eps_star)
        .def_readonly("eps_2star", &StabilityConstants::eps_2star)
        .def_readonly("eps_3star", &StabilityConstants::eps_3star);

    m.def("k1_delta", &k1_delta, py::arg("beta"), py::arg("gamma"));
    m.def("eps_star", &eps_star, py::arg("beta"), py::arg("gamma"));
    m.def("eps_2star", &eps_2star, py::arg("gamma"), py::arg("A"));
    m.def("eps_3star", &eps_3star, py::arg("beta"), py::arg("gamma"), py::arg("M"));
    m.def("compute_constants", &compute_constants, py::arg("beta"), py::arg("gamma"),
          py::arg("M"));
    m.def("u_pointwise_floor", &u_pointwise_floor, py::arg("a0_min"), py::arg("eps"),
          py::arg("constants"));

    m.def("phi_closed", &phi_closed, py::arg("t"), py::arg("gamma"), py::arg("A"),
          py::arg("eps"));
    m.def("phi_ode", &phi_ode, py::arg("t"), py::arg("gamma"), py::arg("A"), py::arg("eps"),
          py::arg("rel_tol") = 1e-10);
    m.def(
        "phi_bound_check",
        [](double gamma, double A, double eps, const std::vector<double>& samples) {
            return phi_bound_check(gamma, A, eps, samples);
        },
        py::arg("gamma"), py::arg("A"), py::arg("eps"),
        py::arg("t_samples") = std::vector<double>{});

    py::class_<Envelope>(m, "Envelope")
        .def_readonly("eps", &Envelope::eps)
        .def_readonly("A", &Envelope::A)
        .def_readonly("B", &Envelope::B)
        .def_readonly("gamma", &Envelope::gamma)
        .def_readonly("delta", &Envelope::delta)
        .def_readonly("c1_env", &Envelope::c1_env)
        .def_readonly("degenerate", &Envelope::degenerate)
        .def("w_envelope", &Envelope::w_envelope, py::arg("t"))
        .def("z_envelope", &Envelope::z_envelope, py::arg("t"))
        .def("a_envelope", &Envelope::a_envelope, py::arg("t"));

    m.def("build_envelope", &build_envelope, py::arg("constants"), py::arg("w0_norm"),
          py::arg("z0_norm"), py::arg("eps"), py::arg("rho"));

    py::class_<BoundSample>(m, "BoundSample")
        .def_readonly("t", &BoundSample::t)
        .def_readonly("bound_id", &BoundSample::bound_id)
        .def_readonly("observed", &BoundSample::observed)
        .def_readonly("bound", &BoundSample::bound)
        .def_readonly("margin", &BoundSample::margin);

    py::class_<BoundReport>(m, "BoundReport")
        .def_readonly("horizon_verified", &BoundReport::horizon_verified)
        .def_readonly("samples", &BoundReport::samples)
        .def_readonly("violations", &BoundReport::violations)
        .def("clean", &BoundReport::clean);

    m.def(
        "verify_bounds",
        [](const std::vector<DiagRow>& rows, const StabilityConstants& k, const Envelope& env,
           double rho, double c_tol, double dx, double dt, double a0_min) {
            VerifySettings vs{c_tol, dx, dt, a0_min};
            return verify_bounds(rows, k, env, rho, vs);
        },
        py::arg("rows"), py::arg("constants"), py::arg("envelope"), py::arg("rho"),
        py::arg("c_tol") = 10.0, py::arg("dx") = 0.0, py::arg("dt") = 0.0,
        py::arg("a0_min") = 0.0);

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("params", &ExperimentConfig::params)
        .def_readwrite("gamma", &ExperimentConfig::gamma)
        .def_readwrite("M", &ExperimentConfig::M)
        .def_readwrite("eps_fraction", &ExperimentConfig::eps_fraction)
        .def_readwrite("amp_u_frac", &ExperimentConfig::amp_u_frac)
        .def_readwrite("amp_v_frac", &ExperimentConfig::amp_v_frac)
        .def_readwrite("amp_w_frac", &ExperimentConfig::amp_w_frac)
        .def_readwrite("amp_z_frac", &ExperimentConfig::amp_z_frac)
        .def_readwrite("mode_kx", &ExperimentConfig::mode_kx)
        .def_readwrite("mode_ky", &ExperimentConfig::mode_ky)
        .def_readwrite("seed", &ExperimentConfig::seed)
        .def_readwrite("homogeneous_init", &ExperimentConfig::homogeneous_init)
        .def_readwrite("amp_u", &ExperimentConfig::amp_u)
        .def_readwrite("amp_v", &ExperimentConfig::amp_v)
        .def_readwrite("amp_w", &ExperimentConfig::amp_w)
        .def_readwrite("amp_z", &ExperimentConfig::amp_z)
        .def_readwrite("u0_level", &ExperimentConfig::u0_level)
        .def_readwrite("v0_level", &ExperimentConfig::v0_level)
        .def_readwrite("w0_level", &ExperimentConfig::w0_level)
        .def_readwrite("z0_level", &ExperimentConfig::z0_level)
        .def_readwrite("dim", &ExperimentConfig::dim)
        .def_readwrite("nx", &ExperimentConfig::nx)
        .def_readwrite("ny", &ExperimentConfig::ny)
        .def_readwrite("lx", &ExperimentConfig::lx)
        .def_readwrite("ly", &ExperimentConfig::ly)
        .def_readwrite("ctl", &ExperimentConfig::ctl)
        .def_readwrite("c_tol", &ExperimentConfig::c_tol)
        .def_readwrite("fit_window_frac", &ExperimentConfig::fit_window_frac)
        .def_readwrite("keep_frames", &ExperimentConfig::keep_frames);

    py::class_<ConvergenceReport>(m, "ConvergenceReport")
        .def_readonly("u_infty_est", &ConvergenceReport::u_infty_est)
        .def_readonly("u_infty_predicted", &ConvergenceReport::u_infty_predicted)
        .def_readonly("u_infty_drift", &ConvergenceReport::u_infty_drift)
        .def_readonly("rate_v", &ConvergenceReport::rate_v)
        .def_readonly("rate_w", &ConvergenceReport::rate_w)
        .def_readonly("rate_z", &ConvergenceReport::rate_z)
        .def_readonly("eps", &ConvergenceReport::eps)
        .def_readonly("mean_u0", &ConvergenceReport::mean_u0)
        .def_readonly("a0_min", &ConvergenceReport::a0_min)
        .def_readonly("constants", &ConvergenceReport::constants)
        .def_readonly("envelope", &ConvergenceReport::envelope)
        .def_readonly("bound_report", &ConvergenceReport::bound_report)
        .def_readonly("trajectory", &ConvergenceReport::trajectory);

    py::class_<GrowthReport>(m, "GrowthReport")
        .def_readonly("times", &GrowthReport::times)
        .def_readonly("int_w", &GrowthReport::int_w)
        .def_readonly("int_z", &GrowthReport::int_z)
        .def_readonly("w_increasing", &GrowthReport::w_increasing)
        .def_readonly("z_increasing", &GrowthReport::z_increasing)
        .def_readonly("growth_indicator", &GrowthReport::growth_indicator)
        .def_readonly("trajectory", &GrowthReport::trajectory);

    py::class_<RefinementResult>(m, "RefinementResult")
        .def_readonly("nx_levels", &RefinementResult::nx_levels)
        .def_readonly("errors", &RefinementResult::errors)
        .def_readonly("orders", &RefinementResult::orders);

    m.def("run_stability", &run_stability, py::arg("config"));
    m.def(
        "fit_decay",
        [](const std::vector<double>& t, const std::vector<double>& v, double t1, double t2) {
            return fit_decay(t, v, t1, t2);
        },
        py::arg("times"), py::arg("values"), py::arg("t1"), py::arg("t2"));
    m.def("predict_u_infty", &predict_u_infty, py::arg("u0"), py::arg("rho"));
    m.def("run_blowup_probe", &run_blowup_probe, py::arg("config"));
    m.def("refinement_study",
          py::overload_cast<const ExperimentConfig&, int>(&refinement_study), py::arg("config"),
          py::arg("levels"));
}
