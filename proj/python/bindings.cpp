#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <span>
#include <vector>

#include "swarmmatch/cli.hpp"
#include "swarmmatch/errors.hpp"
#include "swarmmatch/matchdesign.hpp"
#include "swarmmatch/pso.hpp"
#include "swarmmatch/txline.hpp"

namespace py = pybind11;
using namespace swarmmatch;

namespace {

pso::Objective wrap_objective(const std::function<double(std::vector<double>)>& fn) {
    return [fn](std::span<const double> x) {
        return fn(std::vector<double>(x.begin(), x.end()));
    };
}

py::list trace_to_list(const pso::ConvergenceTrace& trace) {
    py::list points;
    for (const auto& p : trace) {
        points.append(py::make_tuple(p.iteration, p.global_best_fitness));
    }
    return points;
}

py::list sweep_to_list(const txline::SweepResult& result) {
    py::list points;
    for (const auto& p : result) {
        points.append(py::make_tuple(p.frequency_hz, p.gamma, p.magnitude_db));
    }
    return points;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Quarter-wave impedance-matching design by particle swarm search, "
              "verified with two-port reflection sweeps";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<SingularityError>(m, "SingularityError", PyExc_ArithmeticError);

    py::enum_<pso::Termination>(m, "Termination")
        .value("tolerance", pso::Termination::tolerance)
        .value("budget", pso::Termination::budget);

    py::class_<pso::Bound>(m, "Bound")
        .def(py::init<double, double>(), py::arg("low"), py::arg("high"))
        .def_readwrite("low", &pso::Bound::low)
        .def_readwrite("high", &pso::Bound::high)
        .def("__repr__", [](const pso::Bound& b) {
            return "Bound(" + std::to_string(b.low) + ", " + std::to_string(b.high) + ")";
        });

    py::class_<pso::SwarmConfig>(m, "SwarmConfig")
        .def(py::init<>())
        .def_readwrite("population", &pso::SwarmConfig::population)
        .def_readwrite("inertia_w", &pso::SwarmConfig::inertia_w)
        .def_readwrite("cognitive_c1", &pso::SwarmConfig::cognitive_c1)
        .def_readwrite("social_c2", &pso::SwarmConfig::social_c2)
        .def_readwrite("bounds", &pso::SwarmConfig::bounds)
        .def_readwrite("v_clamp", &pso::SwarmConfig::v_clamp)
        .def_readwrite("max_iterations", &pso::SwarmConfig::max_iterations)
        .def_readwrite("fitness_tolerance", &pso::SwarmConfig::fitness_tolerance)
        .def_readwrite("seed", &pso::SwarmConfig::seed)
        .def_readwrite("stochastic_update", &pso::SwarmConfig::stochastic_update);

    py::class_<pso::RunResult>(m, "RunResult")
        .def_readonly("best_position", &pso::RunResult::best_position)
        .def_readonly("best_fitness", &pso::RunResult::best_fitness)
        .def_property_readonly(
            "trace", [](const pso::RunResult& r) { return trace_to_list(r.trace); })
        .def_readonly("termination", &pso::RunResult::termination)
        .def_readonly("iterations", &pso::RunResult::iterations)
        .def_readonly("non_finite_evaluations", &pso::RunResult::non_finite_evaluations);

    m.def(
        "run",
        [](const pso::SwarmConfig& config, const std::function<double(std::vector<double>)>& f) {
            return pso::run(config, wrap_objective(f));
        },
        py::arg("config"), py::arg("objective"),
        "Minimize a Python objective with the particle swarm engine.");

    py::class_<matchdesign::DesignProblem>(m, "DesignProblem")
        .def(py::init<>())
        .def_readwrite("z_load", &matchdesign::DesignProblem::z_load)
        .def_readwrite("z_target", &matchdesign::DesignProblem::z_target)
        .def_readwrite("n_sections", &matchdesign::DesignProblem::n_sections)
        .def_readwrite("bound_low", &matchdesign::DesignProblem::bound_low)
        .def_readwrite("bound_high", &matchdesign::DesignProblem::bound_high)
        .def_readwrite("ordering_required", &matchdesign::DesignProblem::ordering_required)
        .def_readwrite("penalty_weight", &matchdesign::DesignProblem::penalty_weight);

    py::class_<matchdesign::SweepSettings>(m, "SweepSettings")
        .def(py::init<>())
        .def_readwrite("f0_hz", &matchdesign::SweepSettings::f0_hz)
        .def_readwrite("f_start_hz", &matchdesign::SweepSettings::f_start_hz)
        .def_readwrite("f_stop_hz", &matchdesign::SweepSettings::f_stop_hz)
        .def_readwrite("n_points", &matchdesign::SweepSettings::n_points);

    py::class_<matchdesign::DesignResult>(m, "DesignResult")
        .def_readonly("impedances", &matchdesign::DesignResult::impedances)
        .def_readonly("fitness", &matchdesign::DesignResult::fitness)
        .def_property_readonly(
            "trace",
            [](const matchdesign::DesignResult& r) { return trace_to_list(r.trace); })
        .def_readonly("verified_db_at_f0", &matchdesign::DesignResult::verified_db_at_f0)
        .def_readonly("termination", &matchdesign::DesignResult::termination)
        .def_readonly("ordering_ok", &matchdesign::DesignResult::ordering_ok)
        .def_readonly("iterations", &matchdesign::DesignResult::iterations)
        .def_readonly("non_finite_evaluations",
                      &matchdesign::DesignResult::non_finite_evaluations);

    m.def(
        "closed_form_fitness",
        [](const std::vector<double>& z, const matchdesign::DesignProblem& problem) {
            return matchdesign::closed_form_fitness(z, problem);
        },
        py::arg("z"), py::arg("problem") = matchdesign::DesignProblem{},
        "Closed-form three-section fitness, impedances load-adjacent first.");

    m.def(
        "cascade_fitness",
        [](const std::vector<double>& z, const matchdesign::DesignProblem& problem,
           double f0_hz) { return matchdesign::cascade_fitness(z, problem, f0_hz); },
        py::arg("z"), py::arg("problem") = matchdesign::DesignProblem{},
        py::arg("f0_hz") = 5e9,
        "Two-port cascade fitness for any section count.");

    m.def(
        "ordering_penalty",
        [](const std::vector<double>& z, const matchdesign::DesignProblem& problem) {
            return matchdesign::ordering_penalty(z, problem);
        },
        py::arg("z"), py::arg("problem") = matchdesign::DesignProblem{});

    m.def(
        "check_ordering",
        [](const std::vector<double>& z) { return matchdesign::check_ordering(z); },
        py::arg("z"), "True iff the impedances strictly decrease from the load side.");

    m.def("default_swarm_config", &matchdesign::default_swarm_config, py::arg("problem"),
          py::arg("seed"),
          "Swarm configuration with the stock hyperparameters for this problem.");

    m.def("design", &matchdesign::design, py::arg("problem"), py::arg("swarm"),
          py::arg("sweep") = matchdesign::SweepSettings{},
          "Optimize the section impedances and verify the winner at f0.");

    m.def(
        "verify",
        [](const std::vector<double>& impedances, double z_load, double z_ref, double f0_hz,
           double f_start_hz, double f_stop_hz, std::size_t n_points) {
            const auto result = cli::verify_design(impedances, z_load, z_ref, f0_hz,
                                                   f_start_hz, f_stop_hz, n_points);
            return py::make_tuple(sweep_to_list(result.points), result.db_at_f0);
        },
        py::arg("impedances"), py::arg("z_load") = 100.0, py::arg("z_ref") = 50.0,
        py::arg("f0_hz") = 5e9, py::arg("f_start_hz") = 1e9, py::arg("f_stop_hz") = 9e9,
        py::arg("n_points") = 201,
        "Reflection sweep of a finished design (impedances load-adjacent first); "
        "returns ([(frequency_hz, gamma, db), ...], db_at_f0).");

    m.def(
        "reflection",
        [](std::complex<double> z_in, double z_ref) {
            const auto r = txline::reflection(z_in, z_ref);
            return py::make_tuple(r.gamma, r.magnitude_db);
        },
        py::arg("z_in"), py::arg("z_ref"),
        "Reflection coefficient and floored magnitude in dB.");

    m.attr("__version__") = "0.1.0";
}
