#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "emconn/boost.hpp"
#include "emconn/chern.hpp"
#include "emconn/curvature.hpp"
#include "emconn/geodesic.hpp"

namespace py = pybind11;
using namespace emconn;

namespace {

using Triple = std::array<double, 3>;
using Quad = std::array<double, 4>;

Vec3 vec(const Triple& a) { return {a[0], a[1], a[2]}; }
Triple triple(const Vec3& v) { return {v.x, v.y, v.z}; }
SpacetimePoint point(const Quad& a) { return {a}; }

Dynamics parse_dynamics(const std::string& name)
{
    if (name == "geodesic") return Dynamics::Geodesic;
    if (name == "classical") return Dynamics::Classical;
    throw std::invalid_argument("unknown dynamics '" + name + "' (geodesic, classical)");
}

py::list rows_to_list(const std::vector<TableRow>& rows)
{
    py::list out;
    for (const TableRow& r : rows) {
        out.append(py::make_tuple(r.i, r.j, r.k, r.value));
    }
    return out;
}

py::dict time_basis(const TimeBasisForm& f)
{
    py::dict d;
    for (std::size_t n = 0; n < f.coeff.size(); ++n) {
        d[py::str(std::string(TimeBasisForm::kLabels[n]))] = f.coeff[n];
    }
    return d;
}

py::list trajectory_rows(const Trajectory& t, double c)
{
    py::list out;
    for (const TrajectorySample& s : t.samples) {
        const auto& x = s.state.x;
        const auto& u = s.state.u;
        out.append(py::make_tuple(s.tau, s.lab_time(c), x[1], x[2], x[3], u[0], u[1], u[2], u[3]));
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Electromagnetic connection: tables, curvature identities, boosts, trace form and geodesics";
    m.attr("SPEED_OF_LIGHT") = kSpeedOfLight;

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<SingularityError>(m, "SingularityError", error.ptr());
    py::register_exception<IntegrationError>(m, "IntegrationError", error.ptr());

    py::class_<ParticleParams>(m, "ParticleParams")
        .def(py::init<double, double, double, std::optional<double>>(), py::arg("q"), py::arg("m"),
             py::arg("c") = kSpeedOfLight, py::arg("tau0") = std::nullopt)
        .def_property_readonly("q", &ParticleParams::q)
        .def_property_readonly("m", &ParticleParams::m)
        .def_property_readonly("c", &ParticleParams::c)
        .def_property_readonly("tau0", &ParticleParams::tau0)
        .def_property_readonly("kappa", &ParticleParams::kappa)
        .def("__repr__", [](const ParticleParams& p) {
            return "ParticleParams(q=" + std::to_string(p.q()) + ", m=" + std::to_string(p.m()) +
                   ", c=" + std::to_string(p.c()) + ")";
        });

    py::class_<FieldModel>(m, "FieldModel")
        .def_property_readonly("name", &FieldModel::name)
        .def_property_readonly("source_free", &FieldModel::source_free)
        .def_property_readonly("uniform", &FieldModel::uniform)
        .def(
            "evaluate",
            [](const FieldModel& f, const Quad& p) {
                const FieldSample s = eval_field(f, point(p));
                std::array<Triple, 4> de{}, db{};
                for (int a = 0; a < 4; ++a) {
                    de[a] = triple(s.de[a]);
                    db[a] = triple(s.db[a]);
                }
                py::dict d;
                d["E"] = triple(s.e);
                d["B"] = triple(s.b);
                d["dE"] = de;
                d["dB"] = db;
                return d;
            },
            py::arg("point"), "E, B and their derivatives d/dx^a (rows a = 0..3) at (x0, x, y, z)");

    m.def("preset_names", &preset_names);
    m.def(
        "make_preset",
        [](const std::string& name, const std::map<std::string, std::vector<double>>& params) {
            return make_preset(name, PresetParams(params.begin(), params.end()));
        },
        py::arg("name"), py::arg("params") = std::map<std::string, std::vector<double>>{});

    m.def(
        "connection_table",
        [](const Triple& e, const Triple& b, double kappa, const std::string& placement) {
            return rows_to_list(nonzero_rows(connection_from_fields(vec(e), vec(b), kappa, parse_placement(placement))));
        },
        py::arg("E"), py::arg("B"), py::arg("kappa") = 1.0, py::arg("placement") = "full",
        "Nonzero connection components as (i, j, k, value)");
    m.def(
        "torsion_table",
        [](const Triple& e, const Triple& b, double kappa, const std::string& placement) {
            return rows_to_list(
                torsion_rows(torsion(connection_from_fields(vec(e), vec(b), kappa, parse_placement(placement)))));
        },
        py::arg("E"), py::arg("B"), py::arg("kappa") = 1.0, py::arg("placement") = "full",
        "Nonzero torsion components with j < k as (i, j, k, value)");

    m.def(
        "symmetry_report",
        [](const FieldModel& f, const Quad& p, const ParticleParams& pp, const std::string& placement) {
            const SymmetryReport r = symmetry_report(f, point(p), pp, parse_placement(placement));
            py::dict d;
            d["trace"] = r.trace;
            d["trace_expected"] = r.trace_expected;
            d["mixed"] = r.mixed;
            d["mixed_expected"] = r.mixed_expected;
            d["spatial"] = r.spatial;
            d["spatial_expected"] = r.spatial_expected;
            d["scale"] = r.scale;
            return d;
        },
        py::arg("field"), py::arg("point"), py::arg("particle"), py::arg("placement") = "full");
    m.def(
        "torsion_epsilon_sum",
        [](const FieldModel& f, const Quad& p, const ParticleParams& pp, const std::string& placement) {
            return torsion_epsilon_sum(f, point(p), pp, parse_placement(placement));
        },
        py::arg("field"), py::arg("point"), py::arg("particle"), py::arg("placement") = "full");
    m.def(
        "continuity",
        [](const FieldModel& f, const Quad& p, const ParticleParams& pp) {
            const ContinuityResult r = continuity_residual(f, point(p), pp);
            py::dict d;
            d["drho_dt"] = r.drho_dt;
            d["div_j"] = r.div_j;
            d["residual"] = r.residual;
            d["j_dot_e"] = r.j_dot_e;
            d["scale"] = r.scale;
            return d;
        },
        py::arg("field"), py::arg("point"), py::arg("particle"));

    m.def(
        "boost_table",
        [](const Triple& e, const Triple& b, int axis, double beta, const ParticleParams& pp) {
            const BoostFieldReport r = boost_field_check(vec(e), vec(b), BoostSpec(axis, beta), pp);
            py::list rows;
            for (const BoostFieldRow& row : r.rows) {
                py::dict d;
                d["label"] = row.label;
                d["initial"] = row.initial;
                d["observed"] = row.observed;
                d["expected"] = row.expected;
                d["expected_gamma"] = row.expected_gamma;
                d["deviation"] = row.deviation;
                rows.append(d);
            }
            py::dict d;
            d["rows"] = rows;
            d["beta"] = r.beta;
            d["gamma"] = r.gamma;
            d["bound"] = r.bound;
            d["max_deviation"] = r.max_deviation();
            return d;
        },
        py::arg("E"), py::arg("B"), py::arg("axis"), py::arg("beta"), py::arg("particle"));

    m.def(
        "trace_form",
        [](const FieldModel& f, const Quad& p, const ParticleParams& pp, const std::string& placement) {
            const CurvatureTraceForm w = curvature_trace_form(f, point(p), pp, parse_placement(placement));
            return time_basis(to_time_basis(w.normalized, pp.c()));
        },
        py::arg("field"), py::arg("point"), py::arg("particle"), py::arg("placement") = "full",
        "Curvature trace 2-form over kappa, as coefficients of dx^dt ... dx^dy");
    m.def(
        "trace_form_closed",
        [](const FieldModel& f, const Quad& p, double c) {
            return time_basis(to_time_basis(closed_form_trace(f, point(p), c), c));
        },
        py::arg("field"), py::arg("point"), py::arg("c"));
    m.def(
        "exactness",
        [](const FieldModel& f, const Quad& p, const ParticleParams& pp, double h) {
            const ExactnessReport r = exactness_check(f, point(p), pp, h);
            py::dict d;
            d["h"] = r.h;
            d["deviation"] = r.deviation;
            d["deviation_half"] = r.deviation_half;
            d["ratio"] = r.ratio;
            return d;
        },
        py::arg("field"), py::arg("point"), py::arg("particle"), py::arg("h"));

    m.def(
        "geodesic_rhs",
        [](const FieldModel& f, const Quad& x, const Quad& u, const ParticleParams& pp,
           const std::string& placement) {
            return geodesic_rhs(GeodesicState{point(x), u}, f, pp, parse_placement(placement));
        },
        py::arg("field"), py::arg("x"), py::arg("u"), py::arg("particle"), py::arg("placement") = "full",
        "(dx/ds, du/ds) with s = c tau");
    m.def(
        "integrate",
        [](const FieldModel& f, const Quad& x, const Quad& u, const ParticleParams& pp, double tau_end,
           std::optional<double> h, const std::string& dynamics, const std::string& placement) {
            const GeodesicState st{point(x), u};
            const double step = h ? *h : default_step(eval_field(f, st.x), pp, tau_end);
            const Trajectory t =
                integrate(parse_dynamics(dynamics), st, f, pp, tau_end, step, parse_placement(placement));
            return trajectory_rows(t, pp.c());
        },
        py::arg("field"), py::arg("x"), py::arg("u"), py::arg("particle"), py::arg("tau_end"),
        py::arg("h") = std::nullopt, py::arg("dynamics") = "geodesic", py::arg("placement") = "full",
        "Rows of (tau, t, x, y, z, u0, u1, u2, u3)");
    m.def(
        "force_probe",
        [](const Triple& e, const Triple& v, const ParticleParams& pp) {
            const ForceProbe r = force_probe(vec(e), vec(v), pp);
            py::dict d;
            d["parallel_ratio"] = r.parallel_ratio;
            d["transverse_ratio"] = r.transverse_ratio;
            return d;
        },
        py::arg("E"), py::arg("v_over_c"), py::arg("particle"));
    m.def(
        "decay",
        [](const Triple& e, double beta, const ParticleParams& pp, double tau_end, double h, std::size_t samples) {
            const DecayReport r = decay_experiment(vec(e), beta, pp, tau_end, h, samples);
            py::list rows;
            for (const DecayRow& row : r.rows) {
                py::dict d;
                d["t"] = row.t;
                d["tau_plus"] = row.tau_plus;
                d["tau_minus"] = row.tau_minus;
                d["rate_plus"] = row.rate_plus;
                d["rate_minus"] = row.rate_minus;
                d["survival_plus"] = row.survival_plus;
                d["survival_minus"] = row.survival_minus;
                d["asymmetry"] = row.asymmetry;
                rows.append(d);
            }
            return rows;
        },
        py::arg("E"), py::arg("beta"), py::arg("particle"), py::arg("tau_end"), py::arg("h"),
        py::arg("samples") = 201);
}
