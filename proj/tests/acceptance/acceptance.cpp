// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (capped at 125).
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "emconn/boost.hpp"
#include "emconn/chern.hpp"
#include "emconn/curvature.hpp"
#include "emconn/geodesic.hpp"
#include "support/random_fields.hpp"
#include "support/symbolic_oracle.hpp"

using namespace emconn;

namespace {

// Tolerances
constexpr double kCoulombTol = 1e-9;
constexpr double kCoulombImagTol = 1e-12;
constexpr double kAmpereTol = 1e-9;
constexpr double kFaradayTol = 1e-9;
constexpr double kFaradayOracleTol = 1e-12;
constexpr double kTorsionSumTol = 1e-9;
constexpr double kJdotETol = 1e-14;
constexpr double kContinuityTol = 1e-9;
constexpr double kBoostExponent = 2.0;
constexpr double kBoostExponentTol = 0.2;
constexpr double kChernTol = 1e-10;
constexpr double kChernRatio = 4.0;
constexpr double kChernRatioTol = 0.5;
constexpr double kForceTol = 1e-12;
constexpr double kTimeEquationTol = 1e-14;
constexpr double kOrder = 4.0;
constexpr double kOrderTol = 0.2;
constexpr double kDriftTol = 1e-9;
constexpr double kSwapTol = 1e-12;
constexpr double kRoundingTol = 1e-15;
constexpr double kPlacementRhsTol = 1e-15;
constexpr double kPlacementReportTol = 1e-12;
constexpr double kOracleTol = 1e-12;

constexpr int kPointsPerPreset = 20;
constexpr int kOracleConfigs = 100;

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

/// Tracks the worst relative residual of one identity.
struct Worst {
    double value = 0.0;
    void update(double residual, double scale) { value = std::max(value, std::abs(residual) / scale); }
    bool within(double tol) const { return value <= tol; }
};

const ParticleParams kUnit(1.0, 1.0, 1.0);

// Two particles: unit kappa, and a generic one with c != 1.
std::vector<ParticleParams> particles() { return {kUnit, ParticleParams(0.8, 1.7, 2.0)}; }

// The seeded 6 presets x 20 points grid.
struct GridPoint {
    const FieldModel* model;
    SpacetimePoint p;
};

std::vector<GridPoint> preset_grid(const std::vector<FieldModel>& models)
{
    testing_support::Generator gen(20240601);
    std::vector<GridPoint> out;
    for (const FieldModel& m : models) {
        for (int n = 0; n < kPointsPerPreset; ++n) {
            out.push_back({&m, gen.point()});
        }
    }
    return out;
}

Vec3 unit(int i)
{
    Vec3 v;
    v[i] = 1.0;
    return v;
}

bool row_less(const TableRow& a, const TableRow& b) { return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k); }

// Torsion rows (j < k) for unit B_x, B_y, B_z, transcribed from the torsion table.
const char* const kTorsionTable = R"(
2 0 3 1 Bx   3 0 1 1 By   1 0 2 1 Bz
3 0 2 1 Bx   1 0 3 1 By   2 0 1 1 Bz
0 2 3 1 Bx   0 1 3 -1 By  0 1 2 1 Bz
)";

Outcome table_reproduction()
{
    Outcome o;
    std::size_t connection_rows = 0;
    std::size_t torsion_rows_seen = 0;
    const auto transcription = oracle::table_entries(oracle::Variant::Full);
    const auto torsion_transcription = oracle::parse_table(kTorsionTable);
    for (int f = 0; f < 6; ++f) {
        const Vec3 e = f < 3 ? unit(f) : Vec3{};
        const Vec3 b = f >= 3 ? unit(f - 3) : Vec3{};
        const Connection g = connection_from_fields(e, b, 1.0, Placement::Full);

        std::vector<TableRow> expected;
        for (const auto& t : transcription) {
            if (t.field == f) {
                expected.push_back({t.i, t.j, t.k, t.coefficient});
            }
        }
        std::sort(expected.begin(), expected.end(), row_less);
        const std::vector<TableRow> rows = nonzero_rows(g);
        if (rows != expected) {
            o.pass = false;
            o.detail += " connection column " + std::to_string(f) + " differs;";
        }
        connection_rows += rows.size();

        std::vector<TableRow> texpected;
        for (const auto& t : torsion_transcription) {
            if (t.field == f) {
                texpected.push_back({t.i, t.j, t.k, t.coefficient});
            }
        }
        std::sort(texpected.begin(), texpected.end(), row_less);
        const std::vector<TableRow> trows = torsion_rows(torsion(g));
        if (trows != texpected) {
            o.pass = false;
            o.detail += " torsion column " + std::to_string(f) + " differs;";
        }
        torsion_rows_seen += trows.size();
    }
    const bool counts = connection_rows == transcription.size() && torsion_rows_seen == 9;
    o.pass = o.pass && counts;
    o.detail = std::to_string(connection_rows) + " connection rows and " + std::to_string(torsion_rows_seen) +
               " torsion rows match the transcribed tables exactly (the stated count of 36 connection rows "
               "disagrees with the 13 x 3 = 39 printed entries)" +
               o.detail;
    return o;
}

// Shared grid sweep for the Ricci identities.
struct RicciSweep {
    Worst trace, trace_imag, mixed, faraday, torsion_sum, j_dot_e, continuity;
    double oracle_faraday = 0.0;
    double violating_min = INFINITY;
    std::size_t points = 0;
};

RicciSweep sweep_ricci(const std::vector<FieldModel>& models)
{
    RicciSweep r;
    const std::vector<GridPoint> grid = preset_grid(models);
    for (const ParticleParams& pp : particles()) {
        const oracle::SymbolicCurvature sym(pp.kappa());
        for (const GridPoint& gp : grid) {
            const FieldSample s = eval_field(*gp.model, gp.p);
            const SymmetryReport rep = symmetry_report(s, pp, Placement::Full);
            ++r.points;
            r.trace.update(std::abs(rep.trace_residual()), rep.scale);
            r.trace_imag.update(rep.trace.imag(), rep.scale);
            for (int i = 0; i < 3; ++i) {
                r.mixed.update(std::abs(rep.mixed_residual(i)), rep.scale);
            }
            r.torsion_sum.update(std::abs(torsion_epsilon_sum(build_jet(s, pp, Placement::Full)) -
                                          2.0 * pp.kappa() * s.div_b()),
                                 rep.scale);
            const ContinuityResult c = continuity_residual(s, pp);
            r.j_dot_e.update(c.j_dot_e, c.j_dot_e_scale);

            if (gp.model->source_free()) {
                for (int i = 0; i < 3; ++i) {
                    r.faraday.update(std::abs(rep.spatial[i]), rep.scale);
                }
                r.continuity.update(c.residual, c.scale);
            } else {
                const auto values = oracle::symbol_values(s);
                double size = 0.0;
                for (int n = 0; n < 3; ++n) {
                    const auto [i, j] = SymmetryReport::kSpatialPairs[n];
                    const CScalar expect = (sym.ricci(i, j) - sym.ricci(j, i)).evaluate(values);
                    const double rel = std::abs(rep.spatial[n] - expect) / std::max(1.0, std::abs(expect));
                    r.oracle_faraday = std::max(r.oracle_faraday, rel);
                    size = std::max(size, std::abs(rep.spatial[n]));
                }
                r.violating_min = std::min(r.violating_min, size / rep.scale);
            }
        }
    }
    // J is along E x B for any field values, Maxwellian or not
    testing_support::Generator gen(77);
    for (int n = 0; n < 100; ++n) {
        const ContinuityResult c = continuity_residual(gen.sample(3.0), ParticleParams(gen.uniform(), 1.0, 1.5));
        r.j_dot_e.update(c.j_dot_e, c.j_dot_e_scale);
    }
    return r;
}

// Numeric Riemann against the symbolic expansion.
Outcome oracle_gate()
{
    Outcome o;
    testing_support::Generator gen(13013);
    double worst = 0.0;
    int configs = 0;
    for (double kappa : {1.0, -0.37}) {
        for (auto [placement, variant] :
             {std::pair{Placement::Full, oracle::Variant::Full},
              std::pair{Placement::AlternativeFull, oracle::Variant::AlternativeFull}}) {
            const oracle::SymbolicCurvature sym(kappa, variant);
            const ParticleParams pp(kappa, 1.0, 1.0);
            for (int n = 0; n < kOracleConfigs / 4; ++n) {
                const FieldSample s = gen.sample(2.0);
                const auto values = oracle::symbol_values(s);
                const Riemann r = riemann(build_jet(s, pp, placement));
                double diff = 0.0;
                double scale = 1.0;
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j)
                        for (int k = 0; k < 4; ++k)
                            for (int l = 0; l < 4; ++l) {
                                const CScalar expect = sym.riemann(i, j, k, l).evaluate(values);
                                diff = std::max(diff, std::abs(r(i, j, k, l) - expect));
                                scale = std::max(scale, std::abs(expect));
                            }
                worst = std::max(worst, diff / scale);
                ++configs;
            }
        }
    }
    o.pass = configs >= kOracleConfigs && worst <= kOracleTol;
    o.detail = std::to_string(configs) + " random configurations, max relative difference " + fmt(worst) +
               " (tolerance " + fmt(kOracleTol) + ")";
    return o;
}

Outcome boost_table()
{
    Outcome o;
    testing_support::Generator gen(404);
    std::vector<std::pair<Vec3, Vec3>> fields = {{{0.6, -0.8, 0.5}, {-0.4, 0.7, 0.9}},
                                                 {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}}};
    for (int n = 0; n < 8; ++n) {
        fields.push_back({gen.vec3(2.0), gen.vec3(2.0)});
    }
    const std::array<double, 3> betas{0.01, 0.02, 0.04};
    bool identity = true;
    bool bounded = true;
    double exp_lo = INFINITY, exp_hi = -INFINITY;
    for (const auto& [e, b] : fields) {
        for (int axis = 1; axis <= 3; ++axis) {
            const BoostFieldReport still = boost_field_check(e, b, BoostSpec(axis, 0.0), kUnit);
            const ObservableSet obs =
                observables(transform_connection(connection_from_fields(e, b, 1.0, Placement::Full),
                                                 BoostSpec(axis, 0.0)),
                            kUnit);
            identity = identity && still.max_deviation() == 0.0 && obs.e_obs == e && obs.b_obs == b;

            std::array<BoostFieldReport, 3> reps;
            for (std::size_t n = 0; n < 3; ++n) {
                reps[n] = boost_field_check(e, b, BoostSpec(axis, betas[n]), kUnit);
                for (const BoostFieldRow& row : reps[n].rows) {
                    bounded = bounded && row.deviation <= reps[n].bound;
                }
            }
            for (std::size_t n = 0; n + 1 < 3; ++n) {
                const double x = std::log2(reps[n + 1].max_deviation() / reps[n].max_deviation()) /
                                 std::log2(betas[n + 1] / betas[n]);
                exp_lo = std::min(exp_lo, x);
                exp_hi = std::max(exp_hi, x);
            }
        }
    }
    const bool exponent = std::abs(exp_lo - kBoostExponent) <= kBoostExponentTol &&
                          std::abs(exp_hi - kBoostExponent) <= kBoostExponentTol;
    o.pass = identity && bounded && exponent;
    o.detail = "beta = 0 recovers the fields exactly: " + std::string(identity ? "yes" : "no") +
               "; every row within " + fmt(kBoostBoundConstant) + " beta^2 max(|E|,|B|): " +
               (bounded ? "yes" : "no") + "; exponent of the largest row deviation in [" + fmt(exp_lo) + ", " +
               fmt(exp_hi) + "] over " + std::to_string(fields.size()) + " field pairs x 3 axes";
    return o;
}

Outcome chern_form(const std::vector<FieldModel>& models)
{
    Outcome o;
    Worst closed;
    double ratio_lo = INFINITY, ratio_hi = -INFINITY;
    double exact_dev = 0.0;
    int ratios = 0;
    for (const ParticleParams& pp : particles()) {
        for (const GridPoint& gp : preset_grid(models)) {
            const CurvatureTraceForm w = curvature_trace_form(*gp.model, gp.p, pp, Placement::Full);
            const TwoForm expr = closed_form_trace(*gp.model, gp.p, pp.c());
            closed.update(w.normalized.max_abs_difference(expr), std::max(1.0, expr.max_abs()));
        }
    }
    // -d(E.dx) by central differences: fields with curvature in E converge at second order,
    // fields linear in the coordinates are reproduced exactly
    testing_support::Generator gen(808);
    for (const FieldModel& m : models) {
        for (int n = 0; n < 5; ++n) {
            const ExactnessReport r = exactness_check(m, gen.point(), kUnit, 5e-2);
            if (r.deviation > 1e-9) {
                ratio_lo = std::min(ratio_lo, r.ratio);
                ratio_hi = std::max(ratio_hi, r.ratio);
                ++ratios;
            } else {
                exact_dev = std::max(exact_dev, r.deviation);
            }
        }
    }
    const bool converge = ratios > 0 && std::abs(ratio_lo - kChernRatio) <= kChernRatioTol &&
                          std::abs(ratio_hi - kChernRatio) <= kChernRatioTol;
    o.pass = closed.within(kChernTol) && converge && exact_dev <= 1e-12;
    o.detail = "trace form vs closed form max " + fmt(closed.value) + " x scale (tolerance " + fmt(kChernTol) +
               "); h-halving error ratio in [" + fmt(ratio_lo) + ", " + fmt(ratio_hi) + "] over " +
               std::to_string(ratios) + " curved-field points, linear fields exact to " + fmt(exact_dev);
    return o;
}

Outcome extended_force()
{
    Outcome o;
    double transverse = 0.0;
    double parallel = 0.0;
    bool present = true;
    const Vec3 e{0.0, 0.8, 0.0};
    for (double beta : {0.0, 0.1, 0.5, 0.9}) {
        const ForceProbe across = force_probe(e, {beta, 0.0, 0.0}, kUnit);
        const ForceProbe along = force_probe(e, {0.0, beta, 0.0}, kUnit);
        present = present && across.transverse_ratio && along.parallel_ratio;
        if (!present) {
            break;
        }
        transverse = std::max(transverse, std::abs(*across.transverse_ratio - (1.0 - beta * beta)));
        parallel = std::max(parallel, std::abs(*along.parallel_ratio - 1.0));
    }

    testing_support::Generator gen(909);
    double time_eq = 0.0;
    double spatial = 0.0;
    for (int n = 0; n < 100; ++n) {
        const Vec3 ev = gen.vec3(2.0);
        const Vec3 bv = gen.vec3(2.0);
        const ParticleParams pp(gen.uniform(-2, 2), 1.0, 1.0);
        GeodesicState st;
        const Vec3 v = gen.vec3();
        st.u = {gen.uniform(0.2, 2.0), v.x, v.y, v.z};
        const StateDerivative d = geodesic_rhs(st, presets::crossed_eb(ev, bv), pp);
        const double u0 = st.u[0];
        const double k = pp.kappa();
        time_eq = std::max(time_eq, std::abs(d[4] - 2.0 * k * dot(ev, v) * u0) / std::max(1.0, std::abs(d[4])));
        const Vec3 uxb = cross(v, bv);
        for (int i = 0; i < 3; ++i) {
            const double expect = k * (ev[i] * u0 * u0 + uxb[i] * u0 - ev[i] * (norm2(v) - v[i] * v[i]));
            spatial = std::max(spatial, std::abs(d[5 + i] - expect) / std::max(1.0, std::abs(expect)));
        }
    }
    o.pass = present && transverse <= kForceTol && parallel <= kForceTol && time_eq <= kTimeEquationTol &&
             spatial <= kForceTol;
    o.detail = "transverse ratio vs 1 - beta^2 max error " + fmt(transverse) + ", parallel ratio vs 1 max error " +
               fmt(parallel) + "; time equation residual " + fmt(time_eq) + " and spatial residual " +
               fmt(spatial) + " on 100 random states";
    return o;
}

Outcome integrator()
{
    Outcome o;
    const FieldModel model = presets::uniform_b({0.0, 0.0, 1.0});
    GeodesicState st;
    st.u = {1.0, 0.8, 0.0, 0.0};
    const double tau_end = 2.0 * kPi;
    double x[3];
    for (int n = 0; n < 3; ++n) {
        const double h = tau_end / (25 << n);
        x[n] = integrate(Dynamics::Geodesic, st, model, kUnit, tau_end, h).samples.back().state.x[1];
    }
    const double order = std::log2(std::abs(x[0] - x[1]) / std::abs(x[1] - x[2]));

    GeodesicState orbit;
    orbit.u = {1.0, 0.6, 0.0, 0.1};
    const double h = 2.0 * kPi / 1000.0;
    const Trajectory t = integrate(Dynamics::Geodesic, orbit, model, kUnit, 1e4 * h, h);
    const double v0 = norm(orbit.spatial_u());
    double speed_drift = 0.0;
    double u0_drift = 0.0;
    for (const TrajectorySample& s : t.samples) {
        speed_drift = std::max(speed_drift, std::abs(norm(s.state.spatial_u()) - v0) / v0);
        u0_drift = std::max(u0_drift, std::abs(s.state.u[0] - orbit.u[0]));
    }
    const std::size_t steps = t.samples.size() - 1;
    o.pass = std::abs(order - kOrder) <= kOrderTol && steps == 10000 && speed_drift <= kDriftTol &&
             u0_drift <= kDriftTol;
    o.detail = "self-convergence order " + fmt(order) + "; over " + std::to_string(steps) +
               " steps |v| drift " + fmt(speed_drift) + ", u0 drift " + fmt(u0_drift);
    return o;
}

Outcome decay_asymmetry()
{
    Outcome o;
    // with c = 1 and kappa E = 0.1 the launch against E turns around near s = 3
    const ParticleParams pp(1.0, 1.0, 1.0, 2.0);
    const Vec3 e{0.1, 0.0, 0.0};
    const DecayReport rep = decay_experiment(e, 0.3, pp, 2.5, 0.01, 201);
    bool sign = true;
    bool monotone = true;
    for (std::size_t n = 1; n < rep.rows.size(); ++n) {
        sign = sign && rep.rows[n].asymmetry < 0.0;
        monotone = monotone && std::abs(rep.rows[n].asymmetry) > std::abs(rep.rows[n - 1].asymmetry);
    }
    const bool starts_at_zero = !rep.rows.empty() && rep.rows.front().asymmetry == 0.0;

    double flat = 0.0;
    for (const DecayRow& r : decay_experiment({}, 0.3, pp, 2.5, 0.01, 201).rows) {
        flat = std::max(flat, std::abs(r.asymmetry));
    }

    double swap = 0.0;
    const DecayReport a = decay_experiment(e, 0.3, pp.with_charge(-1.0), 2.5, 0.01, 201);
    const DecayReport b = decay_experiment(e * -1.0, 0.3, pp, 2.5, 0.01, 201);
    const bool same_grid = a.rows.size() == b.rows.size();
    for (std::size_t n = 0; same_grid && n < a.rows.size(); ++n) {
        swap = std::max({swap, std::abs(a.rows[n].rate_plus - b.rows[n].rate_minus),
                         std::abs(a.rows[n].rate_minus - b.rows[n].rate_plus),
                         std::abs(a.rows[n].asymmetry + b.rows[n].asymmetry)});
    }
    o.pass = sign && monotone && starts_at_zero && flat <= kRoundingTol && same_grid && swap <= kSwapTol;
    o.detail = "A(0) = 0, A < 0 after: " + std::string(sign && starts_at_zero ? "yes" : "no") +
               ", |A| strictly increasing: " + (monotone ? "yes" : "no") + " (final A = " +
               fmt(rep.rows.back().asymmetry) + "); E = 0 gives max |A| " + fmt(flat) +
               "; charge/field swap max difference " + fmt(swap);
    return o;
}

Outcome placement_equivalence(const std::vector<FieldModel>& models)
{
    Outcome o;
    double rhs = 0.0;
    Worst report;
    testing_support::Generator gen(1212);
    for (const GridPoint& gp : preset_grid(models)) {
        GeodesicState st;
        const Vec3 v = gen.vec3();
        st.x = gp.p;
        st.u = {gen.uniform(0.5, 1.5), v.x, v.y, v.z};
        const StateDerivative f = geodesic_rhs(st, *gp.model, kUnit, Placement::Full);
        const StateDerivative a = geodesic_rhs(st, *gp.model, kUnit, Placement::AlternativeFull);
        for (int i = 0; i < 8; ++i) {
            rhs = std::max(rhs, std::abs(f[i] - a[i]) / std::max(1.0, std::abs(f[i])));
        }
        const SymmetryReport rf = symmetry_report(*gp.model, gp.p, kUnit, Placement::Full);
        const SymmetryReport ra = symmetry_report(*gp.model, gp.p, kUnit, Placement::AlternativeFull);
        report.update(std::abs(rf.trace - ra.trace), rf.scale);
        for (int i = 0; i < 3; ++i) {
            report.update(std::abs(rf.mixed[i] - ra.mixed[i]), rf.scale);
            report.update(std::abs(rf.spatial[i] - ra.spatial[i]), rf.scale);
        }
    }
    o.pass = rhs <= kPlacementRhsTol && report.within(kPlacementReportTol);
    o.detail = "geodesic right-hand side max difference " + fmt(rhs) + ", symmetry reports " + fmt(report.value) +
               " x scale, over 6 presets x " + std::to_string(kPointsPerPreset) + " points";
    return o;
}

}  // namespace

int main()
{
    const std::vector<FieldModel> models = testing_support::all_presets();

    std::array<Outcome, 14> out;
    out[13] = oracle_gate();
    out[1] = table_reproduction();

    const RicciSweep r = sweep_ricci(models);
    const std::string gate = out[13].pass ? "" : " [oracle gate failed: not meaningful]";
    const std::string where = " over " + std::to_string(r.points) + " preset points";
    out[2].pass = out[13].pass && r.trace.within(kCoulombTol) && r.trace_imag.within(kCoulombImagTol);
    out[2].detail = "trace residual " + fmt(r.trace.value) + " x scale, imaginary part " +
                    fmt(r.trace_imag.value) + " x scale" + where + gate;
    out[3].pass = out[13].pass && r.mixed.within(kAmpereTol);
    out[3].detail = "mixed sum residual " + fmt(r.mixed.value) + " x scale" + where + gate;
    out[4].pass = out[13].pass && r.faraday.within(kFaradayTol) && r.oracle_faraday <= kFaradayOracleTol &&
                  r.violating_min > 0.0;
    out[4].detail = "Faraday-satisfying presets max " + fmt(r.faraday.value) +
                    " x scale; Faraday-violating gradient smallest |R_ij - R_ji| " + fmt(r.violating_min) +
                    " x scale, oracle difference " + fmt(r.oracle_faraday) + gate;
    out[5].pass = r.torsion_sum.within(kTorsionSumTol);
    out[5].detail = "epsilon-sum minus 2 kappa div B: " + fmt(r.torsion_sum.value) + " x scale" + where;
    out[6].pass = r.j_dot_e.within(kJdotETol) && r.continuity.within(kContinuityTol);
    out[6].detail = "J.E max " + fmt(r.j_dot_e.value) + " x scale (also on 100 random non-Maxwellian samples); "
                    "continuity residual " + fmt(r.continuity.value) + " x scale on Maxwell-consistent presets";

    out[7] = boost_table();
    out[8] = chern_form(models);
    out[9] = extended_force();
    out[10] = integrator();
    out[11] = decay_asymmetry();
    out[12] = placement_equivalence(models);

    static const char* const names[14] = {"",
                                          "table reproduction",
                                          "coulomb identity",
                                          "ampere identity",
                                          "faraday property",
                                          "torsion epsilon-sum",
                                          "continuity",
                                          "boost field transform",
                                          "curvature trace form",
                                          "extended force",
                                          "integrator",
                                          "decay asymmetry",
                                          "placement equivalence",
                                          "oracle gate"};
    int failed = 0;
    for (int n = 1; n <= 13; ++n) {
        std::printf("criterion %2d %s  %s: %s\n", n, out[n].pass ? "PASS" : "FAIL", names[n],
                    out[n].detail.c_str());
        failed += out[n].pass ? 0 : 1;
    }
    std::printf("%d of 13 criteria passed\n", 13 - failed);
    return std::min(failed, 125);
}
