#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "emconn/chern.hpp"
#include "emconn/curvature.hpp"

namespace emconn::cli {

namespace {

std::string num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
    return buf;
}

/// One line of space-separated key=value pairs.
class Record {
public:
    Record& add(std::string key, double v) { return add(std::move(key), num(v)); }
    Record& add(std::string key, std::string v)
    {
        fields_.emplace_back(std::move(key), std::move(v));
        return *this;
    }
    void write(std::ostream& os) const
    {
        for (std::size_t n = 0; n < fields_.size(); ++n) {
            os << (n ? " " : "") << fields_[n].first << '=' << fields_[n].second;
        }
        os << '\n';
    }

private:
    std::vector<std::pair<std::string, std::string>> fields_;
};

void write_header(std::ostream& os, const RunConfig& cfg, std::string_view command)
{
    if (cfg.format == Format::Records) {
        Record()
            .add("schema_version", std::to_string(kSchemaVersion))
            .add("command", std::string(command))
            .add("seed", std::to_string(cfg.seed))
            .add("preset", cfg.preset)
            .add("placement", std::string(to_string(cfg.placement)))
            .write(os);
        return;
    }
    os << "# emconn " << command << '\n'
       << "# schema_version = " << kSchemaVersion << '\n'
       << "# seed = " << cfg.seed << '\n'
       << "# preset = " << cfg.preset << '\n'
       << "# placement = " << to_string(cfg.placement) << '\n';
}

void add_point(Record& r, const SpacetimePoint& p)
{
    r.add("x0", p[0]).add("x", p[1]).add("y", p[2]).add("z", p[3]);
}

FieldSample uniform_sample(const RunConfig& cfg, std::string_view command)
{
    const FieldModel model = cfg.field();
    if (!model.uniform()) {
        throw ConfigError(std::string(command) + " needs a uniform field; preset '" + cfg.preset +
                          "' is not uniform");
    }
    return eval_field(model, {});
}

double step_for(const RunConfig& cfg, const FieldSample& s)
{
    return cfg.h ? *cfg.h : default_step(s, cfg.particle(), cfg.tau_end);
}

// One identity check over the grid, tracked as |residual| / scale.
struct Check {
    std::string name;
    double worst = 0.0;
    std::size_t worst_point = 0;

    void update(double residual, double scale, std::size_t point)
    {
        const double rel = std::abs(residual) / scale;
        if (rel > worst || std::isnan(rel)) {
            worst = rel;
            worst_point = point;
        }
    }
};

}  // namespace

int cmd_table(const RunConfig& cfg, bool torsion_flag, std::ostream& out, std::ostream&)
{
    const SpacetimePoint p = cfg.points.empty() ? SpacetimePoint{} : cfg.points.front();
    const Connection g = build_connection(eval_field(cfg.field(), p), cfg.particle(), cfg.placement);
    const std::vector<TableRow> rows = torsion_flag ? torsion_rows(torsion(g)) : nonzero_rows(g);

    write_header(out, cfg, torsion_flag ? "table_torsion" : "table");
    if (cfg.format == Format::Text || rows.empty()) {
        if (cfg.format == Format::Text) {
            out << "# " << (torsion_flag ? "torsion T^i_jk (j < k)" : "connection G^i_jk")
                << " at x0,x,y,z = " << to_string(p) << "\n# i j k re im\n";
        }
        write_table(out, rows);
        return kExitOk;
    }
    for (const TableRow& r : rows) {
        Record()
            .add("i", std::to_string(r.i))
            .add("j", std::to_string(r.j))
            .add("k", std::to_string(r.k))
            .add("re", r.value.real())
            .add("im", r.value.imag())
            .write(out);
    }
    return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const std::vector<SpacetimePoint> grid = cfg.grid();
    if (grid.empty()) {
        throw ConfigError("verify: the grid is empty (set grid.points or grid.count > 0)");
    }
    const FieldModel model = cfg.field();
    const ParticleParams pp = cfg.particle();
    const bool continuity = model.source_free();

    std::vector<Check> checks = {{"coulomb.trace"},       {"coulomb.trace_imag"},
                                 {"ampere.mixed_1"},      {"ampere.mixed_2"},
                                 {"ampere.mixed_3"},      {"faraday.spatial_12"},
                                 {"faraday.spatial_31"},  {"faraday.spatial_23"},
                                 {"torsion.epsilon_sum"}, {"continuity.residual"},
                                 {"continuity.j_dot_e"}};
    static const char* const spatial_keys[3] = {"spatial_12", "spatial_31", "spatial_23"};

    write_header(out, cfg, "verify");
    for (std::size_t n = 0; n < grid.size(); ++n) {
        const FieldSample s = eval_field(model, grid[n]);
        const SymmetryReport rep = symmetry_report(s, pp, cfg.placement);
        const ConnectionJet jet = build_jet(s, pp, cfg.placement);
        const CScalar eps_sum = torsion_epsilon_sum(jet);
        const double eps_expected = 2.0 * pp.kappa() * s.div_b();

        checks[0].update(std::abs(rep.trace_residual()), rep.scale, n);
        checks[1].update(rep.trace.imag(), rep.scale, n);
        for (int i = 0; i < 3; ++i) {
            checks[2 + i].update(std::abs(rep.mixed_residual(i)), rep.scale, n);
            // Faraday's law is the hypothesis: the combination itself must vanish
            checks[5 + i].update(std::abs(rep.spatial[i]), rep.scale, n);
        }
        checks[8].update(std::abs(eps_sum - eps_expected), rep.scale, n);

        Record r;
        r.add("point", std::to_string(n));
        add_point(r, grid[n]);
        r.add("trace_re", rep.trace.real()).add("trace_im", rep.trace.imag());
        for (int i = 0; i < 3; ++i) {
            r.add("mixed_" + std::to_string(i + 1), rep.mixed[i].real());
        }
        for (int i = 0; i < 3; ++i) {
            r.add(spatial_keys[i], rep.spatial[i].real());
        }
        r.add("epsilon_sum", eps_sum.real());
        r.add("residual_trace", std::abs(rep.trace_residual()));
        for (int i = 0; i < 3; ++i) {
            r.add("residual_mixed_" + std::to_string(i + 1), std::abs(rep.mixed_residual(i)));
        }
        for (int i = 0; i < 3; ++i) {
            r.add(std::string("residual_") + spatial_keys[i], std::abs(rep.spatial_residual(i)));
        }
        r.add("residual_epsilon_sum", std::abs(eps_sum - eps_expected));
        if (continuity) {
            const ContinuityResult c = continuity_residual(s, pp);
            checks[9].update(c.residual, c.scale, n);
            checks[10].update(c.j_dot_e, c.j_dot_e_scale, n);
            r.add("residual_continuity", std::abs(c.residual)).add("j_dot_e", c.j_dot_e);
        }
        r.add("scale", rep.scale);
        if (cfg.format == Format::Records) {
            r.write(out);
        }
    }
    if (!continuity) {
        checks.resize(9);
    }

    const Check* worst = nullptr;
    for (const Check& c : checks) {
        const bool ok = c.worst <= cfg.tolerance;
        if (cfg.format == Format::Records) {
            Record()
                .add("identity", c.name)
                .add("max_relative_residual", c.worst)
                .add("worst_point", std::to_string(c.worst_point))
                .add("status", ok ? "pass" : "breach")
                .write(out);
        }
        if (!ok && (!worst || c.worst > worst->worst || std::isnan(c.worst))) {
            worst = &c;
        }
    }
    if (cfg.format == Format::Text) {
        out << "# points = " << grid.size() << "\n# tolerance = " << num(cfg.tolerance) << '\n';
        if (!continuity) {
            out << "# continuity skipped: preset is not source free\n";
        }
        char line[160];
        std::snprintf(line, sizeof line, "%-22s %-24s %-11s %s\n", "identity", "max_relative_residual",
                      "worst_point", "status");
        out << line;
        for (const Check& c : checks) {
            std::snprintf(line, sizeof line, "%-22s %-24s %-11zu %s\n", c.name.c_str(), num(c.worst).c_str(),
                          c.worst_point, c.worst <= cfg.tolerance ? "pass" : "breach");
            out << line;
        }
    }
    if (worst) {
        err << "identity breach: " << worst->name << " at point " << worst->worst_point
            << " (relative residual " << num(worst->worst) << " > tolerance " << num(cfg.tolerance) << ")\n";
        return kExitBreach;
    }
    return kExitOk;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const FieldModel model = cfg.field();
    const ParticleParams pp = cfg.particle();
    GeodesicState st0;
    st0.x = cfg.launch_x;
    st0.u = {cfg.launch_u0, cfg.launch_u.x, cfg.launch_u.y, cfg.launch_u.z};
    const double h = step_for(cfg, eval_field(model, st0.x));

    write_header(out, cfg, "simulate");
    const bool text = cfg.format == Format::Text;
    if (text) {
        out << "# dynamics = " << (cfg.dynamics == Dynamics::Geodesic ? "geodesic" : "classical") << '\n'
            << "# h = " << num(h) << "\n# tau_end = " << num(cfg.tau_end) << '\n'
            << "# units: tau [s], t [s], x y z [length units of c], u0..u3 [dimensionless]\n"
            << "tau,t,x,y,z,u0,u1,u2,u3\n";
    }
    auto write_rows = [&](const Trajectory& traj) {
        for (const TrajectorySample& s : traj.samples) {
            const double row[9] = {s.tau,          s.lab_time(pp.c()), s.state.x[1], s.state.x[2], s.state.x[3],
                                   s.state.u[0],   s.state.u[1],       s.state.u[2], s.state.u[3]};
            static const char* const keys[9] = {"tau", "t", "x", "y", "z", "u0", "u1", "u2", "u3"};
            if (text) {
                for (int n = 0; n < 9; ++n) {
                    out << (n ? "," : "") << num(row[n]);
                }
                out << '\n';
            } else {
                Record r;
                for (int n = 0; n < 9; ++n) {
                    r.add(keys[n], row[n]);
                }
                r.write(out);
            }
        }
    };
    auto write_footer = [&](const Trajectory& traj) {
        const auto& first = traj.samples.front().state;
        const double v0 = norm(first.spatial_u());
        double speed_drift = 0.0;
        double u0_drift = 0.0;
        for (const TrajectorySample& s : traj.samples) {
            const double dv = std::abs(norm(s.state.spatial_u()) - v0);
            speed_drift = std::max(speed_drift, v0 > 0.0 ? dv / v0 : dv);
            u0_drift = std::max(u0_drift, std::abs(s.state.u[0] - first.u[0]) / first.u[0]);
        }
        if (text) {
            out << "# steps = " << traj.samples.size() - 1 << "\n# speed_drift = " << num(speed_drift)
                << "\n# u0_drift = " << num(u0_drift) << '\n';
        } else {
            Record()
                .add("steps", std::to_string(traj.samples.size() - 1))
                .add("speed_drift", speed_drift)
                .add("u0_drift", u0_drift)
                .write(out);
        }
    };

    try {
        const Trajectory traj = integrate(cfg.dynamics, st0, model, pp, cfg.tau_end, h, cfg.placement);
        write_rows(traj);
        write_footer(traj);
        return kExitOk;
    } catch (const IntegrationError& e) {
        write_rows(e.partial());
        const TrajectorySample& last = e.last_good();
        out << "# aborted: " << e.what() << '\n';
        err << "runtime abort: " << e.what() << "\nlast good state: tau = " << num(last.tau)
            << ", x0,x,y,z = " << to_string(last.state.x) << ", u = " << num(last.state.u[0]) << ","
            << num(last.state.u[1]) << "," << num(last.state.u[2]) << "," << num(last.state.u[3]) << '\n';
        return kExitAbort;
    }
}

int cmd_decay(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const FieldSample s = uniform_sample(cfg, "decay");
    if (norm(s.b) != 0.0) {
        throw ConfigError("decay needs a purely electric field; B must be zero");
    }
    if (!cfg.tau0) {
        throw ConfigError("decay needs particle.tau0");
    }
    const ParticleParams pp = cfg.particle();
    const double h = step_for(cfg, s);

    DecayReport rep;
    try {
        rep = decay_experiment(s.e, cfg.launch_beta, pp, cfg.tau_end, h, cfg.samples);
    } catch (const IntegrationError& e) {
        const TrajectorySample& last = e.last_good();
        err << "runtime abort: " << e.what() << "\nlast good state: tau = " << num(last.tau)
            << ", x0,x,y,z = " << to_string(last.state.x) << '\n';
        return kExitAbort;
    }

    write_header(out, cfg, "decay");
    static const char* const keys[8] = {"t",          "tau_plus",      "tau_minus",      "rate_plus",
                                        "rate_minus", "survival_plus", "survival_minus", "asymmetry"};
    if (cfg.format == Format::Text) {
        out << "# beta = " << num(cfg.launch_beta) << "\n# h = " << num(h) << '\n'
            << "# units: t, tau_plus, tau_minus [s]; rates [1/s]; survival, asymmetry [dimensionless]\n"
            << "t,tau_plus,tau_minus,rate_plus,rate_minus,survival_plus,survival_minus,asymmetry\n";
    }
    for (const DecayRow& r : rep.rows) {
        const double row[8] = {r.t,          r.tau_plus,      r.tau_minus,      r.rate_plus,
                               r.rate_minus, r.survival_plus, r.survival_minus, r.asymmetry};
        if (cfg.format == Format::Text) {
            for (int n = 0; n < 8; ++n) {
                out << (n ? "," : "") << num(row[n]);
            }
            out << '\n';
        } else {
            Record rec;
            for (int n = 0; n < 8; ++n) {
                rec.add(keys[n], row[n]);
            }
            rec.write(out);
        }
    }
    return kExitOk;
}

int cmd_boost(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const FieldSample s = uniform_sample(cfg, "boost");
    const ParticleParams pp = cfg.particle();
    if (pp.kappa() == 0.0) {
        throw ConfigError("boost needs a nonzero particle.q to read fields back from the connection");
    }
    const BoostFieldReport rep = boost_field_check(s.e, s.b, BoostSpec(cfg.boost_axis, cfg.boost_beta), pp);

    write_header(out, cfg, "boost");
    if (cfg.format == Format::Text) {
        out << "# axis = " << cfg.boost_axis << "\n# beta = " << num(rep.beta) << "\n# gamma = " << num(rep.gamma)
            << "\n# bound = " << num(rep.bound) << '\n'
            << "row,initial,observed,expected,expected_gamma,deviation\n";
        for (const BoostFieldRow& r : rep.rows) {
            out << r.label << ',' << num(r.initial) << ',' << num(r.observed) << ',' << num(r.expected) << ','
                << num(r.expected_gamma) << ',' << num(r.deviation) << '\n';
        }
    } else {
        for (const BoostFieldRow& r : rep.rows) {
            Record()
                .add("row", r.label)
                .add("initial", r.initial)
                .add("observed", r.observed)
                .add("expected", r.expected)
                .add("expected_gamma", r.expected_gamma)
                .add("deviation", r.deviation)
                .write(out);
        }
        Record()
            .add("axis", std::to_string(cfg.boost_axis))
            .add("beta", rep.beta)
            .add("gamma", rep.gamma)
            .add("bound", rep.bound)
            .add("max_deviation", rep.max_deviation())
            .write(out);
    }
    if (rep.max_deviation() > rep.bound) {
        err << "identity breach: boost deviation " << num(rep.max_deviation()) << " exceeds bound "
            << num(rep.bound) << '\n';
        return kExitBreach;
    }
    return kExitOk;
}

int cmd_chern(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const std::vector<SpacetimePoint> grid = cfg.grid();
    if (grid.empty()) {
        throw ConfigError("chern: the grid is empty (set grid.points or grid.count > 0)");
    }
    const FieldModel model = cfg.field();
    const ParticleParams pp = cfg.particle();
    if (pp.kappa() == 0.0) {
        throw ConfigError("chern needs a nonzero particle.q to normalize the trace form");
    }

    write_header(out, cfg, "chern");
    const bool text = cfg.format == Format::Text;
    if (text) {
        out << "# trace 2-form / kappa in the physical-time basis\n# point";
        for (auto label : TimeBasisForm::kLabels) {
            out << ',' << label;
        }
        out << ",deviation_closed_form,exactness_deviation,exactness_ratio\n";
    }
    double worst = 0.0;
    std::size_t worst_point = 0;
    for (std::size_t n = 0; n < grid.size(); ++n) {
        const FieldSample s = eval_field(model, grid[n]);
        const CurvatureTraceForm w = curvature_trace_form(s, pp, cfg.placement);
        const TwoForm expr = closed_form_trace(s, pp.c());
        const double dev = w.normalized.max_abs_difference(expr) / std::max(1.0, expr.max_abs());
        if (dev > worst || std::isnan(dev)) {
            worst = dev;
            worst_point = n;
        }
        const ExactnessReport ex = exactness_check(model, grid[n], pp, cfg.fd_h);
        const TimeBasisForm f = to_time_basis(w.normalized, pp.c());
        if (text) {
            out << n;
            for (double v : f.coeff) {
                out << ',' << num(v);
            }
            out << ',' << num(dev) << ',' << num(ex.deviation) << ',' << num(ex.ratio) << '\n';
        } else {
            Record r;
            r.add("point", std::to_string(n));
            add_point(r, grid[n]);
            for (std::size_t i = 0; i < 6; ++i) {
                r.add(std::string(TimeBasisForm::kLabels[i]), f.coeff[i]);
            }
            r.add("deviation_closed_form", dev)
                .add("exactness_deviation", ex.deviation)
                .add("exactness_ratio", ex.ratio)
                .write(out);
        }
    }
    if (!(worst <= cfg.tolerance)) {
        err << "identity breach: chern trace form differs from the closed form at point " << worst_point
            << " (relative deviation " << num(worst) << " > tolerance " << num(cfg.tolerance) << ")\n";
        return kExitBreach;
    }
    return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Electromagnetic connection toolkit: connection tables, curvature identities, "
                 "geodesic motion, boosts and the curvature trace form."};
    app.name("emconn");
    app.require_subcommand(1, 1);

    struct Options {
        std::string config;
        std::map<std::string, std::string> keys;
        std::string out;
        std::string format;
        std::string seed;
        std::string tolerance;
        bool torsion = false;
    };
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config, "configuration file (key = value)");
        sub->add_option("--out", opt.out, "report file (same as output.path)");
        sub->add_option("--format", opt.format, "text or records (same as output.format)");
        sub->add_option("--seed", opt.seed, "grid seed (same as grid.seed)");
        sub->add_option("--tolerance", opt.tolerance, "identity tolerance (same as numeric.tolerance)");
        for (const KeyInfo& k : config_keys()) {
            sub->add_option("--" + k.name, opt.keys[k.name], k.help);
        }
    };
    CLI::App* table = app.add_subcommand("table", "dump connection or torsion components at a point");
    table->add_flag("--torsion", opt.torsion, "dump torsion instead of the connection");
    CLI::App* verify = app.add_subcommand("verify", "check the curvature identities over a grid");
    CLI::App* simulate = app.add_subcommand("simulate", "integrate a trajectory");
    CLI::App* decay = app.add_subcommand("decay", "decay rates of opposite launches along E");
    CLI::App* boost = app.add_subcommand("boost", "boost the connection and compare with the field transform");
    CLI::App* chern = app.add_subcommand("chern", "curvature trace 2-form over a grid");
    for (CLI::App* sub : {table, verify, simulate, decay, boost, chern}) {
        add_common(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
    CLI::App* sub = app.get_subcommands().front();

    RunConfig cfg;
    try {
        if (!opt.config.empty()) {
            apply_config_file(cfg, opt.config);
        }
        for (const KeyInfo& k : config_keys()) {
            if (sub->count("--" + k.name) > 0) {
                apply_setting(cfg, k.name, opt.keys[k.name], "--" + k.name);
            }
        }
        if (sub->count("--out") > 0) apply_setting(cfg, "output.path", opt.out, "--out");
        if (sub->count("--format") > 0) apply_setting(cfg, "output.format", opt.format, "--format");
        if (sub->count("--seed") > 0) apply_setting(cfg, "grid.seed", opt.seed, "--seed");
        if (sub->count("--tolerance") > 0) apply_setting(cfg, "numeric.tolerance", opt.tolerance, "--tolerance");
        validate(cfg);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    }

    // Reports are buffered so a failed run never leaves a half-written file.
    std::ostringstream report;
    int code = kExitOk;
    try {
        const std::string name = sub->get_name();
        if (name == "table") {
            code = cmd_table(cfg, opt.torsion, report, err);
        } else if (name == "verify") {
            code = cmd_verify(cfg, report, err);
        } else if (name == "simulate") {
            code = cmd_simulate(cfg, report, err);
        } else if (name == "decay") {
            code = cmd_decay(cfg, report, err);
        } else if (name == "boost") {
            code = cmd_boost(cfg, report, err);
        } else {
            code = cmd_chern(cfg, report, err);
        }
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "runtime abort: " << e.what() << '\n';
        return kExitAbort;
    }

    if (cfg.out_path.empty()) {
        out << report.str();
    } else {
        std::ofstream file(cfg.out_path, std::ios::binary | std::ios::trunc);
        if (!file || !(file << report.str()) || !file.flush()) {
            err << "runtime abort: cannot write " << cfg.out_path << '\n';
            return kExitAbort;
        }
    }
    return code;
}

}  // namespace emconn::cli
