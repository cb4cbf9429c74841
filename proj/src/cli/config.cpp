#include "config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

namespace emconn::cli {

namespace {

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

[[noreturn]] void fail(std::string_view where, std::string_view key, const std::string& what)
{
    std::string msg(where);
    if (!msg.empty()) {
        msg += ": ";
    }
    msg += std::string(key) + ": " + what;
    throw ConfigError(msg);
}

double to_double(std::string_view where, std::string_view key, const std::string& tok)
{
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (tok.empty() || end != tok.c_str() + tok.size() || errno == ERANGE || !std::isfinite(v)) {
        fail(where, key, "expected a finite number, got '" + tok + "'");
    }
    return v;
}

std::vector<double> to_list(std::string_view where, std::string_view key, std::string_view value)
{
    std::string text(value);
    std::replace(text.begin(), text.end(), ',', ' ');
    std::istringstream in(text);
    std::vector<double> out;
    std::string tok;
    while (in >> tok) {
        out.push_back(to_double(where, key, tok));
    }
    if (out.empty()) {
        fail(where, key, "expected at least one number");
    }
    return out;
}

std::vector<double> to_list(std::string_view where, std::string_view key, std::string_view value,
                            std::size_t n)
{
    std::vector<double> v = to_list(where, key, value);
    if (v.size() != n) {
        fail(where, key, "expected " + std::to_string(n) + " numbers, got " + std::to_string(v.size()));
    }
    return v;
}

double to_scalar(std::string_view where, std::string_view key, std::string_view value)
{
    return to_list(where, key, value, 1)[0];
}

double to_positive(std::string_view where, std::string_view key, std::string_view value)
{
    const double v = to_scalar(where, key, value);
    if (!(v > 0.0)) {
        fail(where, key, "must be positive");
    }
    return v;
}

std::uint64_t to_count(std::string_view where, std::string_view key, std::string_view value)
{
    const std::string tok = trim(value);
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 19) {
        fail(where, key, "expected a non-negative integer, got '" + tok + "'");
    }
    return std::stoull(tok);
}

SpacetimePoint to_point(std::string_view where, std::string_view key, std::string_view value)
{
    const std::vector<double> v = to_list(where, key, value, 4);
    return {{v[0], v[1], v[2], v[3]}};
}

Vec3 to_vec3(std::string_view where, std::string_view key, std::string_view value)
{
    const std::vector<double> v = to_list(where, key, value, 3);
    return {v[0], v[1], v[2]};
}

using Setter = std::function<void(RunConfig&, std::string_view, std::string_view, std::string_view)>;

struct KeyEntry {
    KeyInfo info;
    Setter set;
};

Setter field_param(std::string name)
{
    return [name](RunConfig& cfg, std::string_view where, std::string_view key, std::string_view value) {
        cfg.field_params[name] = to_list(where, key, value);
    };
}

const std::vector<KeyEntry>& registry()
{
    static const std::vector<KeyEntry> keys = {
        {{"particle.q", "charge q"},
         [](RunConfig& c, auto w, auto k, auto v) { c.q = to_scalar(w, k, v); }},
        {{"particle.m", "mass m (> 0)"},
         [](RunConfig& c, auto w, auto k, auto v) { c.m = to_positive(w, k, v); }},
        {{"particle.c", "speed of light (> 0); Gaussian cm/s by default"},
         [](RunConfig& c, auto w, auto k, auto v) { c.c = to_positive(w, k, v); }},
        {{"particle.tau0", "proper lifetime in s (> 0), needed by decay"},
         [](RunConfig& c, auto w, auto k, auto v) { c.tau0 = to_positive(w, k, v); }},
        {{"field.preset", "uniform_E, uniform_B, crossed_EB, plane_wave, coulomb or linear_gradient"},
         [](RunConfig& c, auto w, auto k, auto v) {
             const std::string name = trim(v);
             const auto& names = preset_names();
             if (std::find(names.begin(), names.end(), name) == names.end()) {
                 fail(w, k, "unknown preset '" + name + "'");
             }
             c.preset = name;
         }},
        {{"field.E", "uniform E (3 numbers)"}, field_param("E")},
        {{"field.B", "uniform B (3 numbers)"}, field_param("B")},
        {{"field.E0", "plane-wave amplitude"}, field_param("E0")},
        {{"field.k", "plane-wave wave number"}, field_param("k")},
        {{"field.polarization", "plane-wave polarization angle (rad)"}, field_param("polarization")},
        {{"field.phase", "plane-wave phase (rad)"}, field_param("phase")},
        {{"field.q_src", "Coulomb source charge"}, field_param("q_src")},
        {{"field.center", "Coulomb source position (3 numbers)"}, field_param("center")},
        {{"field.dE", "E gradient, 3x4 row-major d E_i / d x^a (12 numbers)"}, field_param("dE")},
        {{"field.dB", "B gradient, 3x4 row-major d B_i / d x^a (12 numbers)"}, field_param("dB")},
        {{"connection.placement", "lorentz_only, full or alternative_full"},
         [](RunConfig& c, auto w, auto k, auto v) {
             try {
                 c.placement = parse_placement(trim(v));
             } catch (const std::invalid_argument& e) {
                 fail(w, k, e.what());
             }
         }},
        {{"numeric.h", "proper-time step in s (> 0)"},
         [](RunConfig& c, auto w, auto k, auto v) { c.h = to_positive(w, k, v); }},
        {{"numeric.tau_end", "proper-time span in s (> 0)"},
         [](RunConfig& c, auto w, auto k, auto v) { c.tau_end = to_positive(w, k, v); }},
        {{"numeric.tolerance", "relative tolerance for identity checks (> 0)"},
         [](RunConfig& c, auto w, auto k, auto v) { c.tolerance = to_positive(w, k, v); }},
        {{"numeric.fd_h", "finite-difference step for exactness checks (> 0)"},
         [](RunConfig& c, auto w, auto k, auto v) { c.fd_h = to_positive(w, k, v); }},
        {{"numeric.samples", "rows in the decay report (>= 2)"},
         [](RunConfig& c, auto w, auto k, auto v) { c.samples = to_count(w, k, v); }},
        {{"grid.points", "explicit points x0,x,y,z separated by ';'"},
         [](RunConfig& c, auto w, auto k, auto v) {
             c.points.clear();
             std::string text(v);
             std::size_t start = 0;
             while (start <= text.size()) {
                 const std::size_t end = std::min(text.find(';', start), text.size());
                 const std::string item = trim(std::string_view(text).substr(start, end - start));
                 if (!item.empty()) {
                     c.points.push_back(to_point(w, k, item));
                 }
                 start = end + 1;
             }
         }},
        {{"grid.count", "number of random points when grid.points is empty"},
         [](RunConfig& c, auto w, auto k, auto v) { c.count = to_count(w, k, v); }},
        {{"grid.extent", "random points lie in [-extent, extent]^4"},
         [](RunConfig& c, auto w, auto k, auto v) { c.extent = to_positive(w, k, v); }},
        {{"grid.seed", "seed for random points"},
         [](RunConfig& c, auto w, auto k, auto v) { c.seed = to_count(w, k, v); }},
        {{"launch.x", "start point x0,x,y,z"},
         [](RunConfig& c, auto w, auto k, auto v) { c.launch_x = to_point(w, k, v); }},
        {{"launch.u", "start spatial u = v/c (3 numbers)"},
         [](RunConfig& c, auto w, auto k, auto v) { c.launch_u = to_vec3(w, k, v); }},
        {{"launch.u0", "start dt/dtau (> 0)"},
         [](RunConfig& c, auto w, auto k, auto v) { c.launch_u0 = to_positive(w, k, v); }},
        {{"launch.beta", "decay launch speed v/c (|beta| < 1)"},
         [](RunConfig& c, auto w, auto k, auto v) { c.launch_beta = to_scalar(w, k, v); }},
        {{"boost.axis", "boost axis 1, 2 or 3"},
         [](RunConfig& c, auto w, auto k, auto v) {
             const auto a = to_count(w, k, v);
             if (a < 1 || a > 3) {
                 fail(w, k, "must be 1, 2 or 3");
             }
             c.boost_axis = static_cast<int>(a);
         }},
        {{"boost.beta", "boost speed v/c (|beta| < 1)"},
         [](RunConfig& c, auto w, auto k, auto v) { c.boost_beta = to_scalar(w, k, v); }},
        {{"output.path", "report file; stdout when empty"},
         [](RunConfig& c, auto, auto, auto v) { c.out_path = trim(v); }},
        {{"output.format", "text or records"},
         [](RunConfig& c, auto w, auto k, auto v) {
             const std::string f = trim(v);
             if (f == "text") {
                 c.format = Format::Text;
             } else if (f == "records") {
                 c.format = Format::Records;
             } else {
                 fail(w, k, "expected text or records, got '" + f + "'");
             }
         }},
        {{"simulate.dynamics", "geodesic or classical"},
         [](RunConfig& c, auto w, auto k, auto v) {
             const std::string d = trim(v);
             if (d == "geodesic") {
                 c.dynamics = Dynamics::Geodesic;
             } else if (d == "classical") {
                 c.dynamics = Dynamics::Classical;
             } else {
                 fail(w, k, "expected geodesic or classical, got '" + d + "'");
             }
         }},
    };
    return keys;
}

}  // namespace

ParticleParams RunConfig::particle() const
{
    return ParticleParams(q, m, c, tau0);
}

FieldModel RunConfig::field() const
{
    return make_preset(preset, field_params);
}

std::vector<SpacetimePoint> RunConfig::grid() const
{
    if (!points.empty()) {
        return points;
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-extent, extent);
    std::vector<SpacetimePoint> out(count);
    for (auto& p : out) {
        for (int a = 0; a < 4; ++a) {
            p[a] = dist(rng);
        }
    }
    return out;
}

const std::vector<KeyInfo>& config_keys()
{
    static const std::vector<KeyInfo> keys = [] {
        std::vector<KeyInfo> out;
        for (const auto& k : registry()) {
            out.push_back(k.info);
        }
        return out;
    }();
    return keys;
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value,
                   std::string_view where)
{
    for (const auto& k : registry()) {
        if (k.info.name == key) {
            k.set(cfg, where, key, value);
            return;
        }
    }
    fail(where, key, "unknown key");
}

void apply_config_text(RunConfig& cfg, std::string_view text, std::string_view source)
{
    std::string section;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find('\n', start), text.size());
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        const std::string where = std::string(source) + ":" + std::to_string(line_no);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        const std::string content = trim(line);
        if (content.empty()) {
            continue;
        }
        if (content.front() == '[') {
            if (content.back() != ']' || content.size() < 3) {
                throw ConfigError(where + ": malformed section header '" + content + "'");
            }
            section = trim(std::string_view(content).substr(1, content.size() - 2));
            continue;
        }
        const auto eq = content.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(where + ": expected 'key = value', got '" + content + "'");
        }
        std::string key = trim(std::string_view(content).substr(0, eq));
        const std::string value = trim(std::string_view(content).substr(eq + 1));
        if (key.empty()) {
            throw ConfigError(where + ": missing key");
        }
        if (!section.empty() && key.find('.') == std::string::npos) {
            key = section + "." + key;
        }
        apply_setting(cfg, key, value, where);
    }
}

void apply_config_file(RunConfig& cfg, const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError(path + ": cannot open config file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    apply_config_text(cfg, buf.str(), path);
}

void validate(const RunConfig& cfg)
{
    try {
        (void)cfg.particle();
        (void)cfg.field();
        (void)BoostSpec(cfg.boost_axis, cfg.boost_beta);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (!(std::abs(cfg.launch_beta) < 1.0)) {
        throw ConfigError("launch.beta: must satisfy |beta| < 1");
    }
    if (cfg.samples < 2) {
        throw ConfigError("numeric.samples: must be at least 2");
    }
}

}  // namespace emconn::cli
