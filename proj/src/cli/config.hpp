// Run configuration for the command-line tool: a flat "key = value" file
// with dotted keys, optional [section] headers and '#' comments. Every key is
// also accepted as a --dotted.key option, applied after the file.
#ifndef EMCONN_CLI_CONFIG_HPP
#define EMCONN_CLI_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "emconn/boost.hpp"
#include "emconn/geodesic.hpp"

namespace emconn::cli {

/// Invalid configuration; the tool exits with code 1.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Format { Text, Records };

struct RunConfig {
    // particle
    double q = 1.0;
    double m = 1.0;
    double c = kSpeedOfLight;
    std::optional<double> tau0;

    // field
    std::string preset = "uniform_E";
    PresetParams field_params;
    Placement placement = Placement::Full;

    // numeric
    std::optional<double> h;  ///< proper-time step; derived from the fields when unset
    double tau_end = 1.0;
    double tolerance = 1e-9;
    double fd_h = 1e-3;
    std::size_t samples = 201;

    // grid: explicit points win over random ones
    std::vector<SpacetimePoint> points;
    std::size_t count = 20;
    double extent = 1.0;
    std::uint64_t seed = 1;

    // launch
    SpacetimePoint launch_x;
    Vec3 launch_u;  ///< spatial u = v / c
    double launch_u0 = 1.0;
    double launch_beta = 0.3;

    int boost_axis = 3;
    double boost_beta = 0.1;

    std::string out_path;
    Format format = Format::Text;
    Dynamics dynamics = Dynamics::Geodesic;

    ParticleParams particle() const;
    FieldModel field() const;
    /// Explicit points, or `count` seeded random points in [-extent, extent]^4.
    std::vector<SpacetimePoint> grid() const;
};

struct KeyInfo {
    std::string name;
    std::string help;
};

/// All keys, in a stable order.
const std::vector<KeyInfo>& config_keys();

/// Applies one setting; `where` prefixes error messages (e.g. "run.cfg:3").
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value,
                   std::string_view where);

/// Parses config text; `source` names it in error messages.
void apply_config_text(RunConfig& cfg, std::string_view text, std::string_view source);
void apply_config_file(RunConfig& cfg, const std::string& path);

/// Checks cross-key consistency (preset parameters, ranges). Throws ConfigError.
void validate(const RunConfig& cfg);

}  // namespace emconn::cli

#endif
