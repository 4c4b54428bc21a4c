#pragma once

#include "vortexbody/diagnostics.hpp"
#include "vortexbody/dynamics.hpp"
#include "vortexbody/regularization.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vortexbody {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class VorticityPreset { none, gaussian, uniform, pair };

struct GeometryConfig {
    ShapeKind kind = ShapeKind::disk;
    double radius = 1.0;
    FourierCoeffs fourier;
    int n_panels = 128;
    double mass = 0.0;    // 0: defaults to density-1 value (area)
    double inertia = 0.0; // 0: defaults to the constant-density moment
    double rotate = 0.0;  // rotate a fourier shape before panelizing
    bool check_constant_density = false;
};

struct InitialConfig {
    VorticityPreset preset = VorticityPreset::none;
    Vec2 center{2.5, 0.0};
    double radius = 0.5;
    double amplitude = 1.0;
    double separation = 1.0; // pair preset: centers at center +- (0, s/2)
    double grid_h = 0.05;
    double p = 2.0;
    double gamma = 0.0;
    Vec2 ell0{0.0, 0.0};
    double r0 = 0.0;
};

struct NumericsConfig {
    double dt = 1e-3;
    double t_end = 1.0;
    double delta = -1.0; // <0: default 2 * grid_h (0 when no particles)
    double snapshot_interval = 0.05;
    double cfl_factor = 0.5;
    bool freeze_body = false;
    double energy_radius_factor = 8.0;
    int energy_nphi = 512;
    double energy_fine_dr = 0.0;
};

struct WeakConfig {
    WeakConvention convention = WeakConvention::rho_weighted;
    TimeRule time_rule = TimeRule::rectangle;
    double grid_h = 0.1;
    bool enabled = true;
};

struct ConvergeConfig {
    // fixed local velocity grid for the Cauchy check
    Vec2 window_center{0.0, 0.0}; // (0,0): defaults to the support center
    double window_half = 1.5;
    int window_n = 24;
};

struct SimConfig {
    GeometryConfig geometry;
    InitialConfig initial;
    NumericsConfig numerics;
    std::vector<int> mollification_levels;
    WeakConfig weak;
    ConvergeConfig converge;
    std::string output_dir = "out";
    std::optional<std::string> mode;

    std::string echo; // the parsed document, for run.json
};

/// Parses and validates a JSON config document. Unknown keys are rejected,
/// every error names the offending field.
SimConfig parse_config(const std::string& text);
SimConfig load_config_file(const std::string& path);

BodyGeometry build_geometry(const GeometryConfig& g);

/// Rasterizes the initial vorticity preset; the grid carries margin for the
/// smallest requested mollification level. Throws when the support touches
/// the body.
GridField build_initial_vorticity(const SimConfig& cfg, const BodyGeometry& body);

/// Radius of the disk (about the origin) containing the vorticity support.
double support_radius(const GridField& w);

VortexField build_field(const SimConfig& cfg, const BodyGeometry& body, const GridField& w);

} // namespace vortexbody
