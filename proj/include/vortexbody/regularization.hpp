#pragma once

#include "vortexbody/biot_savart.hpp"
#include "vortexbody/geometry.hpp"

#include <stdexcept>
#include <vector>

namespace vortexbody {

struct ResolutionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Scalar field on a uniform Cartesian grid, values at cell centers.
struct GridField {
    Vec2 origin{0.0, 0.0}; // center of cell (0, 0)
    double h = 1.0;
    int nx = 0, ny = 0;
    std::vector<double> values; // row-major, index j * nx + i

    double& at(int i, int j) { return values[static_cast<std::size_t>(j) * nx + i]; }
    double at(int i, int j) const { return values[static_cast<std::size_t>(j) * nx + i]; }
    Vec2 cell_center(int i, int j) const { return {origin.x + i * h, origin.y + j * h}; }
    double cell_area() const { return h * h; }

    double integral() const;
    double l1_norm() const;
    double lp_norm(double p) const;
};

GridField make_grid(Vec2 lo, Vec2 hi, double h);

/// True when the cell (center or a corner) touches the closed body.
bool cell_touches_body(const GridField& g, const BodyGeometry& body, int i, int j);

/// Zeroes cells touching the body; returns the discarded mass (integral).
double restrict_to_fluid(GridField& g, const BodyGeometry& body);

/// Convolution of the zero-extension of w0 with the bump mollifier
/// eta_n(x) = n^2 eta(n x), eta supported in the unit disk, discretely
/// normalized to unit mass. Result is restricted to the same grid.
GridField mollify(const GridField& w0, int n);

/// Mollify and restrict to the fluid side, logging the discarded mass.
GridField mollify(const GridField& w0, int n, const BodyGeometry& body);

/// beta^n = beta + integral(mollified - original).
double corrected_beta(double beta, const GridField& mollified, const GridField& original);

/// One particle per nonzero fluid cell: omega = cell value, A = cell area,
/// strength = omega * A. Sum of strengths equals the restricted grid integral.
VortexField sample_particles(const GridField& w, const BodyGeometry& body,
                             double delta, double gamma, double p_exponent);

} // namespace vortexbody
