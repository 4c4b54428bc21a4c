#pragma once

#include "vortexbody/vec2.hpp"

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace vortexbody {

struct InvalidGeometry : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Flat boundary panel. The boundary is traversed counterclockwise, so the
/// unit normal n = tau.perp() points out of the fluid (into the body).
struct Panel {
    Vec2 a, b;     // endpoints, CCW order
    Vec2 mid;      // chord midpoint
    Vec2 n;        // unit normal, into the body
    Vec2 tau;      // unit tangent, CCW
    double ds = 0; // chord length
};

enum class ShapeKind { disk, fourier };

/// Radius function rho(phi) = c0 + sum_k (ck cos k phi + sk sin k phi).
struct FourierCoeffs {
    double c0 = 1.0;
    std::vector<std::pair<double, double>> modes; // (cos, sin) for k = 1,2,...

    double radius(double phi) const;
    double radius_deriv(double phi) const;
    /// Same boundary rotated by angle (useful for frame-equivariance checks).
    FourierCoeffs rotated(double angle) const;
};

/// Panelized rigid body, fixed in the body frame with its center of mass at
/// the origin. Mass and inertia are independent inputs; the density is
/// constant, rho = m / area.
class BodyGeometry {
  public:
    ShapeKind kind = ShapeKind::disk;
    double disk_radius = 1.0;   // valid when kind == disk
    FourierCoeffs fourier;      // valid when kind == fourier

    std::vector<Panel> panels;
    std::vector<Vec2> vertices;        // panel start points, CCW
    std::vector<Vec2> vertex_normals;  // unit, into the body
    std::vector<double> curvature;     // per-panel estimate at the midpoint

    double mass = 1.0;
    double inertia = 1.0;
    double area = 0.0;
    double perimeter = 0.0;
    double max_radius = 0.0; // circumscribed circle radius
    double min_radius = 0.0;

    std::size_t n_panels() const { return panels.size(); }
    double density() const { return mass / area; }

    /// Exact boundary radius in direction phi (both shapes are star-shaped).
    double boundary_radius(double phi) const;
    /// True when x lies strictly inside the body.
    bool contains(Vec2 x) const;
    /// rho * integral of |x|^2 over the body, for a constant-density check.
    double constant_density_inertia() const;
};

BodyGeometry make_disk(double radius, int n_panels, double mass, double inertia);
BodyGeometry make_fourier_body(const FourierCoeffs& coeffs, int n_panels,
                               double mass, double inertia);

/// Body position and velocity. theta(0) = 0 and h(0) = 0 for states built
/// from initial data; ell is the linear velocity expressed in the body frame.
struct RigidState {
    Vec2 h{0.0, 0.0};
    double theta = 0.0;
    Vec2 ell{0.0, 0.0};
    double r = 0.0;
    double t = 0.0;

    /// Rotation matrix Q(theta) as columns (c, s), (-s, c).
    void rotation(double& c, double& s) const;
    Vec2 body_to_lab(Vec2 x_body) const;
    Vec2 lab_to_body(Vec2 x_lab) const;
    /// Rotates a body-frame vector to the lab frame (no translation).
    Vec2 vector_to_lab(Vec2 v_body) const;
};

/// Midpoint-rule boundary quadrature: sum of f(mid) * ds over panels.
template <typename F>
auto boundary_integral(const BodyGeometry& body, F&& f)
    -> decltype(f(std::declval<const Panel&>())) {
    using R = decltype(f(std::declval<const Panel&>()));
    R acc{};
    for (const Panel& p : body.panels) acc += f(p) * p.ds;
    return acc;
}

} // namespace vortexbody
