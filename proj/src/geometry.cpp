#include "vortexbody/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace vortexbody {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;

std::vector<Vec2> curve_points(const FourierCoeffs& c, int n) {
    std::vector<Vec2> pts(n);
    for (int j = 0; j < n; ++j) {
        double phi = two_pi * j / n;
        double rho = c.radius(phi);
        if (!(rho > 0.0))
            throw InvalidGeometry("radius function must be strictly positive");
        pts[j] = {rho * std::cos(phi), rho * std::sin(phi)};
    }
    return pts;
}

void build_panels(BodyGeometry& g, std::vector<Vec2> pts) {
    const std::size_t n = pts.size();
    g.vertices = std::move(pts);
    g.panels.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        Panel& p = g.panels[j];
        p.a = g.vertices[j];
        p.b = g.vertices[(j + 1) % n];
        Vec2 d = p.b - p.a;
        p.ds = d.norm();
        if (!(p.ds > 0.0)) throw InvalidGeometry("degenerate panel");
        p.tau = d / p.ds;
        p.n = p.tau.perp();
        p.mid = 0.5 * (p.a + p.b);
    }

    // Shoelace area and centroid from the vertex polygon.
    double area2 = 0.0;
    Vec2 cm{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
        Vec2 u = g.vertices[j], v = g.vertices[(j + 1) % n];
        double c = u.cross(v);
        area2 += c;
        cm += (u + v) * c;
    }
    if (area2 <= 0.0) throw InvalidGeometry("boundary must be counterclockwise and simple");
    g.area = 0.5 * area2;
    cm = cm / (3.0 * area2);
    g.perimeter = 0.0;
    g.max_radius = 0.0;
    g.min_radius = std::numeric_limits<double>::max();
    for (std::size_t j = 0; j < n; ++j) {
        g.perimeter += g.panels[j].ds;
        g.max_radius = std::max(g.max_radius, g.vertices[j].norm());
        g.min_radius = std::min(g.min_radius, g.vertices[j].norm());
    }
    if (cm.norm() > 1e-8 * g.max_radius)
        throw InvalidGeometry("body centroid must sit at the origin");

    // Midpoint curvature from the tangent turn angles at both panel ends.
    g.curvature.resize(n);
    g.vertex_normals.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const Vec2 tm = g.panels[(j + n - 1) % n].tau;
        const Vec2 t0 = g.panels[j].tau;
        const Vec2 tp = g.panels[(j + 1) % n].tau;
        double turn_in = std::atan2(tm.cross(t0), tm.dot(t0));
        double turn_out = std::atan2(t0.cross(tp), t0.dot(tp));
        g.curvature[j] = 0.5 * (turn_in + turn_out) / g.panels[j].ds;
        Vec2 tv = tm + t0;
        g.vertex_normals[j] = tv.normalized().perp();
    }
}
} // namespace

double FourierCoeffs::radius(double phi) const {
    double rho = c0;
    for (std::size_t k = 0; k < modes.size(); ++k) {
        double kk = static_cast<double>(k + 1);
        rho += modes[k].first * std::cos(kk * phi) + modes[k].second * std::sin(kk * phi);
    }
    return rho;
}

double FourierCoeffs::radius_deriv(double phi) const {
    double d = 0.0;
    for (std::size_t k = 0; k < modes.size(); ++k) {
        double kk = static_cast<double>(k + 1);
        d += kk * (-modes[k].first * std::sin(kk * phi) + modes[k].second * std::cos(kk * phi));
    }
    return d;
}

FourierCoeffs FourierCoeffs::rotated(double angle) const {
    // rho'(phi) = rho(phi - angle): rotate each mode pair.
    FourierCoeffs out;
    out.c0 = c0;
    out.modes.resize(modes.size());
    for (std::size_t k = 0; k < modes.size(); ++k) {
        double kk = static_cast<double>(k + 1);
        double c = std::cos(kk * angle), s = std::sin(kk * angle);
        auto [a, b] = modes[k];
        out.modes[k] = {a * c - b * s, a * s + b * c};
    }
    return out;
}

double BodyGeometry::boundary_radius(double phi) const {
    return kind == ShapeKind::disk ? disk_radius : fourier.radius(phi);
}

bool BodyGeometry::contains(Vec2 x) const {
    double rho = x.norm();
    if (rho == 0.0) return true;
    return rho < boundary_radius(std::atan2(x.y, x.x));
}

double BodyGeometry::constant_density_inertia() const {
    // rho/4 * integral of |x|^4 dphi over the boundary angle (polar form).
    const int nq = 2048;
    double acc = 0.0;
    for (int j = 0; j < nq; ++j) {
        double phi = two_pi * (j + 0.5) / nq;
        double r = boundary_radius(phi);
        acc += 0.25 * r * r * r * r;
    }
    return density() * acc * two_pi / nq;
}

BodyGeometry make_disk(double radius, int n_panels, double mass, double inertia) {
    if (!(radius > 0.0)) throw std::invalid_argument("disk radius must be positive");
    if (!(mass > 0.0)) throw std::invalid_argument("mass must be positive");
    if (!(inertia > 0.0)) throw std::invalid_argument("inertia must be positive");
    if (n_panels < 8) throw std::invalid_argument("need at least 8 panels");
    BodyGeometry g;
    g.kind = ShapeKind::disk;
    g.disk_radius = radius;
    g.fourier.c0 = radius;
    g.mass = mass;
    g.inertia = inertia;
    std::vector<Vec2> pts(n_panels);
    for (int j = 0; j < n_panels; ++j) {
        double phi = two_pi * j / n_panels;
        pts[j] = {radius * std::cos(phi), radius * std::sin(phi)};
    }
    build_panels(g, std::move(pts));
    return g;
}

BodyGeometry make_fourier_body(const FourierCoeffs& coeffs, int n_panels,
                               double mass, double inertia) {
    if (!(mass > 0.0)) throw std::invalid_argument("mass must be positive");
    if (!(inertia > 0.0)) throw std::invalid_argument("inertia must be positive");
    if (n_panels < 8) throw std::invalid_argument("need at least 8 panels");
    // Reject a non-positive radius anywhere, not only at panel nodes.
    for (int j = 0; j < 4 * n_panels; ++j) {
        if (!(coeffs.radius(two_pi * j / (4 * n_panels)) > 0.0))
            throw InvalidGeometry("radius function must be strictly positive");
    }
    BodyGeometry g;
    g.kind = ShapeKind::fourier;
    g.fourier = coeffs;
    g.disk_radius = coeffs.c0;
    g.mass = mass;
    g.inertia = inertia;
    build_panels(g, curve_points(coeffs, n_panels));
    return g;
}

void RigidState::rotation(double& c, double& s) const {
    c = std::cos(theta);
    s = std::sin(theta);
}

Vec2 RigidState::body_to_lab(Vec2 x) const {
    double c, s;
    rotation(c, s);
    return {h.x + c * x.x - s * x.y, h.y + s * x.x + c * x.y};
}

Vec2 RigidState::lab_to_body(Vec2 x) const {
    double c, s;
    rotation(c, s);
    Vec2 d = x - h;
    return {c * d.x + s * d.y, -s * d.x + c * d.y};
}

Vec2 RigidState::vector_to_lab(Vec2 v) const {
    double c, s;
    rotation(c, s);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

} // namespace vortexbody
