#include "vortexbody/biot_savart.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vortexbody {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;

inline Vec2 blob_kernel(Vec2 d, double d2) {
    const double r2 = d.norm2() + d2;
    if (r2 == 0.0) return {0.0, 0.0};
    return d.perp() / (two_pi * r2);
}

// Blob sum with the disk image system folded in when applicable.
Vec2 free_sum(const VortexField& f, bool images, double a, Vec2 x) {
    Vec2 u{0.0, 0.0};
    const double d2 = f.delta * f.delta;
    const std::size_t n = f.size();
    if (images) {
        const double a2 = a * a;
        for (std::size_t j = 0; j < n; ++j) {
            const Vec2 y = f.pos[j];
            u += f.strength[j] * blob_kernel(x - y, d2);
            const Vec2 yi = y * (a2 / y.norm2());
            u -= f.strength[j] * blob_kernel(x - yi, d2);
        }
    } else {
        for (std::size_t j = 0; j < n; ++j)
            u += f.strength[j] * blob_kernel(x - f.pos[j], d2);
    }
    return u;
}

void check_domain(const BodyGeometry& body, Vec2 x, const char* what) {
    if (body.contains(x)) throw std::domain_error(std::string(what) + ": point inside the body");
}
} // namespace

void VortexField::add_particle(Vec2 x, double omega, double cell_area) {
    pos.push_back(x);
    vorticity.push_back(omega);
    area.push_back(cell_area);
    strength.push_back(omega * cell_area);
}

double VortexField::alpha() const {
    double a = 0.0;
    for (double g : strength) a += g;
    return a;
}

BodyCorrection compute_body_correction(const PotentialTables& t,
                                       const BodyGeometry& body,
                                       const VortexField& field) {
    BodyCorrection corr;
    corr.alpha = field.alpha();
    corr.images = t.is_disk;
    if (!corr.images) {
        const std::size_t n = body.n_panels();
        std::vector<double> flux(n, 0.0);
        const double d2 = field.delta * field.delta;
        for (std::size_t i = 0; i < n; ++i) {
            Vec2 u{0.0, 0.0};
            for (std::size_t j = 0; j < field.size(); ++j)
                u += field.strength[j] * blob_kernel(body.vertices[i] - field.pos[j], d2);
            flux[i] = -u.dot(body.vertex_normals[i]);
        }
        corr.sheet = t.solve_sheet(flux, -corr.alpha);
    }
    return corr;
}

Vec2 kernel_velocity(const PotentialTables& t, const BodyGeometry& body,
                     const VortexField& field, const BodyCorrection& corr, Vec2 x) {
    check_domain(body, x, "kernel_velocity");
    Vec2 u = free_sum(field, corr.images, t.disk_radius, x);
    if (!corr.images) u += sheet_velocity(body, corr.sheet, x);
    return u;
}

Vec2 total_velocity(const PotentialTables& t, const BodyGeometry& body,
                    const VortexField& field, const BodyCorrection& corr,
                    Vec2 ell, double r, Vec2 x) {
    Vec2 u = kernel_velocity(t, body, field, corr, x);
    u += (field.circulation + corr.alpha) * harmonic_field(t, body, x);
    const auto grads = kirchhoff_gradients(t, body, x);
    u += ell.x * grads[0] + ell.y * grads[1] + r * grads[2];
    return u;
}

Vec2 relative_velocity(const PotentialTables& t, const BodyGeometry& body,
                       const VortexField& field, const BodyCorrection& corr,
                       Vec2 ell, double r, Vec2 x) {
    return total_velocity(t, body, field, corr, ell, r, x) - ell - r * x.perp();
}

Vec2 finite_energy_velocity(const PotentialTables& t, const BodyGeometry& body,
                            const VortexField& field, const BodyCorrection& corr,
                            Vec2 ell, double r, Vec2 x) {
    // v - beta H: the H terms drop exactly, leaving K[omega] plus the
    // Kirchhoff lift.
    Vec2 u = kernel_velocity(t, body, field, corr, x);
    const auto grads = kirchhoff_gradients(t, body, x);
    u += ell.x * grads[0] + ell.y * grads[1] + r * grads[2];
    return u;
}

Vec2 kernel_velocity(const PotentialTables& t, const BodyGeometry& body,
                     const VortexField& field, Vec2 x) {
    return kernel_velocity(t, body, field, compute_body_correction(t, body, field), x);
}

Vec2 total_velocity(const PotentialTables& t, const BodyGeometry& body,
                    const VortexField& field, Vec2 ell, double r, Vec2 x) {
    return total_velocity(t, body, field, compute_body_correction(t, body, field), ell, r, x);
}

Vec2 relative_velocity(const PotentialTables& t, const BodyGeometry& body,
                       const VortexField& field, Vec2 ell, double r, Vec2 x) {
    return relative_velocity(t, body, field, compute_body_correction(t, body, field), ell, r, x);
}

Vec2 kernel_velocity_boundary(const PotentialTables& t, const BodyGeometry& body,
                              const VortexField& field, const BodyCorrection& corr,
                              std::size_t i) {
    Vec2 u = free_sum(field, corr.images, t.disk_radius, t.nodes[i].x);
    if (!corr.images) u += sheet_velocity_boundary(body, corr.sheet, i);
    return u;
}

Vec2 total_velocity_boundary(const PotentialTables& t, const BodyGeometry& body,
                             const VortexField& field, const BodyCorrection& corr,
                             Vec2 ell, double r, std::size_t i) {
    Vec2 u = kernel_velocity_boundary(t, body, field, corr, i);
    u += (field.circulation + corr.alpha) * harmonic_boundary(t, body, i);
    const auto grads = kirchhoff_boundary(t, body, i);
    u += ell.x * grads[0] + ell.y * grads[1] + r * grads[2];
    return u;
}

double boundary_normal_residual(const PotentialTables& t, const BodyGeometry& body,
                                const VortexField& field, const BodyCorrection& corr,
                                Vec2 ell, double r) {
    double worst = 0.0;
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        const BoundaryNode& bn = t.nodes[i];
        Vec2 v = total_velocity_boundary(t, body, field, corr, ell, r, i);
        Vec2 rigid = ell + r * bn.x.perp();
        worst = std::max(worst, std::abs((v - rigid).dot(bn.n)));
    }
    return worst;
}

double circulation_around_body(const PotentialTables& t, const BodyGeometry& body,
                               const VortexField& field, const BodyCorrection& corr,
                               Vec2 ell, double r) {
    double acc = 0.0;
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        Vec2 v = total_velocity_boundary(t, body, field, corr, ell, r, i);
        acc += v.dot(t.nodes[i].tau) * t.nodes[i].ds;
    }
    return acc;
}

} // namespace vortexbody
