#pragma once

#include "vortexbody/potentials.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace vortexbody {

/// Vortex particles in the body frame plus the circulation bookkeeping.
/// strength[j] = vorticity[j] * area[j]; all three stay constant along a
/// trajectory, only positions move.
struct VortexField {
    std::vector<Vec2> pos;
    std::vector<double> strength;
    std::vector<double> area;
    std::vector<double> vorticity;
    double delta = 0.0;       // blob core radius; 0 gives point vortices
    double circulation = 0.0; // gamma, conserved (Kelvin)
    double p_exponent = 2.0;

    std::size_t size() const { return pos.size(); }
    void add_particle(Vec2 x, double omega, double cell_area);
    /// Total vorticity, recomputed from the strengths.
    double alpha() const;
    double beta() const { return circulation + alpha(); }
};

/// Boundary correction cancelling the particles' normal flux. Disks use the
/// exact image system (no stored data); other shapes carry a vortex sheet of
/// circulation -alpha. Recompute whenever particle positions change.
struct BodyCorrection {
    double alpha = 0.0;
    bool images = true;
    std::vector<double> sheet;
};

BodyCorrection compute_body_correction(const PotentialTables& t,
                                       const BodyGeometry& body,
                                       const VortexField& field);

/// K[omega](x): blob-regularized free-space sum plus the body correction.
/// Circulation around the body is -alpha.
Vec2 kernel_velocity(const PotentialTables& t, const BodyGeometry& body,
                     const VortexField& field, const BodyCorrection& corr, Vec2 x);

/// v = K[omega] + (gamma+alpha) H + ell_1 grad Phi_1 + ell_2 grad Phi_2 + r grad Phi_3.
Vec2 total_velocity(const PotentialTables& t, const BodyGeometry& body,
                    const VortexField& field, const BodyCorrection& corr,
                    Vec2 ell, double r, Vec2 x);

/// Advection field v - ell - r x_perp; tangent to the boundary.
Vec2 relative_velocity(const PotentialTables& t, const BodyGeometry& body,
                       const VortexField& field, const BodyCorrection& corr,
                       Vec2 ell, double r, Vec2 x);

/// Finite-energy part v - beta H (the H terms cancel structurally).
Vec2 finite_energy_velocity(const PotentialTables& t, const BodyGeometry& body,
                            const VortexField& field, const BodyCorrection& corr,
                            Vec2 ell, double r, Vec2 x);

// Convenience overloads that build the correction internally.
Vec2 kernel_velocity(const PotentialTables& t, const BodyGeometry& body,
                     const VortexField& field, Vec2 x);
Vec2 total_velocity(const PotentialTables& t, const BodyGeometry& body,
                    const VortexField& field, Vec2 ell, double r, Vec2 x);
Vec2 relative_velocity(const PotentialTables& t, const BodyGeometry& body,
                       const VortexField& field, Vec2 ell, double r, Vec2 x);

/// Fluid-side K[omega] at boundary node i.
Vec2 kernel_velocity_boundary(const PotentialTables& t, const BodyGeometry& body,
                              const VortexField& field, const BodyCorrection& corr,
                              std::size_t i);

/// Fluid-side total velocity at boundary node i.
Vec2 total_velocity_boundary(const PotentialTables& t, const BodyGeometry& body,
                             const VortexField& field, const BodyCorrection& corr,
                             Vec2 ell, double r, std::size_t i);

/// max over nodes of |v.n - (ell + r x_perp).n|.
double boundary_normal_residual(const PotentialTables& t, const BodyGeometry& body,
                                const VortexField& field, const BodyCorrection& corr,
                                Vec2 ell, double r);

/// Boundary quadrature of v.tau (the Kelvin circulation).
double circulation_around_body(const PotentialTables& t, const BodyGeometry& body,
                               const VortexField& field, const BodyCorrection& corr,
                               Vec2 ell, double r);

} // namespace vortexbody
