#pragma once

#include "vortexbody/biot_savart.hpp"

#include <stdexcept>

namespace vortexbody {

struct StepRejected : std::runtime_error {
    double suggested_dt;
    StepRejected(double dt_hint)
        : std::runtime_error("time step violates the blob CFL guard"), suggested_dt(dt_hint) {}
};

/// Coupled state: rigid body plus particles. Strengths, vorticity values and
/// areas are frozen by construction; only positions and the rigid state move.
struct SimState {
    RigidState rigid;
    VortexField field;
    long step_count = 0;
    long penetration_events = 0;
};

struct StepOptions {
    bool freeze_body = false; // test mode: ell, r held fixed
    double cfl_factor = 0.5;  // dt * max speed <= cfl_factor * delta; 0 disables
};

struct BodyRates {
    Vec2 ell_dot{0.0, 0.0};
    double r_dot = 0.0;
};

/// Solves M (ell', r') = [B_i + C_i] - (m r ell_perp, 0). The volume terms
/// are reduced to a boundary integral of the tangential slip, a particle sum,
/// and precomputed far-field constants of the Kirchhoff potentials.
/// particle_rel_vel holds the advection velocity of each particle (reused
/// from the transport stage).
BodyRates body_rhs(const PotentialTables& t, const BodyGeometry& body,
                   const VortexField& field, const BodyCorrection& corr,
                   Vec2 ell, double r, std::span<const Vec2> particle_rel_vel);

/// Convenience overload: builds the correction and particle velocities.
BodyRates body_rhs(const PotentialTables& t, const BodyGeometry& body,
                   const VortexField& field, Vec2 ell, double r);

/// Advection velocities (v - ell - r x_perp) at the particle positions. The
/// blob kernel vanishes at its own center, so free-space self-induction drops
/// out; each particle's own boundary correction is kept.
std::vector<Vec2> particle_rhs(const PotentialTables& t, const BodyGeometry& body,
                               const VortexField& field, const BodyCorrection& corr,
                               Vec2 ell, double r);

std::vector<Vec2> particle_rhs(const PotentialTables& t, const BodyGeometry& body,
                               const VortexField& field, Vec2 ell, double r);

/// One RK4 step of the coupled system (particles, ell, r, h, theta).
/// Particles ending up inside the body are projected back to the boundary and
/// counted in penetration_events.
SimState step(const PotentialTables& t, const BodyGeometry& body,
              const SimState& state, double dt, const StepOptions& opts = {});

} // namespace vortexbody
