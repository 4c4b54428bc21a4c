#include "vortexbody/dynamics.hpp"

#include "vortexbody/parallel.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace vortexbody {

namespace {
constexpr double pi = std::numbers::pi;
} // namespace

BodyRates body_rhs(const PotentialTables& t, const BodyGeometry& body,
                   const VortexField& field, const BodyCorrection& corr,
                   Vec2 ell, double r, std::span<const Vec2> particle_rel_vel) {
    Eigen::Vector3d rhs = Eigen::Vector3d::Zero();

    // Boundary integral of -|w.tau|^2 / 2 against the Neumann data.
    const std::size_t nb = t.nodes.size();
    std::vector<double> half_w2(nb);
    parallel_for(nb, [&](std::size_t i) {
        const BoundaryNode& bn = t.nodes[i];
        Vec2 v = total_velocity_boundary(t, body, field, corr, ell, r, i);
        Vec2 w = v - ell - r * bn.x.perp();
        const double wt = w.dot(bn.tau); // w.n vanishes up to the solver residual
        half_w2[i] = 0.5 * wt * wt;
    });
    for (std::size_t i = 0; i < nb; ++i) {
        const BoundaryNode& bn = t.nodes[i];
        rhs(0) -= half_w2[i] * bn.n.x * bn.ds;
        rhs(1) -= half_w2[i] * bn.n.y * bn.ds;
        rhs(2) -= half_w2[i] * bn.k3 * bn.ds;
    }

    // Vorticity-weighted term: -sum Gamma_j w_perp(y_j) . grad Phi_i(y_j).
    for (std::size_t j = 0; j < field.size(); ++j) {
        const Vec2 wp = particle_rel_vel[j].perp();
        const auto grads = kirchhoff_gradients(t, body, field.pos[j]);
        rhs(0) -= field.strength[j] * wp.dot(grads[0]);
        rhs(1) -= field.strength[j] * wp.dot(grads[1]);
        rhs(2) -= field.strength[j] * wp.dot(grads[2]);
    }

    // Far-field closure (dipole moments) and the domain constants of the
    // potentials; all three vanish for a centered disk.
    for (int i = 0; i < 3; ++i) {
        const auto k = static_cast<std::size_t>(i);
        rhs(i) += pi * r * ell.dot(t.dipole[k].perp());
        rhs(i) -= r * ell.perp().dot(t.grad_int[k]);
        rhs(i) += r * r * t.xdot_int[k];
    }

    // Coriolis completion of the recast system.
    rhs(0) -= body.mass * r * (-ell.y);
    rhs(1) -= body.mass * r * (ell.x);

    Eigen::Vector3d acc = t.M_llt.solve(rhs);
    return {{acc(0), acc(1)}, acc(2)};
}

BodyRates body_rhs(const PotentialTables& t, const BodyGeometry& body,
                   const VortexField& field, Vec2 ell, double r) {
    BodyCorrection corr = compute_body_correction(t, body, field);
    auto vel = particle_rhs(t, body, field, corr, ell, r);
    return body_rhs(t, body, field, corr, ell, r, vel);
}

std::vector<Vec2> particle_rhs(const PotentialTables& t, const BodyGeometry& body,
                               const VortexField& field, const BodyCorrection& corr,
                               Vec2 ell, double r) {
    std::vector<Vec2> vel(field.size());
    parallel_for(field.size(), [&](std::size_t j) {
        vel[j] = relative_velocity(t, body, field, corr, ell, r, field.pos[j]);
    });
    return vel;
}

std::vector<Vec2> particle_rhs(const PotentialTables& t, const BodyGeometry& body,
                               const VortexField& field, Vec2 ell, double r) {
    return particle_rhs(t, body, field, compute_body_correction(t, body, field), ell, r);
}

SimState step(const PotentialTables& t, const BodyGeometry& body,
              const SimState& state, double dt, const StepOptions& opts) {
    if (dt < 0.0) throw std::invalid_argument("step: dt must be nonnegative");
    SimState next = state;
    if (dt == 0.0) return next;

    const std::size_t n = state.field.size();
    VortexField work = state.field;

    struct Stage {
        std::vector<Vec2> xdot;
        Vec2 ell_dot{0, 0};
        double r_dot = 0;
        Vec2 h_dot{0, 0};
        double theta_dot = 0;
    };
    std::array<Stage, 4> k;

    auto eval = [&](const std::vector<Vec2>& pos, const RigidState& rs, Stage& out) {
        work.pos = pos;
        BodyCorrection corr = compute_body_correction(t, body, work);
        const Vec2 ell_eff = opts.freeze_body ? Vec2{0.0, 0.0} : rs.ell;
        const double r_eff = opts.freeze_body ? 0.0 : rs.r;
        out.xdot = particle_rhs(t, body, work, corr, ell_eff, r_eff);
        if (opts.freeze_body) {
            out.ell_dot = {0.0, 0.0};
            out.r_dot = 0.0;
            out.h_dot = {0.0, 0.0};
            out.theta_dot = 0.0;
        } else {
            BodyRates br = body_rhs(t, body, work, corr, rs.ell, rs.r, out.xdot);
            out.ell_dot = br.ell_dot;
            out.r_dot = br.r_dot;
            out.h_dot = rs.vector_to_lab(rs.ell);
            out.theta_dot = rs.r;
        }
    };

    auto shifted_state = [&](const RigidState& rs, const Stage& s, double c) {
        RigidState out = rs;
        out.ell += c * dt * s.ell_dot;
        out.r += c * dt * s.r_dot;
        out.h += c * dt * s.h_dot;
        out.theta += c * dt * s.theta_dot;
        return out;
    };
    auto shifted_pos = [&](const Stage& s, double c) {
        std::vector<Vec2> pos(n);
        for (std::size_t j = 0; j < n; ++j) pos[j] = state.field.pos[j] + c * dt * s.xdot[j];
        return pos;
    };

    eval(state.field.pos, state.rigid, k[0]);

    if (opts.cfl_factor > 0.0 && state.field.delta > 0.0) {
        double vmax = 0.0;
        for (const Vec2& u : k[0].xdot) vmax = std::max(vmax, u.norm());
        if (dt * vmax > opts.cfl_factor * state.field.delta)
            throw StepRejected(opts.cfl_factor * state.field.delta / vmax);
    }

    eval(shifted_pos(k[0], 0.5), shifted_state(state.rigid, k[0], 0.5), k[1]);
    eval(shifted_pos(k[1], 0.5), shifted_state(state.rigid, k[1], 0.5), k[2]);
    eval(shifted_pos(k[2], 1.0), shifted_state(state.rigid, k[2], 1.0), k[3]);

    const double w0 = dt / 6.0, w1 = dt / 3.0;
    for (std::size_t j = 0; j < n; ++j)
        next.field.pos[j] = state.field.pos[j] + w0 * (k[0].xdot[j] + k[3].xdot[j]) +
                            w1 * (k[1].xdot[j] + k[2].xdot[j]);
    next.rigid.ell = state.rigid.ell + w0 * (k[0].ell_dot + k[3].ell_dot) + w1 * (k[1].ell_dot + k[2].ell_dot);
    next.rigid.r = state.rigid.r + w0 * (k[0].r_dot + k[3].r_dot) + w1 * (k[1].r_dot + k[2].r_dot);
    next.rigid.h = state.rigid.h + w0 * (k[0].h_dot + k[3].h_dot) + w1 * (k[1].h_dot + k[2].h_dot);
    next.rigid.theta = state.rigid.theta + w0 * (k[0].theta_dot + k[3].theta_dot) +
                       w1 * (k[1].theta_dot + k[2].theta_dot);
    next.rigid.t = state.rigid.t + dt;
    next.step_count = state.step_count + 1;

    // Finite dt can push a particle through the wall; project back along the
    // ray from the origin (both shapes are star-shaped) and count it.
    for (std::size_t j = 0; j < n; ++j) {
        Vec2& x = next.field.pos[j];
        if (body.contains(x)) {
            const double phi = std::atan2(x.y, x.x);
            const double rb = body.boundary_radius(phi);
            const double rr = x.norm();
            x = (rr > 0.0) ? x * (rb * (1.0 + 1e-12) / rr)
                           : Vec2{rb * (1.0 + 1e-12), 0.0};
            ++next.penetration_events;
        }
    }
    return next;
}

} // namespace vortexbody
