#pragma once

#include "vortexbody/geometry.hpp"

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <stdexcept>
#include <vector>

namespace vortexbody {

struct SolverFailure : std::runtime_error {
    double rcond = 0.0;
    SolverFailure(const std::string& msg, double rc)
        : std::runtime_error(msg + " (rcond " + std::to_string(rc) + ")"), rcond(rc) {}
};

/// Quadrature node on the body boundary. For disks these sit on the exact
/// circle (arc midpoints, exact ds); for Fourier bodies they are the chord
/// midpoints of the panels.
struct BoundaryNode {
    Vec2 x;
    Vec2 n;   // into the body
    Vec2 tau; // CCW
    double ds = 0.0;
    double k3 = 0.0; // x_perp . n
};

/// Boundary-element data for one geometry: source sheets realizing the three
/// exterior Neumann potentials, a vortex sheet carrying unit circulation, the
/// inertia/added-mass matrices, and the far-field constants used by the body
/// force reduction.
class PotentialTables {
  public:
    bool is_disk = false;
    double disk_radius = 1.0;

    // per-panel source densities for Phi_1..3 and the unit-circulation sheet
    std::array<std::vector<double>, 3> sigma;
    std::vector<double> unit_sheet;

    Eigen::Matrix3d M1 = Eigen::Matrix3d::Zero();
    Eigen::Matrix3d M2 = Eigen::Matrix3d::Zero();
    Eigen::Matrix3d M = Eigen::Matrix3d::Zero();
    Eigen::LLT<Eigen::Matrix3d> M_llt;

    // far-field / domain constants of the potentials:
    //   dipole[i]  : leading moment, Phi_i ~ dipole . x / |x|^2
    //   grad_int[i]: integral of grad Phi_i over the fluid
    //   xdot_int[i]: integral of x . grad Phi_i over the fluid
    std::array<Vec2, 3> dipole{};
    std::array<Vec2, 3> grad_int{};
    std::array<double, 3> xdot_int{};

    // boundary-condition residuals measured after assembly
    std::array<double, 3> phi_residual{};
    double sheet_residual = 0.0;

    std::vector<BoundaryNode> nodes;

    /// Sheet density with prescribed normal flux (at vertex collocation
    /// points) and total circulation, via the factored boundary system.
    std::vector<double> solve_sheet(const std::vector<double>& vertex_flux,
                                    double circulation) const;

    const Eigen::PartialPivLU<Eigen::MatrixXd>& vortex_lu() const { return vortex_lu_; }

  private:
    friend PotentialTables added_mass(const BodyGeometry&);
    Eigen::PartialPivLU<Eigen::MatrixXd> vortex_lu_;
};

/// Assembles the full table set (sheet solves, M1, M2, M, constants).
/// Throws SolverFailure if a boundary system is ill-conditioned.
PotentialTables added_mass(const BodyGeometry& body);

/// H(x): decaying, divergence- and curl-free, tangent to the body, unit
/// circulation. Analytic for disks, sheet-evaluated otherwise.
Vec2 harmonic_field(const PotentialTables& t, const BodyGeometry& body, Vec2 x);

/// grad Phi_1..3 at x. Analytic for disks.
std::array<Vec2, 3> kirchhoff_gradients(const PotentialTables& t,
                                        const BodyGeometry& body, Vec2 x);

/// Boundary-element evaluation paths, valid for every shape (used by the
/// disk-vs-analytic convergence checks).
Vec2 harmonic_field_bem(const PotentialTables& t, const BodyGeometry& body, Vec2 x);
std::array<Vec2, 3> kirchhoff_gradients_bem(const PotentialTables& t,
                                            const BodyGeometry& body, Vec2 x);

/// Potential values Phi_1..3 at x (exact flat-panel integrals; analytic for
/// disks). Well defined up to the decay normalization at infinity.
std::array<double, 3> kirchhoff_potentials(const PotentialTables& t,
                                           const BodyGeometry& body, Vec2 x);

/// Vortex-sheet density with prescribed normal flux at the vertex collocation
/// points and prescribed circulation. flux is evaluated per vertex.
std::vector<double> solve_boundary_sheet(const BodyGeometry& body,
                                         const std::function<double(Vec2)>& normal_flux,
                                         double circulation);

/// Velocity induced by a per-panel vortex sheet at a point off the boundary.
Vec2 sheet_velocity(const BodyGeometry& body, const std::vector<double>& density, Vec2 x);

/// Fluid-side limit of the sheet velocity at the midpoint of panel i
/// (principal value plus half-jump along the tangent).
Vec2 sheet_velocity_boundary(const BodyGeometry& body,
                             const std::vector<double>& density, std::size_t i);

/// Fluid-side H at boundary node i.
Vec2 harmonic_boundary(const PotentialTables& t, const BodyGeometry& body, std::size_t i);

/// Fluid-side grad Phi_1..3 at boundary node i (tangential part from the
/// principal value, normal part equal to the Neumann data).
std::array<Vec2, 3> kirchhoff_boundary(const PotentialTables& t,
                                       const BodyGeometry& body, std::size_t i);

/// Exact single-layer log potential of a unit-density flat segment.
double panel_log_potential(Vec2 p0, Vec2 p1, Vec2 x);

} // namespace vortexbody
