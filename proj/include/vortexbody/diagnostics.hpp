#pragma once

#include "vortexbody/biot_savart.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vortexbody {

// ---------------------------------------------------------------- energy

struct EnergyOptions {
    double support_radius = 1.0;  // outer radius of the vorticity support
    double radius_factor = 8.0;   // R_E = radius_factor * support_radius
    int nphi = 512;
    double fine_dr = 0.0;         // 0: derived from the blob radius
};

struct EnergyBreakdown {
    double total = 0.0;
    double body_linear = 0.0;
    double body_angular = 0.0;
    double fluid = 0.0;
    double tail_estimate = 0.0; // logged, never added
    double outer_radius = 0.0;
};

/// E = (m ell^2 + J r^2 + integral of (v - beta H)^2) / 2 on an annular grid
/// out to R_E, with the 1/|x|^2 tail estimated from the outermost ring.
EnergyBreakdown energy_like(const PotentialTables& t, const BodyGeometry& body,
                            const VortexField& field, const BodyCorrection& corr,
                            Vec2 ell, double r, const EnergyOptions& opts);

// ------------------------------------------------------------- vorticity

struct BinGrid {
    Vec2 origin{0.0, 0.0}; // center of cell (0, 0)
    double h = 0.1;
    int nx = 0, ny = 0;
};

struct VorticityNorms {
    double l1_particle = 0.0, lp_particle = 0.0;
    double l1_grid = 0.0, lp_grid = 0.0;
};

/// Particle-weight norms (exactly conserved) and grid-binned norms (the
/// strengths deposited on cells and divided by cell area).
VorticityNorms vorticity_norms(const VortexField& field, double p, const BinGrid& grid);

// --------------------------------------------------------------- Blasius

struct BlasiusResult {
    Vec2 normal_form{0.0, 0.0};  // integral of |H|^2 n ds
    double moment_form = 0.0;    // integral of |H|^2 x_perp . n ds
    Vec2 normal_complex{0.0, 0.0};
    double moment_complex = 0.0; // same quantities through the contour forms
    double scale = 0.0;          // integral of |H|^2 ds
};

BlasiusResult blasius_integrals(const PotentialTables& t, const BodyGeometry& body);

// --------------------------------------------------- weak-form residuals

/// Divergence-free test function, rigid on the body: either a rigid field
/// cut off at a finite radius through its stream function, or the curl of a
/// compactly supported bump.
class TestFunction {
  public:
    static TestFunction mollified_rigid(Vec2 ell_psi, double r_psi, double r_inner,
                                        double r_outer, std::string name);
    static TestFunction curl_bump(Vec2 center, double width, double amplitude,
                                  std::string name);

    Vec2 value(Vec2 x) const;
    /// Columns of the Jacobian: d Psi / dx and d Psi / dy.
    std::array<Vec2, 2> gradient(Vec2 x) const;

    Vec2 ell_psi() const { return ell_; }
    double r_psi() const { return r_; }
    double support_radius() const; // Psi = 0 outside this radius about its center
    Vec2 support_center() const { return center_; }
    const std::string& name() const { return name_; }

    /// Rigidity inside the body and discrete divergence at fluid sample
    /// points; throws invalid_argument on failure.
    void validate(const BodyGeometry& body) const;

  private:
    enum class Kind { rigid, bump } kind_ = Kind::rigid;
    Vec2 ell_{0.0, 0.0};
    double r_ = 0.0;
    double r_inner_ = 0.0, r_outer_ = 0.0;
    Vec2 center_{0.0, 0.0};
    double width_ = 1.0, amp_ = 1.0;
    std::string name_;
};

/// Default family: a cut-off translation, a cut-off rotation, and one bump
/// vortex, sized from the body and the vorticity support.
std::vector<TestFunction> default_test_functions(const BodyGeometry& body,
                                                 double support_radius);

enum class WeakConvention { fluid_only, rho_weighted };
enum class TimeRule { rectangle, trapezoid };

/// Accumulates the weak-formulation residual of a trajectory against a fixed
/// family of test functions; snapshots arrive in time order.
class WeakResidual {
  public:
    WeakResidual(const PotentialTables& t, const BodyGeometry& body,
                 std::vector<TestFunction> family, double grid_h,
                 WeakConvention convention, TimeRule rule);

    void add_snapshot(const VortexField& field, const BodyCorrection& corr,
                      Vec2 ell, double r, double time);

    /// Residuals over [t0, t_latest], one per test function.
    std::vector<double> residuals() const;
    std::size_t family_size() const { return family_.size(); }
    const std::vector<TestFunction>& family() const { return family_; }

  private:
    const PotentialTables& tables_;
    const BodyGeometry& body_;
    std::vector<TestFunction> family_;
    WeakConvention convention_;
    TimeRule rule_;
    std::vector<Vec2> nodes_;
    double cell_area_ = 0.0;
    // per node, per test function: value and jacobian columns
    std::vector<Vec2> psi_;
    std::vector<Vec2> dpsi_x_, dpsi_y_;

    struct Snapshot {
        double t;
        std::vector<double> pair;     // (Psi, vbar)_rho
        std::vector<double> advect;   // fluid advection integral
        std::vector<double> coriolis; // convention-dependent v_perp pairing
    };
    std::vector<Snapshot> snaps_;
};

// ------------------------------------------------------------- bookkeeping

struct DiagnosticsRecord {
    double t = 0.0;
    double energy = 0.0;
    double energy_tail = 0.0;
    double l1_particle = 0.0, lp_particle = 0.0;
    double l1_grid = 0.0, lp_grid = 0.0;
    double gamma = 0.0, alpha = 0.0, beta = 0.0;
    double circulation_boundary = 0.0;
    Vec2 blasius_n{0.0, 0.0};
    double blasius_x = 0.0;
    double acc_ell = 0.0, acc_r = 0.0;
    std::vector<double> weak_residuals;
};

} // namespace vortexbody
