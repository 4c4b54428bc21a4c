#include "vortexbody/potentials.hpp"

#include "vortexbody/log.hpp"

#include <cmath>
#include <numbers>

namespace vortexbody {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * pi;

inline Vec2 vortex_kernel(Vec2 d) {
    return d.perp() / (two_pi * d.norm2());
}

inline Vec2 source_kernel(Vec2 d) {
    return d / (two_pi * d.norm2());
}

// Normal-flux system for a per-panel vortex sheet, collocated at the panel
// vertices. Midpoint collocation admits an alternating null mode; the
// staggered grid does not. The last column spreads any flux inconsistency,
// the last row pins the total circulation.
Eigen::MatrixXd vortex_system(const BodyGeometry& body) {
    const std::size_t n = body.n_panels();
    Eigen::MatrixXd A(n + 1, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 v = body.vertices[i];
        const Vec2 nv = body.vertex_normals[i];
        for (std::size_t j = 0; j < n; ++j)
            A(i, j) = nv.dot(vortex_kernel(v - body.panels[j].mid)) * body.panels[j].ds;
        A(i, n) = 1.0;
    }
    for (std::size_t j = 0; j < n; ++j) A(n, j) = body.panels[j].ds;
    A(n, n) = 0.0;
    return A;
}

// Neumann system for per-panel source sheets, collocated at midpoints. The
// diagonal carries the fluid-side jump and the curvature limit of the kernel;
// the trailing row/column enforce zero total source strength so the
// represented potential decays.
Eigen::MatrixXd source_system(const BodyGeometry& body) {
    const std::size_t n = body.n_panels();
    Eigen::MatrixXd B(n + 1, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        const Panel& pi = body.panels[i];
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            B(i, j) = pi.n.dot(source_kernel(pi.mid - body.panels[j].mid)) * body.panels[j].ds;
        }
        B(i, i) = -0.5 - body.curvature[i] * pi.ds / (2.0 * two_pi);
        B(i, n) = 1.0;
    }
    for (std::size_t j = 0; j < n; ++j) B(n, j) = body.panels[j].ds;
    B(n, n) = 0.0;
    return B;
}

void check_conditioning(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu, const char* what) {
    double rc = lu.rcond();
    if (!(rc > 1e-13))
        throw SolverFailure(std::string("ill-conditioned boundary system: ") + what, rc);
}

std::array<double, 3> neumann_data(const Panel& p) {
    return {p.n.x, p.n.y, p.mid.perp().dot(p.n)};
}

Vec2 disk_gradphi(double a, Vec2 x, int i) {
    if (i == 2) return {0.0, 0.0};
    const double r2 = x.norm2();
    const double xi = (i == 0) ? x.x : x.y;
    Vec2 e = (i == 0) ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0};
    return -a * a * (e / r2 - 2.0 * xi / (r2 * r2) * x);
}

double disk_phi(double a, Vec2 x, int i) {
    if (i == 2) return 0.0;
    const double xi = (i == 0) ? x.x : x.y;
    return -a * a * xi / x.norm2();
}

std::vector<BoundaryNode> make_nodes(const BodyGeometry& body) {
    std::vector<BoundaryNode> nodes;
    nodes.reserve(body.n_panels());
    if (body.kind == ShapeKind::disk) {
        const double a = body.disk_radius;
        const std::size_t n = body.n_panels();
        const double ds = a * two_pi / static_cast<double>(n);
        for (std::size_t j = 0; j < n; ++j) {
            double phi = two_pi * (static_cast<double>(j) + 0.5) / static_cast<double>(n);
            BoundaryNode bn;
            bn.x = {a * std::cos(phi), a * std::sin(phi)};
            bn.n = -bn.x / a;
            bn.tau = bn.n.perp() * -1.0; // CCW tangent; n = tau.perp()
            bn.ds = ds;
            bn.k3 = 0.0;
            nodes.push_back(bn);
        }
    } else {
        for (const Panel& p : body.panels)
            nodes.push_back({p.mid, p.n, p.tau, p.ds, p.mid.perp().dot(p.n)});
    }
    return nodes;
}

} // namespace

double panel_log_potential(Vec2 p0, Vec2 p1, Vec2 x) {
    Vec2 d = p1 - p0;
    const double len = d.norm();
    Vec2 t = d / len;
    Vec2 nn = t.perp();
    Vec2 rel = x - 0.5 * (p0 + p1);
    const double a = rel.dot(t);
    const double b = rel.dot(nn);
    auto F = [b](double u) {
        double r2 = u * u + b * b;
        if (r2 == 0.0) return 0.0;
        double val = 0.5 * u * std::log(r2) - u;
        if (b != 0.0) val += b * std::atan2(u, b);
        return val;
    };
    return (F(a + 0.5 * len) - F(a - 0.5 * len)) / two_pi;
}

std::vector<double> PotentialTables::solve_sheet(const std::vector<double>& vertex_flux,
                                                 double circulation) const {
    const std::size_t n = vertex_flux.size();
    Eigen::VectorXd rhs(n + 1);
    for (std::size_t i = 0; i < n; ++i) rhs(static_cast<Eigen::Index>(i)) = vertex_flux[i];
    rhs(static_cast<Eigen::Index>(n)) = circulation;
    Eigen::VectorXd sol = vortex_lu_.solve(rhs);
    return {sol.data(), sol.data() + n};
}

PotentialTables added_mass(const BodyGeometry& body) {
    const std::size_t n = body.n_panels();
    PotentialTables t;
    t.is_disk = (body.kind == ShapeKind::disk);
    t.disk_radius = body.disk_radius;
    t.nodes = make_nodes(body);

    // Source sheets for the Kirchhoff potentials.
    const Eigen::MatrixXd src_sys = source_system(body);
    Eigen::PartialPivLU<Eigen::MatrixXd> src_lu(src_sys);
    check_conditioning(src_lu, "kirchhoff sources");
    for (int i = 0; i < 3; ++i) {
        Eigen::VectorXd rhs(n + 1);
        for (std::size_t j = 0; j < n; ++j)
            rhs(static_cast<Eigen::Index>(j)) = neumann_data(body.panels[j])[static_cast<std::size_t>(i)];
        rhs(static_cast<Eigen::Index>(n)) = 0.0;
        Eigen::VectorXd sol = src_lu.solve(rhs);
        t.sigma[static_cast<std::size_t>(i)].assign(sol.data(), sol.data() + n);
        t.phi_residual[static_cast<std::size_t>(i)] =
            (src_sys * sol - rhs).head(static_cast<Eigen::Index>(n)).cwiseAbs().maxCoeff();
    }

    // Unit-circulation vortex sheet (the harmonic field for non-disk shapes).
    t.vortex_lu_ = Eigen::PartialPivLU<Eigen::MatrixXd>(vortex_system(body));
    check_conditioning(t.vortex_lu_, "vortex sheet");
    t.unit_sheet = t.solve_sheet(std::vector<double>(n, 0.0), 1.0);

    // Independent boundary check: H . n at the panel midpoints, which are not
    // the sheet's collocation points.
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 h = sheet_velocity_boundary(body, t.unit_sheet, i);
        worst = std::max(worst, std::abs(h.dot(body.panels[i].n)));
    }
    t.sheet_residual = worst;
    if (worst > 1e-3 * (1.0 / body.perimeter) * two_pi)
        throw SolverFailure("harmonic sheet fails the tangency check", worst);

    // Added mass via the boundary Green identity: M2[a][b] = sum Phi_a K_b ds.
    std::array<std::vector<double>, 3> phi_mid;
    for (int a = 0; a < 3; ++a) {
        phi_mid[static_cast<std::size_t>(a)].resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                acc += t.sigma[static_cast<std::size_t>(a)][j] *
                       panel_log_potential(body.panels[j].a, body.panels[j].b, body.panels[i].mid);
            phi_mid[static_cast<std::size_t>(a)][i] = acc;
        }
    }
    Eigen::Matrix3d m2 = Eigen::Matrix3d::Zero();
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                acc += phi_mid[static_cast<std::size_t>(a)][i] *
                       neumann_data(body.panels[i])[static_cast<std::size_t>(b)] * body.panels[i].ds;
            m2(a, b) = acc;
        }
    t.M2 = 0.5 * (m2 + m2.transpose());
    t.M1 = Eigen::Matrix3d::Zero();
    t.M1(0, 0) = t.M1(1, 1) = body.mass;
    t.M1(2, 2) = body.inertia;
    t.M = t.M1 + t.M2;
    t.M_llt.compute(t.M);
    if (t.M_llt.info() != Eigen::Success)
        throw SolverFailure("inertia + added-mass matrix is not positive definite", 0.0);

    // Far-field and domain constants.
    if (t.is_disk) {
        const double a2 = body.disk_radius * body.disk_radius;
        t.dipole = {Vec2{-a2, 0.0}, Vec2{0.0, -a2}, Vec2{0.0, 0.0}};
        t.grad_int = {Vec2{0, 0}, Vec2{0, 0}, Vec2{0, 0}};
        t.xdot_int = {0.0, 0.0, 0.0};
    } else {
        for (int i = 0; i < 3; ++i) {
            Vec2 d{0.0, 0.0};
            for (std::size_t j = 0; j < n; ++j)
                d += t.sigma[static_cast<std::size_t>(i)][j] * body.panels[j].ds * body.panels[j].mid;
            t.dipole[static_cast<std::size_t>(i)] = -1.0 / two_pi * d;

            Vec2 g{0.0, 0.0};
            double xg = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                double phi = phi_mid[static_cast<std::size_t>(i)][j];
                g += phi * body.panels[j].ds * body.panels[j].n;
                xg += phi * body.panels[j].mid.dot(body.panels[j].n) * body.panels[j].ds;
            }
            t.grad_int[static_cast<std::size_t>(i)] = g + pi * t.dipole[static_cast<std::size_t>(i)];

            // Volume part of the x.grad integral lives between the boundary
            // and the circumscribed circle; beyond it the angular means vanish.
            const int nphi = 512, nr = 16;
            double vol = 0.0;
            for (int q = 0; q < nphi; ++q) {
                double phi = two_pi * (q + 0.5) / nphi;
                double r0 = body.boundary_radius(phi);
                double dr = (body.max_radius - r0) / nr;
                if (dr <= 0.0) continue;
                for (int s = 0; s < nr; ++s) {
                    double rm = r0 + (s + 0.5) * dr;
                    Vec2 x{rm * std::cos(phi), rm * std::sin(phi)};
                    double acc = 0.0;
                    for (std::size_t j = 0; j < n; ++j)
                        acc += t.sigma[static_cast<std::size_t>(i)][j] *
                               panel_log_potential(body.panels[j].a, body.panels[j].b, x);
                    vol += acc * rm * dr * two_pi / nphi;
                }
            }
            t.xdot_int[static_cast<std::size_t>(i)] = xg - 2.0 * vol;
        }
    }
    log::debug("tables assembled: %zu panels, sheet residual %.3e", n, t.sheet_residual);
    return t;
}

Vec2 harmonic_field(const PotentialTables& t, const BodyGeometry& body, Vec2 x) {
    if (body.contains(x)) throw std::domain_error("harmonic_field: point inside the body");
    if (t.is_disk) return vortex_kernel(x);
    return sheet_velocity(body, t.unit_sheet, x);
}

Vec2 harmonic_field_bem(const PotentialTables& t, const BodyGeometry& body, Vec2 x) {
    if (body.contains(x)) throw std::domain_error("harmonic_field: point inside the body");
    return sheet_velocity(body, t.unit_sheet, x);
}

std::array<Vec2, 3> kirchhoff_gradients(const PotentialTables& t,
                                        const BodyGeometry& body, Vec2 x) {
    if (body.contains(x)) throw std::domain_error("kirchhoff_gradients: point inside the body");
    if (t.is_disk) {
        const double a = t.disk_radius;
        return {disk_gradphi(a, x, 0), disk_gradphi(a, x, 1), disk_gradphi(a, x, 2)};
    }
    return kirchhoff_gradients_bem(t, body, x);
}

std::array<Vec2, 3> kirchhoff_gradients_bem(const PotentialTables& t,
                                            const BodyGeometry& body, Vec2 x) {
    std::array<Vec2, 3> out{Vec2{0, 0}, Vec2{0, 0}, Vec2{0, 0}};
    const std::size_t n = body.n_panels();
    for (std::size_t j = 0; j < n; ++j) {
        Vec2 k = source_kernel(x - body.panels[j].mid) * body.panels[j].ds;
        for (int i = 0; i < 3; ++i) out[static_cast<std::size_t>(i)] += t.sigma[static_cast<std::size_t>(i)][j] * k;
    }
    return out;
}

std::array<double, 3> kirchhoff_potentials(const PotentialTables& t,
                                           const BodyGeometry& body, Vec2 x) {
    if (t.is_disk) {
        const double a = t.disk_radius;
        return {disk_phi(a, x, 0), disk_phi(a, x, 1), disk_phi(a, x, 2)};
    }
    std::array<double, 3> out{0.0, 0.0, 0.0};
    for (std::size_t j = 0; j < body.n_panels(); ++j) {
        double lp = panel_log_potential(body.panels[j].a, body.panels[j].b, x);
        for (int i = 0; i < 3; ++i) out[static_cast<std::size_t>(i)] += t.sigma[static_cast<std::size_t>(i)][j] * lp;
    }
    return out;
}

std::vector<double> solve_boundary_sheet(const BodyGeometry& body,
                                         const std::function<double(Vec2)>& normal_flux,
                                         double circulation) {
    const std::size_t n = body.n_panels();
    std::vector<double> flux(n);
    double net = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        flux[i] = normal_flux(body.vertices[i]);
        double w = 0.5 * (body.panels[i].ds + body.panels[(i + n - 1) % n].ds);
        net += flux[i] * w;
        scale += std::abs(flux[i]) * w;
    }
    if (scale > 0.0 && std::abs(net) > 1e-3 * scale)
        throw std::invalid_argument("boundary sheet flux has a nonzero net component");
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(vortex_system(body));
    check_conditioning(lu, "vortex sheet");
    Eigen::VectorXd rhs(n + 1);
    for (std::size_t i = 0; i < n; ++i) rhs(static_cast<Eigen::Index>(i)) = flux[i];
    rhs(static_cast<Eigen::Index>(n)) = circulation;
    Eigen::VectorXd sol = lu.solve(rhs);
    return {sol.data(), sol.data() + n};
}

Vec2 sheet_velocity(const BodyGeometry& body, const std::vector<double>& density, Vec2 x) {
    Vec2 u{0.0, 0.0};
    for (std::size_t j = 0; j < body.n_panels(); ++j)
        u += density[j] * body.panels[j].ds * vortex_kernel(x - body.panels[j].mid);
    return u;
}

Vec2 sheet_velocity_boundary(const BodyGeometry& body,
                             const std::vector<double>& density, std::size_t i) {
    Vec2 u{0.0, 0.0};
    for (std::size_t j = 0; j < body.n_panels(); ++j) {
        if (j == i) continue;
        u += density[j] * body.panels[j].ds * vortex_kernel(body.panels[i].mid - body.panels[j].mid);
    }
    return u + 0.5 * density[i] * body.panels[i].tau;
}

Vec2 harmonic_boundary(const PotentialTables& t, const BodyGeometry& body, std::size_t i) {
    if (t.is_disk) {
        const Vec2 x = t.nodes[i].x;
        return vortex_kernel(x);
    }
    return sheet_velocity_boundary(body, t.unit_sheet, i);
}

std::array<Vec2, 3> kirchhoff_boundary(const PotentialTables& t,
                                       const BodyGeometry& body, std::size_t i) {
    if (t.is_disk) {
        const double a = t.disk_radius;
        const Vec2 x = t.nodes[i].x;
        return {disk_gradphi(a, x, 0), disk_gradphi(a, x, 1), disk_gradphi(a, x, 2)};
    }
    const Panel& p = body.panels[i];
    std::array<Vec2, 3> out;
    std::array<double, 3> kd = neumann_data(p);
    for (int c = 0; c < 3; ++c) {
        Vec2 pv{0.0, 0.0};
        for (std::size_t j = 0; j < body.n_panels(); ++j) {
            if (j == i) continue;
            pv += t.sigma[static_cast<std::size_t>(c)][j] * body.panels[j].ds *
                  source_kernel(p.mid - body.panels[j].mid);
        }
        out[static_cast<std::size_t>(c)] = pv.dot(p.tau) * p.tau + kd[static_cast<std::size_t>(c)] * p.n;
    }
    return out;
}

} // namespace vortexbody
