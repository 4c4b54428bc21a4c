#include "vortexbody/diagnostics.hpp"

#include "vortexbody/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace vortexbody {

namespace {
constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * pi;
} // namespace

// ---------------------------------------------------------------- energy

EnergyBreakdown energy_like(const PotentialTables& t, const BodyGeometry& body,
                            const VortexField& field, const BodyCorrection& corr,
                            Vec2 ell, double r, const EnergyOptions& opts) {
    const double r_out = opts.radius_factor * opts.support_radius;
    if (r_out < opts.support_radius || opts.support_radius < body.max_radius)
        throw std::invalid_argument("energy_like: quadrature radius below the vorticity support");

    // Radial bands: near-boundary sliver (non-circular bodies), a fine band
    // across the support, then geometric rings to R_E.
    std::vector<double> edges;
    edges.push_back(body.min_radius);
    if (body.max_radius > body.min_radius) {
        const int nsliver = 8;
        for (int i = 1; i <= nsliver; ++i)
            edges.push_back(body.min_radius + (body.max_radius - body.min_radius) * i / nsliver);
    } else {
        edges.back() = body.max_radius;
    }
    const double fine_hi = std::min(r_out, opts.support_radius * 1.25);
    double dr = opts.fine_dr;
    if (dr <= 0.0)
        dr = (field.delta > 0.0) ? 0.5 * field.delta : (fine_hi - body.max_radius) / 256.0;
    dr = std::clamp(dr, (fine_hi - body.max_radius) / 2048.0, (fine_hi - body.max_radius) / 8.0);
    for (double rr = body.max_radius + dr; rr < fine_hi; rr += dr) edges.push_back(rr);
    edges.push_back(fine_hi);
    const int ngeo = 96;
    const double ratio = std::pow(r_out / fine_hi, 1.0 / ngeo);
    for (int i = 1; i <= ngeo; ++i) edges.push_back(fine_hi * std::pow(ratio, i));

    const int nphi = opts.nphi;
    const std::size_t nring = edges.size() - 1;
    std::vector<double> ring_sum(nring, 0.0), ring_max(nring, 0.0);
    parallel_for(nring, [&](std::size_t k) {
        const double rm = 0.5 * (edges[k] + edges[k + 1]);
        const double w = rm * (edges[k + 1] - edges[k]) * two_pi / nphi;
        double acc = 0.0, mx = 0.0;
        for (int q = 0; q < nphi; ++q) {
            const double phi = two_pi * (q + 0.5) / nphi;
            const Vec2 x{rm * std::cos(phi), rm * std::sin(phi)};
            if (rm < body.max_radius && body.contains(x)) continue;
            const Vec2 v = finite_energy_velocity(t, body, field, corr, ell, r, x);
            acc += v.norm2() * w;
            mx = std::max(mx, v.norm());
        }
        ring_sum[k] = acc;
        ring_max[k] = mx;
    });
    double fluid = 0.0;
    for (double s : ring_sum) fluid += s;

    EnergyBreakdown out;
    out.body_linear = 0.5 * body.mass * ell.norm2();
    out.body_angular = 0.5 * body.inertia * r * r;
    out.fluid = 0.5 * fluid;
    out.total = out.body_linear + out.body_angular + out.fluid;
    out.outer_radius = r_out;
    const double c = ring_max[nring - 1] * r_out * r_out; // |v~| <= c / |x|^2
    out.tail_estimate = 0.5 * pi * c * c / (r_out * r_out);
    return out;
}

// ------------------------------------------------------------- vorticity

VorticityNorms vorticity_norms(const VortexField& field, double p, const BinGrid& grid) {
    if (!(p > 1.0)) throw std::invalid_argument("vorticity_norms: p must exceed 1");
    VorticityNorms out;
    double l1 = 0.0, lp = 0.0;
    for (std::size_t j = 0; j < field.size(); ++j) {
        l1 += std::abs(field.vorticity[j]) * field.area[j];
        lp += std::pow(std::abs(field.vorticity[j]), p) * field.area[j];
    }
    out.l1_particle = l1;
    out.lp_particle = std::pow(lp, 1.0 / p);

    if (grid.nx > 0 && grid.ny > 0) {
        std::vector<double> cells(static_cast<std::size_t>(grid.nx) * grid.ny, 0.0);
        for (std::size_t j = 0; j < field.size(); ++j) {
            const Vec2 d = field.pos[j] - grid.origin;
            const int i = static_cast<int>(std::lround(d.x / grid.h));
            const int k = static_cast<int>(std::lround(d.y / grid.h));
            if (i < 0 || i >= grid.nx || k < 0 || k >= grid.ny) continue;
            cells[static_cast<std::size_t>(k) * grid.nx + i] += field.strength[j];
        }
        const double area = grid.h * grid.h;
        double g1 = 0.0, gp = 0.0;
        for (double c : cells) {
            const double w = c / area;
            g1 += std::abs(w) * area;
            gp += std::pow(std::abs(w), p) * area;
        }
        out.l1_grid = g1;
        out.lp_grid = std::pow(gp, 1.0 / p);
    }
    return out;
}

// --------------------------------------------------------------- Blasius

BlasiusResult blasius_integrals(const PotentialTables& t, const BodyGeometry& body) {
    BlasiusResult out;
    std::complex<double> cn{0.0, 0.0};
    double cx = 0.0;
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        const BoundaryNode& bn = t.nodes[i];
        const Vec2 h = harmonic_boundary(t, body, i);
        const double h2 = h.norm2();
        out.normal_form += h2 * bn.ds * bn.n;
        out.moment_form += h2 * bn.k3 * bn.ds;
        out.scale += h2 * bn.ds;

        const std::complex<double> w{h.x, -h.y};
        const std::complex<double> tc{bn.tau.x, bn.tau.y};
        const std::complex<double> z{bn.x.x, bn.x.y};
        cn += w * w * tc * bn.ds;
        cx += (z * w * w * tc).real() * bn.ds;
    }
    const std::complex<double> bn_c = std::complex<double>{0.0, 1.0} * std::conj(cn);
    out.normal_complex = {bn_c.real(), bn_c.imag()};
    out.moment_complex = cx;
    return out;
}

// --------------------------------------------------- test functions

namespace {

// Quintic cutoff: 1 below r0, 0 above r1, C^2 in between.
struct Cutoff {
    double r0, r1;
    double chi(double s) const {
        if (s <= r0) return 1.0;
        if (s >= r1) return 0.0;
        const double u = (s - r0) / (r1 - r0);
        return 1.0 - u * u * u * (10.0 - 15.0 * u + 6.0 * u * u);
    }
    double dchi(double s) const {
        if (s <= r0 || s >= r1) return 0.0;
        const double w = r1 - r0;
        const double u = (s - r0) / w;
        return -30.0 * u * u * (1.0 - u) * (1.0 - u) / w;
    }
    double d2chi(double s) const {
        if (s <= r0 || s >= r1) return 0.0;
        const double w = r1 - r0;
        const double u = (s - r0) / w;
        return -60.0 * u * (1.0 - 3.0 * u + 2.0 * u * u) / (w * w);
    }
};

// exp(1 - 1/(1-u^2)) on u < 1, with first and second radial derivatives.
void bump_profile(double u, double& g, double& dg, double& d2g) {
    if (u >= 1.0) { g = dg = d2g = 0.0; return; }
    const double m = 1.0 - u * u;
    g = std::exp(1.0 - 1.0 / m);
    const double q = 2.0 * u / (m * m);
    dg = -q * g;
    d2g = g * (q * q - 2.0 / (m * m) - 8.0 * u * u / (m * m * m));
}

} // namespace

TestFunction TestFunction::mollified_rigid(Vec2 ell_psi, double r_psi, double r_inner,
                                           double r_outer, std::string name) {
    if (!(r_outer > r_inner) || !(r_inner > 0.0))
        throw std::invalid_argument("mollified_rigid: need 0 < r_inner < r_outer");
    TestFunction f;
    f.kind_ = Kind::rigid;
    f.ell_ = ell_psi;
    f.r_ = r_psi;
    f.r_inner_ = r_inner;
    f.r_outer_ = r_outer;
    f.name_ = std::move(name);
    return f;
}

TestFunction TestFunction::curl_bump(Vec2 center, double width, double amplitude,
                                     std::string name) {
    if (!(width > 0.0)) throw std::invalid_argument("curl_bump: width must be positive");
    TestFunction f;
    f.kind_ = Kind::bump;
    f.center_ = center;
    f.width_ = width;
    f.amp_ = amplitude;
    f.name_ = std::move(name);
    return f;
}

double TestFunction::support_radius() const {
    return kind_ == Kind::rigid ? r_outer_ : width_;
}

Vec2 TestFunction::value(Vec2 x) const {
    if (kind_ == Kind::rigid) {
        const double s = x.norm();
        if (s >= r_outer_) return {0.0, 0.0};
        Cutoff c{r_inner_, r_outer_};
        const double f = x.cross(ell_) + 0.5 * r_ * x.norm2();
        const Vec2 gradf = Vec2{ell_.y, -ell_.x} + r_ * x;
        if (s <= r_inner_) return gradf.perp();
        const Vec2 xhat = x / s;
        const Vec2 gradF = c.dchi(s) * f * xhat + c.chi(s) * gradf;
        return gradF.perp();
    }
    const Vec2 d = x - center_;
    const double s = d.norm();
    if (s >= width_) return {0.0, 0.0};
    double g, dg, d2g;
    bump_profile(s / width_, g, dg, d2g);
    if (s < 1e-14) return {0.0, 0.0};
    const Vec2 gradF = (amp_ * dg / width_) * (d / s);
    return gradF.perp();
}

std::array<Vec2, 2> TestFunction::gradient(Vec2 x) const {
    // Hessian of the stream function F, then rotated: dPsi/dxk = (-H[1][k], H[0][k]).
    double Hxx = 0.0, Hxy = 0.0, Hyy = 0.0;
    if (kind_ == Kind::rigid) {
        const double s = x.norm();
        if (s >= r_outer_) return {Vec2{0, 0}, Vec2{0, 0}};
        Cutoff c{r_inner_, r_outer_};
        if (s <= r_inner_) {
            Hxx = Hyy = r_;
        } else {
            const Vec2 xh = x / s;
            const double f = x.cross(ell_) + 0.5 * r_ * x.norm2();
            const Vec2 gradf = Vec2{ell_.y, -ell_.x} + r_ * x;
            const double chi = c.chi(s), d1 = c.dchi(s), d2 = c.d2chi(s);
            // chi'' xx^T f + chi' [ (I - xx^T)/s f + x gradf^T + gradf x^T ] + chi Hess f
            Hxx = d2 * xh.x * xh.x * f + d1 * ((1.0 - xh.x * xh.x) / s * f + 2.0 * xh.x * gradf.x) + chi * r_;
            Hyy = d2 * xh.y * xh.y * f + d1 * ((1.0 - xh.y * xh.y) / s * f + 2.0 * xh.y * gradf.y) + chi * r_;
            Hxy = d2 * xh.x * xh.y * f + d1 * (-xh.x * xh.y / s * f + xh.x * gradf.y + xh.y * gradf.x);
        }
    } else {
        const Vec2 d = x - center_;
        const double s = d.norm();
        if (s >= width_) return {Vec2{0, 0}, Vec2{0, 0}};
        double g, dg, d2g;
        bump_profile(s / width_, g, dg, d2g);
        const double w2 = width_ * width_;
        if (s < 1e-12) {
            Hxx = Hyy = amp_ * d2g / w2;
        } else {
            const Vec2 dh = d / s;
            const double rad = amp_ * d2g / w2;
            const double tan = amp_ * dg / (width_ * s);
            Hxx = rad * dh.x * dh.x + tan * (1.0 - dh.x * dh.x);
            Hyy = rad * dh.y * dh.y + tan * (1.0 - dh.y * dh.y);
            Hxy = (rad - tan) * dh.x * dh.y;
        }
    }
    // Psi = (-dF/dy, dF/dx)
    return {Vec2{-Hxy, Hxx}, Vec2{-Hyy, Hxy}};
}

void TestFunction::validate(const BodyGeometry& body) const {
    if (kind_ == Kind::rigid && r_inner_ < body.max_radius)
        throw std::invalid_argument("test function is not rigid on the whole body");
    if (kind_ == Kind::bump && center_.norm() - width_ <= body.max_radius)
        throw std::invalid_argument("bump test function overlaps the body");
    double scale = std::max({std::abs(ell_.x), std::abs(ell_.y), std::abs(r_), amp_, 1e-30});
    // rigidity on the body
    for (int q = 0; q < 16; ++q) {
        const double phi = two_pi * q / 16.0;
        const Vec2 x = 0.9 * body.boundary_radius(phi) * Vec2{std::cos(phi), std::sin(phi)};
        const Vec2 rigid = ell_ + r_ * x.perp();
        if ((value(x) - rigid).norm() > 1e-10 * scale)
            throw std::invalid_argument("test function fails the rigidity check");
    }
    // discrete divergence in the fluid
    const double h = 1e-6;
    for (int q = 0; q < 16; ++q) {
        const double phi = two_pi * (q + 0.3) / 16.0;
        const double rr = body.max_radius + 0.3 + 0.15 * q;
        const Vec2 x = rr * Vec2{std::cos(phi), std::sin(phi)};
        const double div = (value({x.x + h, x.y}).x - value({x.x - h, x.y}).x +
                            value({x.x, x.y + h}).y - value({x.x, x.y - h}).y) /
                           (2.0 * h);
        if (std::abs(div) > 1e-5 * scale)
            throw std::invalid_argument("test function fails the divergence check");
    }
}

std::vector<TestFunction> default_test_functions(const BodyGeometry& body,
                                                 double support_radius) {
    const double r0 = std::max(1.1 * body.max_radius, 0.25 * support_radius);
    const double r1 = std::max(2.0 * support_radius, 3.0 * r0);
    std::vector<TestFunction> fam;
    fam.push_back(TestFunction::mollified_rigid({1.0, 0.0}, 0.0, r0, r1, "translation_x"));
    fam.push_back(TestFunction::mollified_rigid({0.0, 0.0}, 1.0, r0, r1, "rotation"));
    const double w = 0.45 * (r1 - body.max_radius);
    const Vec2 c{body.max_radius + 0.5 * (r1 - body.max_radius), 0.0};
    fam.push_back(TestFunction::curl_bump(c, w, 1.0, "bump"));
    for (const auto& f : fam) f.validate(body);
    return fam;
}

// --------------------------------------------------- weak residual

WeakResidual::WeakResidual(const PotentialTables& t, const BodyGeometry& body,
                           std::vector<TestFunction> family, double grid_h,
                           WeakConvention convention, TimeRule rule)
    : tables_(t), body_(body), family_(std::move(family)), convention_(convention),
      rule_(rule) {
    if (family_.empty()) throw std::invalid_argument("weak residual needs a test family");
    for (const auto& f : family_) f.validate(body);

    double lo_x = 0, lo_y = 0, hi_x = 0, hi_y = 0;
    bool first = true;
    for (const auto& f : family_) {
        const Vec2 c = f.support_center();
        const double rr = f.support_radius();
        if (first || c.x - rr < lo_x) lo_x = c.x - rr;
        if (first || c.y - rr < lo_y) lo_y = c.y - rr;
        if (first || c.x + rr > hi_x) hi_x = c.x + rr;
        if (first || c.y + rr > hi_y) hi_y = c.y + rr;
        first = false;
    }
    cell_area_ = grid_h * grid_h;
    const int nx = static_cast<int>(std::ceil((hi_x - lo_x) / grid_h));
    const int ny = static_cast<int>(std::ceil((hi_y - lo_y) / grid_h));
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const Vec2 x{lo_x + (i + 0.5) * grid_h, lo_y + (j + 0.5) * grid_h};
            if (body_.contains(x)) continue;
            bool inside_support = false;
            for (const auto& f : family_)
                if ((x - f.support_center()).norm() < f.support_radius()) {
                    inside_support = true;
                    break;
                }
            if (inside_support) nodes_.push_back(x);
        }
    psi_.resize(nodes_.size() * family_.size());
    dpsi_x_.resize(nodes_.size() * family_.size());
    dpsi_y_.resize(nodes_.size() * family_.size());
    for (std::size_t k = 0; k < nodes_.size(); ++k)
        for (std::size_t q = 0; q < family_.size(); ++q) {
            psi_[k * family_.size() + q] = family_[q].value(nodes_[k]);
            auto gr = family_[q].gradient(nodes_[k]);
            dpsi_x_[k * family_.size() + q] = gr[0];
            dpsi_y_[k * family_.size() + q] = gr[1];
        }
}

void WeakResidual::add_snapshot(const VortexField& field, const BodyCorrection& corr,
                                Vec2 ell, double r, double time) {
    const std::size_t nf = family_.size();
    Snapshot s;
    s.t = time;
    s.pair.assign(nf, 0.0);
    s.advect.assign(nf, 0.0);
    s.coriolis.assign(nf, 0.0);

    std::vector<Vec2> vel(nodes_.size());
    parallel_for(nodes_.size(), [&](std::size_t k) {
        vel[k] = total_velocity(tables_, body_, field, corr, ell, r, nodes_[k]);
    });
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
        const Vec2 v = vel[k];
        const Vec2 w = v - ell - r * nodes_[k].perp();
        for (std::size_t q = 0; q < nf; ++q) {
            const Vec2 psi = psi_[k * nf + q];
            const Vec2 conv = w.x * dpsi_x_[k * nf + q] + w.y * dpsi_y_[k * nf + q];
            s.pair[q] += v.dot(psi) * cell_area_;
            s.advect[q] += v.dot(conv) * cell_area_;
            s.coriolis[q] += r * v.perp().dot(psi) * cell_area_;
        }
    }
    for (std::size_t q = 0; q < nf; ++q) {
        s.pair[q] += body_.mass * ell.dot(family_[q].ell_psi()) +
                     body_.inertia * r * family_[q].r_psi();
        if (convention_ == WeakConvention::rho_weighted)
            s.coriolis[q] += body_.mass * r * ell.perp().dot(family_[q].ell_psi());
    }
    snaps_.push_back(std::move(s));
}

std::vector<double> WeakResidual::residuals() const {
    const std::size_t nf = family_.size();
    std::vector<double> out(nf, 0.0);
    if (snaps_.size() < 2) return out;
    for (std::size_t q = 0; q < nf; ++q) {
        double adv = 0.0, cor = 0.0;
        for (std::size_t k = 0; k + 1 < snaps_.size(); ++k) {
            const double dt = snaps_[k + 1].t - snaps_[k].t;
            if (rule_ == TimeRule::rectangle) {
                adv += snaps_[k].advect[q] * dt;
                cor += snaps_[k].coriolis[q] * dt;
            } else {
                adv += 0.5 * (snaps_[k].advect[q] + snaps_[k + 1].advect[q]) * dt;
                cor += 0.5 * (snaps_[k].coriolis[q] + snaps_[k + 1].coriolis[q]) * dt;
            }
        }
        out[q] = snaps_.back().pair[q] - snaps_.front().pair[q] - adv + cor;
    }
    return out;
}

} // namespace vortexbody
