#include "vortexbody/regularization.hpp"

#include "vortexbody/log.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace vortexbody {

double GridField::integral() const {
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc * cell_area();
}

double GridField::l1_norm() const {
    double acc = 0.0;
    for (double v : values) acc += std::abs(v);
    return acc * cell_area();
}

double GridField::lp_norm(double p) const {
    double acc = 0.0;
    for (double v : values) acc += std::pow(std::abs(v), p);
    return std::pow(acc * cell_area(), 1.0 / p);
}

GridField make_grid(Vec2 lo, Vec2 hi, double h) {
    GridField g;
    g.h = h;
    g.nx = static_cast<int>(std::ceil((hi.x - lo.x) / h)) + 1;
    g.ny = static_cast<int>(std::ceil((hi.y - lo.y) / h)) + 1;
    g.origin = lo;
    g.values.assign(static_cast<std::size_t>(g.nx) * g.ny, 0.0);
    return g;
}

bool cell_touches_body(const GridField& g, const BodyGeometry& body, int i, int j) {
    const Vec2 c = g.cell_center(i, j);
    const double hh = 0.5 * g.h;
    if (c.norm() - hh * std::numbers::sqrt2 > body.max_radius) return false;
    if (body.contains(c)) return true;
    for (int sx = -1; sx <= 1; sx += 2)
        for (int sy = -1; sy <= 1; sy += 2)
            if (body.contains({c.x + sx * hh, c.y + sy * hh})) return true;
    return false;
}

double restrict_to_fluid(GridField& g, const BodyGeometry& body) {
    double discarded = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (g.at(i, j) != 0.0 && cell_touches_body(g, body, i, j)) {
                discarded += g.at(i, j);
                g.at(i, j) = 0.0;
            }
    return discarded * g.cell_area();
}

GridField mollify(const GridField& w0, int n) {
    if (n < 1) throw std::invalid_argument("mollification level must be positive");
    const double support = 1.0 / n;
    if (w0.h > 0.5 * support)
        throw ResolutionError("grid too coarse to resolve the mollifier (need h <= 1/(2n))");

    // Discrete bump stencil, normalized to unit mass on the grid.
    const int hw = static_cast<int>(std::floor(support / w0.h)) + 1;
    std::vector<double> stencil(static_cast<std::size_t>(2 * hw + 1) * (2 * hw + 1), 0.0);
    double mass = 0.0;
    for (int dj = -hw; dj <= hw; ++dj)
        for (int di = -hw; di <= hw; ++di) {
            const double rx = di * w0.h / support, ry = dj * w0.h / support;
            const double u2 = rx * rx + ry * ry;
            if (u2 >= 1.0) continue;
            const double w = std::exp(-1.0 / (1.0 - u2));
            stencil[static_cast<std::size_t>(dj + hw) * (2 * hw + 1) + (di + hw)] = w;
            mass += w;
        }
    for (double& w : stencil) w /= mass;

    GridField out = w0;
    std::fill(out.values.begin(), out.values.end(), 0.0);
    for (int j = 0; j < w0.ny; ++j)
        for (int i = 0; i < w0.nx; ++i) {
            double acc = 0.0;
            for (int dj = -hw; dj <= hw; ++dj) {
                const int jj = j + dj;
                if (jj < 0 || jj >= w0.ny) continue;
                for (int di = -hw; di <= hw; ++di) {
                    const int ii = i + di;
                    if (ii < 0 || ii >= w0.nx) continue;
                    const double w = stencil[static_cast<std::size_t>(dj + hw) * (2 * hw + 1) + (di + hw)];
                    if (w != 0.0) acc += w * w0.at(ii, jj);
                }
            }
            out.at(i, j) = acc;
        }

    // The support must stay inside a fixed compact set; a nonzero border
    // means the grid margin was too small for this level.
    for (int i = 0; i < out.nx; ++i)
        if (out.at(i, 0) != 0.0 || out.at(i, out.ny - 1) != 0.0)
            throw std::invalid_argument("mollified support reaches the grid edge");
    for (int j = 0; j < out.ny; ++j)
        if (out.at(0, j) != 0.0 || out.at(out.nx - 1, j) != 0.0)
            throw std::invalid_argument("mollified support reaches the grid edge");
    return out;
}

GridField mollify(const GridField& w0, int n, const BodyGeometry& body) {
    GridField out = mollify(w0, n);
    double discarded = restrict_to_fluid(out, body);
    if (discarded != 0.0)
        log::info("mollify: discarded mass %.6e inside the body at level %d", discarded, n);
    return out;
}

double corrected_beta(double beta, const GridField& mollified, const GridField& original) {
    if (mollified.nx != original.nx || mollified.ny != original.ny ||
        mollified.h != original.h)
        throw std::invalid_argument("corrected_beta: fields must share one grid");
    return beta + (mollified.integral() - original.integral());
}

VortexField sample_particles(const GridField& w, const BodyGeometry& body,
                             double delta, double gamma, double p_exponent) {
    VortexField f;
    f.delta = delta;
    f.circulation = gamma;
    f.p_exponent = p_exponent;
    double skipped = 0.0;
    for (int j = 0; j < w.ny; ++j)
        for (int i = 0; i < w.nx; ++i) {
            const double v = w.at(i, j);
            if (v == 0.0) continue;
            if (cell_touches_body(w, body, i, j)) {
                skipped += v * w.cell_area();
                continue;
            }
            f.add_particle(w.cell_center(i, j), v, w.cell_area());
        }
    if (skipped != 0.0)
        log::info("sample_particles: skipped strength %.3e in cells touching the body", skipped);
    return f;
}

} // namespace vortexbody
