#include "hapto/operators.hpp"

#include <algorithm>
#include <cmath>

namespace hapto {

Field laplacian(const Field& f) {
    const Grid& g = f.grid();
    Field out(g);
    const double ix2 = 1.0 / (g.dx * g.dx);
    const double iy2 = 1.0 / (g.dy * g.dy);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double c = f.at(i, j);
            // ghost reflection: out-of-domain neighbor mirrors the cell itself
            const double xl = (i > 0) ? f.at(i - 1, j) : c;
            const double xr = (i < g.nx - 1) ? f.at(i + 1, j) : c;
            double lap = (xl - 2.0 * c + xr) * ix2;
            if (g.dim == 2) {
                const double yl = (j > 0) ? f.at(i, j - 1) : c;
                const double yr = (j < g.ny - 1) ? f.at(i, j + 1) : c;
                lap += (yl - 2.0 * c + yr) * iy2;
            }
            out.at(i, j) = lap;
        }
    }
    return out;
}

Field haptotaxis_divergence(const Field& u, const Field& v) {
    require_same_grid(u, v);
    const Grid& g = u.grid();
    Field out(g);

    // x-faces: flux F = u_up * (v_R - v_L)/dx, zero on boundary faces.
    // out -= (F_{i+1/2} - F_{i-1/2})/dx, accumulated one interior face at a time
    // so the volume-weighted sum telescopes exactly.
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i + 1 < g.nx; ++i) {
            const double vel = (v.at(i + 1, j) - v.at(i, j)) / g.dx;
            const double uface = (vel > 0.0) ? u.at(i, j) : u.at(i + 1, j);
            const double flux = uface * vel;
            out.at(i, j) -= flux / g.dx;
            out.at(i + 1, j) += flux / g.dx;
        }
    }
    if (g.dim == 2) {
        for (int j = 0; j + 1 < g.ny; ++j) {
            for (int i = 0; i < g.nx; ++i) {
                const double vel = (v.at(i, j + 1) - v.at(i, j)) / g.dy;
                const double uface = (vel > 0.0) ? u.at(i, j) : u.at(i, j + 1);
                const double flux = uface * vel;
                out.at(i, j) -= flux / g.dy;
                out.at(i, j + 1) += flux / g.dy;
            }
        }
    }
    return out;
}

double integrate(const Field& f) {
    double s = 0.0;
    for (double v : f.values()) s += v;
    return s * f.grid().cell_volume();
}

double grad_quartic_norm(const Field& v) {
    const Grid& g = v.grid();
    double s = 0.0;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            double gx = 0.0, gy = 0.0;
            if (i > 0 && i < g.nx - 1)
                gx = (v.at(i + 1, j) - v.at(i - 1, j)) / (2.0 * g.dx);
            if (g.dim == 2 && j > 0 && j < g.ny - 1)
                gy = (v.at(i, j + 1) - v.at(i, j - 1)) / (2.0 * g.dy);
            const double q = gx * gx + gy * gy;
            s += q * q;
        }
    }
    return s * g.cell_volume();
}

FieldNorms field_norms(const Field& f) {
    FieldNorms n;
    if (f.size() == 0) return n;
    const double vol = f.grid().cell_volume();
    n.min = f[0];
    n.max = f[0];
    double l1 = 0.0, l2 = 0.0;
    for (double v : f.values()) {
        n.min = std::min(n.min, v);
        n.max = std::max(n.max, v);
        l1 += std::abs(v);
        l2 += v * v;
    }
    n.sup = std::max(std::abs(n.min), std::abs(n.max));
    n.l1 = l1 * vol;
    n.l2 = std::sqrt(l2 * vol);
    return n;
}

double max_face_speed(const Field& v) {
    const Grid& g = v.grid();
    double m = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i + 1 < g.nx; ++i)
            m = std::max(m, std::abs(v.at(i + 1, j) - v.at(i, j)) / g.dx);
    if (g.dim == 2)
        for (int j = 0; j + 1 < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                m = std::max(m, std::abs(v.at(i, j + 1) - v.at(i, j)) / g.dy);
    return m;
}

}  // namespace hapto
