#include "hapto/linsolve.hpp"

#include <cmath>
#include <vector>

namespace hapto {

namespace {

// y = (diag(c) - mu * Lap_h) x, ghost-reflection Neumann stencil.
void apply_operator(const Grid& g, const std::vector<double>& c, double mu,
                    const std::vector<double>& x, std::vector<double>& y) {
    const double mx = mu / (g.dx * g.dx);
    const double my = mu / (g.dy * g.dy);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const int k = g.index(i, j);
            const double xc = x[static_cast<size_t>(k)];
            double acc = c[static_cast<size_t>(k)] * xc;
            if (i > 0) acc -= mx * (x[static_cast<size_t>(k - 1)] - xc);
            if (i < g.nx - 1) acc -= mx * (x[static_cast<size_t>(k + 1)] - xc);
            if (g.dim == 2) {
                if (j > 0) acc -= my * (x[static_cast<size_t>(k - g.nx)] - xc);
                if (j < g.ny - 1) acc -= my * (x[static_cast<size_t>(k + g.nx)] - xc);
            }
            y[static_cast<size_t>(k)] = acc;
        }
    }
}

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

Field solve_tridiagonal(const Field& rhs, const Field& c, double mu) {
    const Grid& g = rhs.grid();
    const int n = g.nx;
    const double m = mu / (g.dx * g.dx);
    // diag: c_i + (interior faces)*m; off-diagonals -m
    std::vector<double> diag(static_cast<size_t>(n)), rp(static_cast<size_t>(n)),
        x(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const int faces = (i > 0 ? 1 : 0) + (i < n - 1 ? 1 : 0);
        diag[static_cast<size_t>(i)] = c[i] + faces * m;
        rp[static_cast<size_t>(i)] = rhs[i];
    }
    // Thomas forward sweep
    std::vector<double> cp(static_cast<size_t>(n));
    cp[0] = -m / diag[0];
    rp[0] = rp[0] / diag[0];
    for (int i = 1; i < n; ++i) {
        const double denom = diag[static_cast<size_t>(i)] + m * cp[static_cast<size_t>(i - 1)];
        cp[static_cast<size_t>(i)] = -m / denom;
        rp[static_cast<size_t>(i)] =
            (rp[static_cast<size_t>(i)] + m * rp[static_cast<size_t>(i - 1)]) / denom;
    }
    x[static_cast<size_t>(n - 1)] = rp[static_cast<size_t>(n - 1)];
    for (int i = n - 2; i >= 0; --i)
        x[static_cast<size_t>(i)] =
            rp[static_cast<size_t>(i)] - cp[static_cast<size_t>(i)] * x[static_cast<size_t>(i + 1)];
    return Field(g, std::move(x));
}

Field solve_cg(const Field& rhs, const Field& c, double mu, double tol, LinearSolveStats* stats) {
    const Grid& g = rhs.grid();
    const size_t n = static_cast<size_t>(g.cells());
    const std::vector<double>& b = rhs.vec();
    const std::vector<double>& cd = c.vec();

    std::vector<double> x(n, 0.0), r = b, p = b, ap(n);
    const double bnorm = norm2(b);
    if (bnorm == 0.0) return Field(g, std::move(x));
    const double target = tol * bnorm;

    double rr = 0.0;
    for (double v : r) rr += v * v;

    const int max_iter = 50 * (g.nx + g.ny) + 200;
    int it = 0;
    for (; it < max_iter; ++it) {
        if (std::sqrt(rr) <= target) break;
        apply_operator(g, cd, mu, p, ap);
        double pap = 0.0;
        for (size_t k = 0; k < n; ++k) pap += p[k] * ap[k];
        const double alpha = rr / pap;
        double rr_new = 0.0;
        for (size_t k = 0; k < n; ++k) {
            x[k] += alpha * p[k];
            r[k] -= alpha * ap[k];
            rr_new += r[k] * r[k];
        }
        const double beta = rr_new / rr;
        for (size_t k = 0; k < n; ++k) p[k] = r[k] + beta * p[k];
        rr = rr_new;
    }
    if (std::sqrt(rr) > target)
        throw SolverError("CG failed to reach residual " + std::to_string(target) + " in " +
                          std::to_string(max_iter) + " iterations");
    if (stats) {
        stats->iterations = it;
        stats->residual = std::sqrt(rr);
    }
    return Field(g, std::move(x));
}

}  // namespace

Field solve_helmholtz(const Field& rhs, const Field& c, double mu, double tol,
                      LinearSolveStats* stats) {
    require_same_grid(rhs, c);
    const Grid& g = rhs.grid();
    Field x = (g.dim == 1) ? solve_tridiagonal(rhs, c, mu) : solve_cg(rhs, c, mu, tol, stats);

    // residual contract holds for both paths
    std::vector<double> ax(static_cast<size_t>(g.cells()));
    apply_operator(g, c.vec(), mu, x.vec(), ax);
    double rnorm = 0.0, bnorm = 0.0;
    for (int k = 0; k < g.cells(); ++k) {
        const double d = rhs[k] - ax[static_cast<size_t>(k)];
        rnorm += d * d;
        bnorm += rhs[k] * rhs[k];
    }
    rnorm = std::sqrt(rnorm);
    bnorm = std::sqrt(bnorm);
    if (!(rnorm <= tol * bnorm) && bnorm > 0.0)
        throw SolverError("linear solve residual " + std::to_string(rnorm) +
                          " exceeds tolerance");
    if (stats && g.dim == 1) {
        stats->iterations = 0;
        stats->residual = rnorm;
    }
    return x;
}

Field solve_helmholtz(const Field& rhs, double c, double mu, double tol,
                      LinearSolveStats* stats) {
    return solve_helmholtz(rhs, Field(rhs.grid(), c), mu, tol, stats);
}

}  // namespace hapto
