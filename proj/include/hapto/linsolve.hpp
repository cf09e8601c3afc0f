#pragma once

#include <stdexcept>
#include <string>

#include "hapto/grid.hpp"

namespace hapto {

/// Numerical abort: linear-solver non-convergence or a non-finite state.
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LinearSolveStats {
    int iterations = 0;
    double residual = 0.0;  // final ||b - A x||_2
};

/// Solves (diag(c) - mu * Lap_h) x = rhs with the homogeneous-Neumann
/// Laplacian of the rhs grid; c per-cell, c >= some positive level, mu >= 0.
/// 1D grids use a direct tridiagonal solve, 2D grids conjugate gradients.
/// Residual contract: ||b - A x||_2 <= tol * ||b||_2, else SolverError.
Field solve_helmholtz(const Field& rhs, const Field& c, double mu, double tol,
                      LinearSolveStats* stats = nullptr);

/// Same with a constant diagonal coefficient.
Field solve_helmholtz(const Field& rhs, double c, double mu, double tol,
                      LinearSolveStats* stats = nullptr);

}  // namespace hapto
