#include "hapto/grid.hpp"

#include <cmath>

namespace hapto {

Grid Grid::interval(int nx, double lx) {
    if (nx < 4) throw std::invalid_argument("Grid: nx must be >= 4");
    if (!(lx > 0.0)) throw std::invalid_argument("Grid: lx must be positive");
    Grid g;
    g.dim = 1;
    g.nx = nx;
    g.ny = 1;
    g.lx = lx;
    g.ly = 1.0;
    g.dx = lx / nx;
    g.dy = 1.0;
    return g;
}

Grid Grid::rectangle(int nx, int ny, double lx, double ly) {
    if (nx < 4 || ny < 4) throw std::invalid_argument("Grid: nx and ny must be >= 4");
    if (!(lx > 0.0) || !(ly > 0.0)) throw std::invalid_argument("Grid: side lengths must be positive");
    Grid g;
    g.dim = 2;
    g.nx = nx;
    g.ny = ny;
    g.lx = lx;
    g.ly = ly;
    g.dx = lx / nx;
    g.dy = ly / ny;
    return g;
}

bool Field::all_finite() const {
    for (double v : values_)
        if (!std::isfinite(v)) return false;
    return true;
}

void require_same_grid(const Field& a, const Field& b) {
    if (!a.grid().same_layout(b.grid()))
        throw std::invalid_argument("fields live on different grids");
}

}  // namespace hapto
