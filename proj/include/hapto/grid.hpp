#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace hapto {

/// Cell-centered discretization of an interval [0,lx] or rectangle
/// [0,lx]x[0,ly]. Cell (i,j) has center ((i+0.5)dx, (j+0.5)dy); fields are
/// stored row-major, index = j*nx + i. All discrete operators use
/// homogeneous-Neumann ghost reflection, so dx = lx/nx holds exactly.
struct Grid {
    int dim = 1;
    int nx = 0;
    int ny = 1;
    double lx = 1.0;
    double ly = 1.0;
    double dx = 0.0;
    double dy = 0.0;

    static Grid interval(int nx, double lx = 1.0);
    static Grid rectangle(int nx, int ny, double lx = 1.0, double ly = 1.0);

    int cells() const { return nx * ny; }
    int index(int i, int j) const { return j * nx + i; }
    double x_center(int i) const { return (i + 0.5) * dx; }
    double y_center(int j) const { return (j + 0.5) * dy; }

    /// Volume of one cell: dx in 1D, dx*dy in 2D.
    double cell_volume() const { return dim == 1 ? dx : dx * dy; }
    /// |Omega|.
    double domain_measure() const { return dim == 1 ? lx : lx * ly; }

    bool same_layout(const Grid& o) const {
        return dim == o.dim && nx == o.nx && ny == o.ny && lx == o.lx && ly == o.ly;
    }
};

/// One scalar value per cell of a Grid. Value semantics; operators return
/// fresh Fields and never alias their inputs.
class Field {
public:
    Field() = default;
    explicit Field(const Grid& grid, double fill = 0.0)
        : grid_(grid), values_(static_cast<size_t>(grid.cells()), fill) {}
    Field(const Grid& grid, std::vector<double> values)
        : grid_(grid), values_(std::move(values)) {
        if (values_.size() != static_cast<size_t>(grid_.cells()))
            throw std::invalid_argument("Field: value count does not match grid");
    }

    const Grid& grid() const { return grid_; }
    int size() const { return static_cast<int>(values_.size()); }

    double& operator[](int k) { return values_[static_cast<size_t>(k)]; }
    double operator[](int k) const { return values_[static_cast<size_t>(k)]; }
    double& at(int i, int j) { return values_[static_cast<size_t>(grid_.index(i, j))]; }
    double at(int i, int j) const { return values_[static_cast<size_t>(grid_.index(i, j))]; }

    std::span<double> values() { return values_; }
    std::span<const double> values() const { return values_; }
    const std::vector<double>& vec() const { return values_; }

    bool all_finite() const;

private:
    Grid grid_;
    std::vector<double> values_;
};

struct FieldNorms {
    double min = 0.0;
    double max = 0.0;
    double sup = 0.0;  // max |.|
    double l1 = 0.0;   // volume-weighted
    double l2 = 0.0;   // volume-weighted
};

void require_same_grid(const Field& a, const Field& b);

}  // namespace hapto
