#pragma once

#include <span>
#include <vector>

#include "xdiff/errors.hpp"

namespace xdiff {

/// Uniform cell-centered 1D mesh on (x_lo, x_hi) with n_cells >= 2.
/// Faces are indexed 0..n_cells; faces 0 and n_cells sit on the boundary
/// and always carry zero flux (homogeneous Neumann closure).
class Grid1D {
public:
    Grid1D(double x_lo, double x_hi, int n_cells);

    double x_lo() const noexcept { return x_lo_; }
    double x_hi() const noexcept { return x_hi_; }
    int n_cells() const noexcept { return n_cells_; }
    double h() const noexcept { return h_; }
    double length() const noexcept { return x_hi_ - x_lo_; }

    double center(int i) const { return centers_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& cell_centers() const noexcept { return centers_; }

    bool same_as(const Grid1D& other) const noexcept {
        return x_lo_ == other.x_lo_ && x_hi_ == other.x_hi_ && n_cells_ == other.n_cells_;
    }

private:
    double x_lo_, x_hi_, h_;
    int n_cells_;
    std::vector<double> centers_;
};

/// Cell-averaged pair (f, g) on a grid at one time instant. States are value
/// snapshots: every operation returns a new state, inputs are never mutated.
struct State {
    Grid1D grid;
    std::vector<double> f;
    std::vector<double> g;
    double time = 0.0;
};

/// Validating constructor for State (lengths match the grid, fields nonnegative).
State make_state(Grid1D grid, std::vector<double> f, std::vector<double> g, double time = 0.0);

/// Gradient of a cell field at the n_cells+1 faces. Interior face k carries
/// (field[k] - field[k-1])/h; the two boundary faces carry exactly 0.
std::vector<double> face_gradient(const Grid1D& grid, std::span<const double> field);

/// Transfer a state between grids sharing endpoints whose cell counts divide
/// one another: conservative averaging when coarsening, piecewise-constant
/// injection when refining. Preserves the total mass of f and of g.
State interpolate_to_grid(const State& src, const Grid1D& dst_grid);

} // namespace xdiff
