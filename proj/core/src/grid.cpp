#include "xdiff/grid.hpp"

#include <string>

namespace xdiff {

Grid1D::Grid1D(double x_lo, double x_hi, int n_cells) : x_lo_(x_lo), x_hi_(x_hi), n_cells_(n_cells) {
    if (!(x_lo < x_hi)) {
        throw BadDomain("grid requires x_lo < x_hi, got [" + std::to_string(x_lo) + ", " +
                        std::to_string(x_hi) + "]");
    }
    if (n_cells < 2) {
        throw BadDomain("grid requires n_cells >= 2, got " + std::to_string(n_cells));
    }
    h_ = (x_hi - x_lo) / n_cells;
    centers_.resize(static_cast<std::size_t>(n_cells));
    for (int i = 0; i < n_cells; ++i) {
        centers_[static_cast<std::size_t>(i)] = x_lo + (i + 0.5) * h_;
    }
}

State make_state(Grid1D grid, std::vector<double> f, std::vector<double> g, double time) {
    const auto n = static_cast<std::size_t>(grid.n_cells());
    if (f.size() != n || g.size() != n) {
        throw LengthMismatch("state fields must have n_cells entries, got f: " +
                             std::to_string(f.size()) + ", g: " + std::to_string(g.size()) +
                             ", n_cells: " + std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (f[i] < 0.0 || g[i] < 0.0) {
            throw NegativeState("state fields must be nonnegative, cell " + std::to_string(i));
        }
    }
    return State{std::move(grid), std::move(f), std::move(g), time};
}

std::vector<double> face_gradient(const Grid1D& grid, std::span<const double> field) {
    const auto n = static_cast<std::size_t>(grid.n_cells());
    if (field.size() != n) {
        throw LengthMismatch("face_gradient: field has " + std::to_string(field.size()) +
                             " entries, grid has " + std::to_string(n) + " cells");
    }
    std::vector<double> grad(n + 1, 0.0);
    const double inv_h = 1.0 / grid.h();
    for (std::size_t k = 1; k < n; ++k) {
        grad[k] = (field[k] - field[k - 1]) * inv_h;
    }
    return grad; // faces 0 and n stay exactly 0
}

namespace {

std::vector<double> coarsen(std::span<const double> src, int ratio) {
    std::vector<double> dst(src.size() / static_cast<std::size_t>(ratio));
    for (std::size_t j = 0; j < dst.size(); ++j) {
        double sum = 0.0;
        for (int r = 0; r < ratio; ++r) {
            sum += src[j * static_cast<std::size_t>(ratio) + static_cast<std::size_t>(r)];
        }
        dst[j] = sum / ratio;
    }
    return dst;
}

std::vector<double> refine(std::span<const double> src, int ratio) {
    std::vector<double> dst(src.size() * static_cast<std::size_t>(ratio));
    for (std::size_t j = 0; j < dst.size(); ++j) {
        dst[j] = src[j / static_cast<std::size_t>(ratio)];
    }
    return dst;
}

} // namespace

State interpolate_to_grid(const State& src, const Grid1D& dst_grid) {
    const Grid1D& sg = src.grid;
    if (sg.x_lo() != dst_grid.x_lo() || sg.x_hi() != dst_grid.x_hi()) {
        throw IncompatibleGrids("interpolate_to_grid: grids must share endpoints");
    }
    const int ns = sg.n_cells();
    const int nd = dst_grid.n_cells();
    if (ns >= nd) {
        if (ns % nd != 0) {
            throw IncompatibleGrids("interpolate_to_grid: " + std::to_string(nd) +
                                    " does not divide " + std::to_string(ns));
        }
        const int ratio = ns / nd;
        return State{dst_grid, coarsen(src.f, ratio), coarsen(src.g, ratio), src.time};
    }
    if (nd % ns != 0) {
        throw IncompatibleGrids("interpolate_to_grid: " + std::to_string(ns) +
                                " does not divide " + std::to_string(nd));
    }
    const int ratio = nd / ns;
    return State{dst_grid, refine(src.f, ratio), refine(src.g, ratio), src.time};
}

} // namespace xdiff
