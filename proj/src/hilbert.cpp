#include "tilecraft/hilbert.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace tilecraft {

std::uint64_t hilbert_cell_rank(int order, std::uint32_t x, std::uint32_t y) {
    std::uint64_t rank = 0;
    std::uint64_t ux = x;
    std::uint64_t uy = y;
    for (std::uint64_t s = std::uint64_t{1} << (order - 1); s > 0; s >>= 1) {
        std::uint64_t rx = (ux & s) ? 1 : 0;
        std::uint64_t ry = (uy & s) ? 1 : 0;
        rank += s * s * ((3 * rx) ^ ry);
        // rotate the quadrant so the sub-curve lines up
        if (ry == 0) {
            if (rx == 1) {
                ux = s - 1 - ux;
                uy = s - 1 - uy;
            }
            std::swap(ux, uy);
        }
    }
    return rank;
}

void hilbert_rank_to_cell(int order, std::uint64_t rank, std::uint32_t& x, std::uint32_t& y) {
    std::uint64_t ux = 0;
    std::uint64_t uy = 0;
    std::uint64_t t = rank;
    for (std::uint64_t s = 1; s < (std::uint64_t{1} << order); s <<= 1) {
        std::uint64_t rx = 1 & (t / 2);
        std::uint64_t ry = 1 & (t ^ rx);
        if (ry == 0) {
            if (rx == 1) {
                ux = s - 1 - ux;
                uy = s - 1 - uy;
            }
            std::swap(ux, uy);
        }
        ux += s * rx;
        uy += s * ry;
        t /= 4;
    }
    x = static_cast<std::uint32_t>(ux);
    y = static_cast<std::uint32_t>(uy);
}

namespace {

// Grid column/row of a coordinate, clamping the max edge into the last cell.
// A zero-extent axis collapses to cell 0.
std::uint32_t grid_coord(double v, double lo, double hi, std::uint64_t cells) {
    double extent = hi - lo;
    if (extent <= 0.0) return 0;
    double scaled = (v - lo) / extent * static_cast<double>(cells);
    auto cell = static_cast<std::int64_t>(scaled);
    if (cell < 0) cell = 0;
    if (cell >= static_cast<std::int64_t>(cells)) cell = static_cast<std::int64_t>(cells) - 1;
    return static_cast<std::uint32_t>(cell);
}

}  // namespace

std::uint64_t hilbert_index(const Point& p, const Rect& universe, int order) {
    if (order < 1 || order > kMaxHilbertOrder) {
        throw std::invalid_argument("hilbert order out of range");
    }
    if (!rect_contains_point(universe, p)) {
        throw std::invalid_argument("point outside universe");
    }
    std::uint64_t cells = std::uint64_t{1} << order;
    std::uint32_t gx = grid_coord(p.x, universe.min_x, universe.max_x, cells);
    std::uint32_t gy = grid_coord(p.y, universe.min_y, universe.max_y, cells);
    return hilbert_cell_rank(order, gx, gy);
}

}  // namespace tilecraft
