#pragma once

#include <cstdint>

#include "tilecraft/geom.hpp"

namespace tilecraft {

// Grid is 2^order x 2^order; order 16 keeps ranks within 32 bits while
// making centroid collisions rare on desk-scale data.
inline constexpr int kDefaultHilbertOrder = 16;
inline constexpr int kMaxHilbertOrder = 31;

// Rank of the grid cell (x, y) along the Hilbert curve on a 2^order grid.
// Orientation follows the common convention where the order-1 curve visits
// (0,0), (0,1), (1,1), (1,0).
std::uint64_t hilbert_cell_rank(int order, std::uint32_t x, std::uint32_t y);

// Inverse of hilbert_cell_rank.
void hilbert_rank_to_cell(int order, std::uint64_t rank, std::uint32_t& x, std::uint32_t& y);

// Maps a point inside `universe` onto the 2^order grid and returns the cell
// rank in [0, 4^order). Points on the universe's max edge clamp into the
// last cell. Throws if the point lies outside the universe.
std::uint64_t hilbert_index(const Point& p, const Rect& universe, int order = kDefaultHilbertOrder);

}  // namespace tilecraft
