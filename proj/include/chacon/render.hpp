#pragma once

#include "chacon/diagonals.hpp"

#include <string>

namespace chacon {

/// Stacking diagram of tower `step`: one rectangle per level at its exact
/// interval position, rows bottom-up, with the three subcolumn cuts and the
/// spacers of the step highlighted.  Coordinates map to SVG units by a
/// single scale factor.
std::string render_figure1(const TowerGeometry& g, int step);

/// The 3x3 transition grid between D_n and D_{n+1} for d = 2: rows tau(1),
/// columns tau(2).  Cells are computed from the admissible-tau rules, not
/// hard-coded: forbidden cells are starred, the three central cells carry
/// the same refined diagonal, corner cells show their refined offsets.
std::string render_figure2(const TowerGeometry& g, const DiagonalD& diag);

} // namespace chacon
