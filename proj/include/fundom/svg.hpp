#pragma once

#include "fundom/result.hpp"

#include <string>

namespace fundom {

// 2D projection of the walls on the boundary of the upper half-space model
// (the hyperbolic-plane picture itself for the 2D families). Generator
// representative walls are stroked bold, their orbit copies thin.
std::string render_svg(const RunResult &r, const Family &fam);

} // namespace fundom
