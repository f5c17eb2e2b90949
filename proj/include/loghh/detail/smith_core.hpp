#pragma once

#include "loghh/abelian.hpp"

namespace loghh::detail {

// Nonzero diagonal entries of the Smith form, without transforms.
std::vector<Int> invariant_factors(IntMatrix A);

}  // namespace loghh::detail
