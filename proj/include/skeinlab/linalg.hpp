#pragma once

#include "skeinlab/ratfn.hpp"

#include <optional>
#include <vector>

namespace skeinlab {

using RatVec = std::vector<RatFn>;
using RatMat = std::vector<RatVec>;

// Basis of the right nullspace of a (rows are equations).  Rows are first
// cleared of denominators, then reduced by fraction-free (Bareiss-style)
// elimination; only the final back-substitution divides.
std::vector<RatVec> ratfn_nullspace(const RatMat& a);

// Unique solution of a x = b when a is square and invertible; nullopt when
// the solution does not exist or is not unique.
std::optional<RatVec> ratfn_solve(const RatMat& a, const RatVec& b);

}  // namespace skeinlab
