#pragma once

#include <span>
#include <vector>

#include "mgx/ff.hpp"
#include "mgx/perm.hpp"

namespace mgx {

// The 13 points of PG(2,3) as normalized representatives (first nonzero
// coordinate 1), in lexicographic order.
std::vector<FFVector> projective_points_pg23();

// Normalizes a nonzero vector so its first nonzero coordinate is 1.
FFVector normalize_projective(FFVector v);

// Permutations of the 13 points induced by invertible 3x3 matrices over GF(3),
// acting on row vectors from the right.
std::vector<Permutation> projective_action(std::span<const FFMatrix> generators);

}  // namespace mgx
