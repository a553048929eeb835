#pragma once

// Exhaustive subgroup searches used to locate the 3^2:D8 subgroups of PSL3(3).

#include <cstdint>
#include <vector>

#include "mgx/oracle.hpp"

namespace mgx {

struct SubgroupCandidate {
    std::vector<Permutation> generators;
    std::vector<Permutation> elements;  // sorted
    std::vector<std::size_t> involution_orbits;  // orbit sizes on the ambient involutions, ascending
};

// Elementary abelian subgroups of order 9, each as its sorted element list.
std::vector<std::vector<Permutation>> elementary_abelian_9(const BSGS& group);

// All subgroups H of order 72 containing a normal elementary abelian E of order
// 9 with H/E dihedral of order 8, deduplicated, each with its conjugation orbits
// on the involutions of the ambient group.
std::vector<SubgroupCandidate> find_3sq_d8_subgroups(const BSGS& group);

}  // namespace mgx
