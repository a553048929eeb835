#pragma once

// Deterministic permutation-group ground truth: Schreier-Sims, membership,
// exhaustive enumeration, involution censuses and conjugation orbits.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "mgx/perm.hpp"

namespace mgx {

class OracleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kEnumerationCap = 10'000'000;

class BSGS {
public:
    struct Level {
        Permutation::Point base = 0;
        std::vector<Permutation> generators;  // strong generators fixing earlier base points
        std::vector<Permutation::Point> orbit;
        // transversal[pt] maps base to pt; only meaningful for pt in orbit.
        std::vector<std::optional<Permutation>> transversal;
    };

    std::size_t degree() const { return degree_; }
    std::uint64_t order() const;
    std::vector<Permutation::Point> base() const;
    const std::vector<Level>& levels() const { return levels_; }
    const std::vector<Permutation>& generators() const { return generators_; }

    // Residue after sifting, with the level where sifting stopped.
    std::pair<Permutation, std::size_t> sift(const Permutation& g) const;

    // Visits every element exactly once in a fixed order; stops early if the
    // visitor returns false.
    void for_each_element(const std::function<bool(const Permutation&)>& visit) const;

private:
    friend BSGS schreier_sims(std::span<const Permutation> generators, std::size_t degree);
    void add_generator(std::size_t level, const Permutation& g);
    void extend_orbit(std::size_t level);

    std::size_t degree_ = 0;
    std::vector<Permutation> generators_;
    std::vector<Level> levels_;
};

// Base points are chosen as the smallest moved points.  `degree` is required
// when the generator list may be empty.
BSGS schreier_sims(std::span<const Permutation> generators, std::size_t degree = 0);

bool is_member(const Permutation& g, const BSGS& group);

// All elements, sorted by image array; throws if the order exceeds the cap.
std::vector<Permutation> elements(const BSGS& group, std::uint64_t cap = kEnumerationCap);

// All elements of order 2, sorted by image array.
std::vector<Permutation> involutions(const BSGS& group, std::uint64_t cap = kEnumerationCap);

struct OrbitPartition {
    std::vector<std::size_t> sizes;           // ascending
    std::vector<Permutation> representatives;  // minimal element of each orbit, same order as sizes
    std::vector<std::vector<std::size_t>> orbits;  // indices into the input set
};

// Orbits of <acting> on `set` by conjugation.  Throws OracleError if the set is
// not closed under conjugation, or if an orbit size fails to divide the order
// of the acting group.
OrbitPartition conjugation_orbits(std::span<const Permutation> acting, std::span<const Permutation> set);

std::uint64_t subgroup_order(std::span<const Permutation> elements, std::size_t degree = 0);

}  // namespace mgx
