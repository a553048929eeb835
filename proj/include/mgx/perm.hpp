#pragma once

#include <cstdint>
#include <iosfwd>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mgx {

class PermError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Permutation of {0, .., n-1} acting on the right: point^(g*h) = (point^g)^h.
// Text form is 1-based.
class Permutation {
public:
    using Point = std::uint32_t;

    Permutation() = default;
    explicit Permutation(std::size_t degree);
    // Images are 0-based; throws PermError if not a bijection.
    explicit Permutation(std::vector<Point> images);

    static Permutation identity(std::size_t degree) { return Permutation(degree); }
    // 1-based cycles, e.g. from_cycles(5, {{1,2,3},{4,5}}).
    static Permutation from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles);

    std::size_t degree() const { return images_.size(); }
    Point operator[](Point i) const { return images_[i]; }
    std::span<const Point> images() const { return images_; }

    bool is_identity() const;
    Permutation inverse() const;
    Permutation pow(long long e) const;
    std::uint64_t order() const;
    // Lengths of all cycles, fixed points included.
    std::vector<std::size_t> cycle_lengths() const;
    // Smallest moved point, or degree() for the identity.
    Point first_moved() const;

    friend Permutation operator*(const Permutation& a, const Permutation& b);
    friend bool operator==(const Permutation& a, const Permutation& b) = default;
    friend auto operator<=>(const Permutation& a, const Permutation& b) = default;

    std::size_t hash() const;
    std::string to_cycle_string() const;

private:
    std::vector<Point> images_;
};

// a^b = b^-1 a b
Permutation conjugate(const Permutation& a, const Permutation& b);

struct PermutationHash {
    std::size_t operator()(const Permutation& p) const { return p.hash(); }
};

// `perm <n>` header then n 1-based images.
Permutation read_permutation(std::istream& in);
void write_permutation(std::ostream& out, const Permutation& p);

}  // namespace mgx
