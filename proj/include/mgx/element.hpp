#pragma once

// A black-box group element: either a permutation or an invertible matrix over
// GF(2)/GF(3).  All arithmetic goes through the free functions below so callers
// never need to know which backend they hold.

#include <stdexcept>
#include <string>
#include <variant>

#include "mgx/ff.hpp"
#include "mgx/perm.hpp"

namespace mgx {

class BackendMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

using Element = std::variant<Permutation, FFMatrix>;

enum class BackendKind { Permutation, Matrix };

struct Backend {
    BackendKind kind = BackendKind::Permutation;
    std::size_t degree = 0;  // points, or matrix dimension
    int characteristic = 0;  // matrices only

    friend bool operator==(const Backend&, const Backend&) = default;
    std::string describe() const;
};

Backend backend_of(const Element& g);

Element multiply(const Element& a, const Element& b);
Element inverse(const Element& g);
Element power(const Element& g, long long e);
// a^b = b^-1 a b
Element conjugate(const Element& a, const Element& b);
// [a,b] = a^-1 b^-1 a b
Element commutator(const Element& a, const Element& b);
Element identity_of(const Backend& b);
bool is_identity(const Element& g);

inline Element operator*(const Element& a, const Element& b) { return multiply(a, b); }

struct ElementHash {
    std::size_t operator()(const Element& g) const;
};

std::string to_string(const Element& g);

}  // namespace mgx
