#include "mgx/element.hpp"

#include <sstream>

namespace mgx {

std::string Backend::describe() const
{
    std::ostringstream out;
    if (kind == BackendKind::Permutation) {
        out << "perm " << degree;
    } else {
        out << "matgrp " << characteristic << ' ' << degree;
    }
    return out.str();
}

Backend backend_of(const Element& g)
{
    if (const auto* p = std::get_if<Permutation>(&g)) return {BackendKind::Permutation, p->degree(), 0};
    const auto& m = std::get<FFMatrix>(g);
    return {BackendKind::Matrix, m.rows(), m.characteristic()};
}

namespace {

void require_same_backend(const Element& a, const Element& b)
{
    if (backend_of(a) != backend_of(b)) {
        throw BackendMismatch("backend mismatch: " + backend_of(a).describe() + " vs " + backend_of(b).describe());
    }
}

}  // namespace

Element multiply(const Element& a, const Element& b)
{
    require_same_backend(a, b);
    if (const auto* p = std::get_if<Permutation>(&a)) return *p * std::get<Permutation>(b);
    return std::get<FFMatrix>(a) * std::get<FFMatrix>(b);
}

Element inverse(const Element& g)
{
    if (const auto* p = std::get_if<Permutation>(&g)) return p->inverse();
    return std::get<FFMatrix>(g).inverse();
}

Element power(const Element& g, long long e)
{
    if (const auto* p = std::get_if<Permutation>(&g)) return p->pow(e);
    return std::get<FFMatrix>(g).pow(e);
}

Element conjugate(const Element& a, const Element& b) { return inverse(b) * a * b; }

Element commutator(const Element& a, const Element& b) { return inverse(a) * inverse(b) * a * b; }

Element identity_of(const Backend& b)
{
    if (b.kind == BackendKind::Permutation) return Permutation::identity(b.degree);
    return FFMatrix::identity(b.characteristic, b.degree);
}

bool is_identity(const Element& g)
{
    if (const auto* p = std::get_if<Permutation>(&g)) return p->is_identity();
    return std::get<FFMatrix>(g).is_identity();
}

std::size_t ElementHash::operator()(const Element& g) const
{
    if (const auto* p = std::get_if<Permutation>(&g)) return p->hash();
    return std::get<FFMatrix>(g).hash() ^ 0x5bd1e995u;
}

std::string to_string(const Element& g)
{
    std::ostringstream out;
    if (const auto* p = std::get_if<Permutation>(&g)) {
        write_permutation(out, *p);
    } else {
        write_matrix(out, std::get<FFMatrix>(g));
    }
    return out.str();
}

}  // namespace mgx
