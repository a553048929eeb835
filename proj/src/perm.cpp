#include "mgx/perm.hpp"

#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace mgx {

Permutation::Permutation(std::size_t degree) : images_(degree)
{
    std::iota(images_.begin(), images_.end(), Point{0});
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images))
{
    std::vector<bool> seen(images_.size(), false);
    for (Point p : images_) {
        if (p >= images_.size() || seen[p]) throw PermError("image list is not a bijection");
        seen[p] = true;
    }
}

Permutation Permutation::from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles)
{
    std::vector<Point> img(degree);
    std::iota(img.begin(), img.end(), Point{0});
    for (const auto& c : cycles) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            const Point from = c[i], to = c[(i + 1) % c.size()];
            if (from == 0 || to == 0 || from > degree || to > degree) throw PermError("cycle point out of range");
            img[from - 1] = to - 1;
        }
    }
    return Permutation(std::move(img));
}

bool Permutation::is_identity() const
{
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (images_[i] != i) return false;
    }
    return true;
}

Permutation Permutation::inverse() const
{
    Permutation r(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) r.images_[images_[i]] = static_cast<Point>(i);
    return r;
}

Permutation operator*(const Permutation& a, const Permutation& b)
{
    if (a.degree() != b.degree()) throw PermError("degree mismatch");
    Permutation r(a.degree());
    for (std::size_t i = 0; i < a.degree(); ++i) r.images_[i] = b.images_[a.images_[i]];
    return r;
}

Permutation Permutation::pow(long long e) const
{
    const std::uint64_t n = order();
    long long k = static_cast<long long>(((e % static_cast<long long>(n)) + static_cast<long long>(n)) % static_cast<long long>(n));
    // Walk each cycle k steps; cheaper than repeated squaring for permutations.
    Permutation r(images_.size());
    std::vector<bool> done(images_.size(), false);
    std::vector<Point> cycle;
    for (Point s = 0; s < images_.size(); ++s) {
        if (done[s]) continue;
        cycle.clear();
        for (Point q = s; !done[q]; q = images_[q]) {
            done[q] = true;
            cycle.push_back(q);
        }
        const std::size_t len = cycle.size();
        for (std::size_t i = 0; i < len; ++i) r.images_[cycle[i]] = cycle[(i + static_cast<std::size_t>(k)) % len];
    }
    return r;
}

std::vector<std::size_t> Permutation::cycle_lengths() const
{
    std::vector<std::size_t> out;
    std::vector<bool> done(images_.size(), false);
    for (Point s = 0; s < images_.size(); ++s) {
        if (done[s]) continue;
        std::size_t len = 0;
        for (Point q = s; !done[q]; q = images_[q]) {
            done[q] = true;
            ++len;
        }
        out.push_back(len);
    }
    return out;
}

std::uint64_t Permutation::order() const
{
    std::uint64_t l = 1;
    for (std::size_t len : cycle_lengths()) l = std::lcm(l, static_cast<std::uint64_t>(len));
    return l;
}

Permutation::Point Permutation::first_moved() const
{
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (images_[i] != i) return static_cast<Point>(i);
    }
    return static_cast<Point>(images_.size());
}

std::size_t Permutation::hash() const
{
    std::uint64_t h = 1469598103934665603ULL;
    for (Point p : images_) {
        h ^= p;
        h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
}

std::string Permutation::to_cycle_string() const
{
    std::ostringstream out;
    std::vector<bool> done(images_.size(), false);
    for (Point s = 0; s < images_.size(); ++s) {
        if (done[s] || images_[s] == s) continue;
        out << '(';
        bool first = true;
        for (Point q = s; !done[q]; q = images_[q]) {
            done[q] = true;
            out << (first ? "" : ",") << q + 1;
            first = false;
        }
        out << ')';
    }
    std::string s = out.str();
    return s.empty() ? "()" : s;
}

Permutation conjugate(const Permutation& a, const Permutation& b) { return b.inverse() * a * b; }

Permutation read_permutation(std::istream& in)
{
    std::string tag;
    std::size_t n = 0;
    if (!(in >> tag >> n) || tag != "perm") throw PermError("expected `perm <n>` header");
    if (n == 0) throw PermError("permutation degree must be positive");
    std::vector<Permutation::Point> img(n);
    for (std::size_t i = 0; i < n; ++i) {
        long long v = 0;
        if (!(in >> v)) throw PermError("permutation image list truncated");
        if (v < 1 || static_cast<std::size_t>(v) > n) throw PermError("permutation image out of range");
        img[i] = static_cast<Permutation::Point>(v - 1);
    }
    return Permutation(std::move(img));
}

void write_permutation(std::ostream& out, const Permutation& p)
{
    out << "perm " << p.degree() << '\n';
    for (std::size_t i = 0; i < p.degree(); ++i) out << (i ? " " : "") << p[static_cast<Permutation::Point>(i)] + 1;
    out << '\n';
}

}  // namespace mgx
