#include "mgx/ff.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <sstream>

namespace mgx {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t len) { return (len + kWordBits - 1) / kWordBits; }

// Bit-sliced GF(3) addition of (a1, a2) and (b1, b2).
inline void gf3_add(std::uint64_t& a1, std::uint64_t& a2, std::uint64_t b1, std::uint64_t b2)
{
    const std::uint64_t a0 = ~(a1 | a2);
    const std::uint64_t b0 = ~(b1 | b2);
    const std::uint64_t z1 = (a0 & b1) | (a1 & b0) | (a2 & b2);
    const std::uint64_t z2 = (a0 & b2) | (a2 & b0) | (a1 & b1);
    a1 = z1;
    a2 = z2;
}

}  // namespace

// ---------------------------------------------------------------- FFVector

FFVector::FFVector(int p, std::size_t length) : p_(p), len_(length)
{
    check_characteristic(p);
    ones_.assign(word_count(length), 0);
    if (p == 3) twos_.assign(word_count(length), 0);
}

FFVector::FFVector(int p, std::span<const Elt> entries) : FFVector(p, entries.size())
{
    for (std::size_t i = 0; i < entries.size(); ++i) set(i, static_cast<Elt>(entries[i] % p));
}

FFVector FFVector::unit(int p, std::size_t length, std::size_t i)
{
    FFVector v(p, length);
    v.set(i, 1);
    return v;
}

FFVector FFVector::random(int p, std::size_t length, std::mt19937_64& rng)
{
    FFVector v(p, length);
    std::uniform_int_distribution<int> dist(0, p - 1);
    for (std::size_t i = 0; i < length; ++i) v.set(i, static_cast<Elt>(dist(rng)));
    return v;
}

Elt FFVector::get(std::size_t i) const
{
    const std::size_t w = i / kWordBits;
    const std::uint64_t bit = std::uint64_t{1} << (i % kWordBits);
    if (ones_[w] & bit) return 1;
    if (p_ == 3 && (twos_[w] & bit)) return 2;
    return 0;
}

void FFVector::set(std::size_t i, Elt value)
{
    if (i >= len_) throw FFError("vector index out of range");
    value = static_cast<Elt>(value % p_);
    const std::size_t w = i / kWordBits;
    const std::uint64_t bit = std::uint64_t{1} << (i % kWordBits);
    ones_[w] &= ~bit;
    if (p_ == 3) twos_[w] &= ~bit;
    if (value == 1) ones_[w] |= bit;
    if (value == 2) twos_[w] |= bit;
}

bool FFVector::is_zero() const
{
    auto zero = [](std::uint64_t w) { return w == 0; };
    return std::all_of(ones_.begin(), ones_.end(), zero) && std::all_of(twos_.begin(), twos_.end(), zero);
}

std::size_t FFVector::leading_index() const
{
    for (std::size_t w = 0; w < ones_.size(); ++w) {
        std::uint64_t bits = ones_[w] | (p_ == 3 ? twos_[w] : 0);
        if (bits) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
    }
    return len_;
}

void FFVector::require_same_shape(const FFVector& other) const
{
    if (p_ != other.p_) throw FFError("characteristic mismatch");
    if (len_ != other.len_) throw FFError("dimension mismatch");
}

FFVector& FFVector::operator+=(const FFVector& other)
{
    require_same_shape(other);
    if (p_ == 2) {
        for (std::size_t w = 0; w < ones_.size(); ++w) ones_[w] ^= other.ones_[w];
    } else {
        for (std::size_t w = 0; w < ones_.size(); ++w) gf3_add(ones_[w], twos_[w], other.ones_[w], other.twos_[w]);
    }
    return *this;
}

FFVector& FFVector::operator-=(const FFVector& other)
{
    add_scaled(other, ff_neg(p_, 1));
    return *this;
}

void FFVector::add_scaled(const FFVector& other, Elt c)
{
    c = static_cast<Elt>(c % p_);
    if (c == 0) {
        require_same_shape(other);
        return;
    }
    if (c == 1) {
        *this += other;
        return;
    }
    // c == 2 over GF(3): add the negation, i.e. the swapped planes.
    require_same_shape(other);
    for (std::size_t w = 0; w < ones_.size(); ++w) gf3_add(ones_[w], twos_[w], other.twos_[w], other.ones_[w]);
}

void FFVector::scale(Elt c)
{
    c = static_cast<Elt>(c % p_);
    if (c == 0) {
        std::fill(ones_.begin(), ones_.end(), 0);
        std::fill(twos_.begin(), twos_.end(), 0);
    } else if (c == 2) {
        std::swap(ones_, twos_);
    }
}

FFVector FFVector::operator-() const
{
    FFVector r = *this;
    if (p_ == 3) std::swap(r.ones_, r.twos_);
    return r;
}

std::vector<Elt> FFVector::entries() const
{
    std::vector<Elt> out(len_);
    for (std::size_t i = 0; i < len_; ++i) out[i] = get(i);
    return out;
}

std::string FFVector::digits() const
{
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i) s[i] = static_cast<char>('0' + get(i));
    return s;
}

std::size_t FFVector::hash() const
{
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ len_;
    auto mix = [&h](std::uint64_t w) {
        h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    };
    for (auto w : ones_) mix(w);
    for (auto w : twos_) mix(w);
    return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------- FFMatrix

FFMatrix::FFMatrix(int p, std::size_t rows, std::size_t cols) : p_(p), cols_(cols)
{
    check_characteristic(p);
    rows_.assign(rows, FFVector(p, cols));
}

FFMatrix::FFMatrix(int p, const std::vector<std::vector<int>>& entries)
    : FFMatrix(p, entries.size(), entries.empty() ? 0 : entries.front().size())
{
    for (std::size_t r = 0; r < entries.size(); ++r) {
        if (entries[r].size() != cols_) throw FFError("ragged matrix rows");
        for (std::size_t c = 0; c < cols_; ++c) {
            rows_[r].set(c, static_cast<Elt>(((entries[r][c] % p) + p) % p));
        }
    }
}

FFMatrix::FFMatrix(std::vector<FFVector> rows) : rows_(std::move(rows))
{
    if (rows_.empty()) throw FFError("matrix needs at least one row");
    p_ = rows_.front().characteristic();
    cols_ = rows_.front().size();
    for (const auto& r : rows_) {
        if (r.characteristic() != p_) throw FFError("characteristic mismatch");
        if (r.size() != cols_) throw FFError("ragged matrix rows");
    }
}

FFMatrix FFMatrix::identity(int p, std::size_t n)
{
    FFMatrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

FFMatrix FFMatrix::random(int p, std::size_t rows, std::size_t cols, std::mt19937_64& rng)
{
    FFMatrix m(p, rows, cols);
    for (auto& r : m.rows_) r = FFVector::random(p, cols, rng);
    return m;
}

FFMatrix FFMatrix::transpose() const
{
    FFMatrix t(p_, cols_, rows());
    for (std::size_t r = 0; r < rows(); ++r) {
        for (std::size_t c = 0; c < cols_; ++c) t.set(c, r, get(r, c));
    }
    return t;
}

bool FFMatrix::is_identity() const
{
    return is_square() && *this == identity(p_, rows());
}

std::size_t FFMatrix::rank() const { return row_echelon(rows_).size(); }

FFMatrix FFMatrix::inverse() const
{
    if (!is_square()) throw FFError("inverse of non-square matrix");
    const std::size_t n = rows();
    std::vector<FFVector> a = rows_;
    std::vector<FFVector> inv = identity(p_, n).rows_;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv].get(col) == 0) ++piv;
        if (piv == n) throw FFError("singular matrix");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        const Elt s = ff_inv(p_, a[col].get(col));
        a[col].scale(s);
        inv[col].scale(s);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const Elt f = a[r].get(col);
            if (f == 0) continue;
            const Elt nf = ff_neg(p_, f);
            a[r].add_scaled(a[col], nf);
            inv[r].add_scaled(inv[col], nf);
        }
    }
    return FFMatrix(std::move(inv));
}

FFMatrix FFMatrix::pow(long long e) const
{
    if (!is_square()) throw FFError("power of non-square matrix");
    FFMatrix base = e < 0 ? inverse() : *this;
    unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
    FFMatrix result = identity(p_, rows());
    while (k) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return result;
}

FFMatrix& FFMatrix::operator+=(const FFMatrix& other)
{
    if (rows() != other.rows() || cols_ != other.cols_) throw FFError("dimension mismatch");
    for (std::size_t r = 0; r < rows(); ++r) rows_[r] += other.rows_[r];
    return *this;
}

FFMatrix& FFMatrix::operator-=(const FFMatrix& other)
{
    if (rows() != other.rows() || cols_ != other.cols_) throw FFError("dimension mismatch");
    for (std::size_t r = 0; r < rows(); ++r) rows_[r] -= other.rows_[r];
    return *this;
}

std::size_t FFMatrix::hash() const
{
    std::size_t h = rows() * 31 + cols_;
    for (const auto& r : rows_) h ^= r.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

FFVector vec_apply(const FFVector& v, const FFMatrix& m)
{
    if (v.characteristic() != m.characteristic()) throw FFError("characteristic mismatch");
    if (v.size() != m.rows()) throw FFError("dimension mismatch");
    FFVector out(m.characteristic(), m.cols());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Elt c = v.get(i);
        if (c) out.add_scaled(m.row(i), c);
    }
    return out;
}

FFMatrix mat_mul(const FFMatrix& a, const FFMatrix& b)
{
    if (a.characteristic() != b.characteristic()) throw FFError("characteristic mismatch");
    if (a.cols() != b.rows()) throw FFError("dimension mismatch");
    FFMatrix out(a.characteristic(), a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) out.row(r) = vec_apply(a.row(r), b);
    return out;
}

// ---------------------------------------------------------------- echelon forms

std::vector<FFVector> row_echelon(std::vector<FFVector> rows)
{
    std::vector<FFVector> basis;  // kept in reduced form, sorted by pivot
    for (auto& v : rows) {
        for (const auto& b : basis) {
            const std::size_t piv = b.leading_index();
            const Elt c = v.get(piv);
            if (c) v.add_scaled(b, ff_neg(v.characteristic(), c));
        }
        if (v.is_zero()) continue;
        const std::size_t piv = v.leading_index();
        v.scale(ff_inv(v.characteristic(), v.get(piv)));
        for (auto& b : basis) {
            const Elt c = b.get(piv);
            if (c) b.add_scaled(v, ff_neg(v.characteristic(), c));
        }
        auto pos = std::find_if(basis.begin(), basis.end(),
                                [piv](const FFVector& b) { return b.leading_index() > piv; });
        basis.insert(pos, std::move(v));
    }
    return basis;
}

std::vector<FFVector> left_null_space(const FFMatrix& m)
{
    const int p = m.characteristic();
    const std::size_t n = m.rows();
    const std::size_t c = m.cols();
    // Augment each row with a unit tag; rows whose left part vanishes give the kernel.
    std::vector<FFVector> aug;
    aug.reserve(n);
    for (std::size_t r = 0; r < n; ++r) {
        FFVector v(p, c + n);
        for (std::size_t j = 0; j < c; ++j) v.set(j, m.get(r, j));
        v.set(c + r, 1);
        aug.push_back(std::move(v));
    }
    std::vector<FFVector> ech = row_echelon(std::move(aug));
    std::vector<FFVector> kernel;
    for (const auto& v : ech) {
        if (v.leading_index() < c) continue;
        FFVector k(p, n);
        for (std::size_t j = 0; j < n; ++j) k.set(j, v.get(c + j));
        kernel.push_back(std::move(k));
    }
    return row_echelon(std::move(kernel));
}

std::vector<FFVector> fixed_space(const FFMatrix& m)
{
    if (!m.is_square()) throw FFError("fixed space of non-square matrix");
    return left_null_space(m - FFMatrix::identity(m.characteristic(), m.rows()));
}

// ---------------------------------------------------------------- FFPolynomial

FFPolynomial::FFPolynomial(int p, std::vector<int> coefficients) : p_(p)
{
    check_characteristic(p);
    coeffs_.reserve(coefficients.size());
    for (int c : coefficients) coeffs_.push_back(static_cast<Elt>(((c % p) + p) % p));
    trim();
}

FFPolynomial FFPolynomial::x_pow_minus_one(int p, int n)
{
    std::vector<int> c(static_cast<std::size_t>(n) + 1, 0);
    c[0] = -1;
    c[static_cast<std::size_t>(n)] = 1;
    return FFPolynomial(p, std::move(c));
}

void FFPolynomial::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

FFPolynomial FFPolynomial::monic() const
{
    if (is_zero()) return *this;
    FFPolynomial r = *this;
    const Elt s = ff_inv(p_, leading());
    for (auto& c : r.coeffs_) c = ff_mul(p_, c, s);
    return r;
}

Elt FFPolynomial::evaluate(Elt at) const
{
    Elt acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = ff_add(p_, ff_mul(p_, acc, at), *it);
    return acc;
}

FFMatrix FFPolynomial::evaluate(const FFMatrix& m) const
{
    if (!m.is_square()) throw FFError("polynomial evaluation needs a square matrix");
    if (m.characteristic() != p_) throw FFError("characteristic mismatch");
    const std::size_t n = m.rows();
    FFMatrix acc(p_, n, n);
    const FFMatrix id = FFMatrix::identity(p_, n);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * m;
        for (std::size_t i = 0; i < n; ++i) acc.row(i).add_scaled(id.row(i), *it);
    }
    return acc;
}

FFVector FFPolynomial::evaluate(const FFVector& v, const FFMatrix& m) const
{
    FFVector acc(p_, v.size());
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = vec_apply(acc, m);
        acc.add_scaled(v, *it);
    }
    return acc;
}

FFPolynomial& FFPolynomial::operator+=(const FFPolynomial& other)
{
    if (p_ != other.p_) throw FFError("characteristic mismatch");
    if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0);
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] = ff_add(p_, coeffs_[i], other.coeffs_[i]);
    trim();
    return *this;
}

FFPolynomial& FFPolynomial::operator-=(const FFPolynomial& other)
{
    if (p_ != other.p_) throw FFError("characteristic mismatch");
    if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0);
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] = ff_sub(p_, coeffs_[i], other.coeffs_[i]);
    trim();
    return *this;
}

FFPolynomial operator*(const FFPolynomial& a, const FFPolynomial& b)
{
    if (a.p_ != b.p_) throw FFError("characteristic mismatch");
    FFPolynomial r = FFPolynomial::zero(a.p_);
    if (a.is_zero() || b.is_zero()) return r;
    r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            r.coeffs_[i + j] = ff_add(a.p_, r.coeffs_[i + j], ff_mul(a.p_, a.coeffs_[i], b.coeffs_[j]));
        }
    }
    r.trim();
    return r;
}

std::string FFPolynomial::to_string() const
{
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int d = degree(); d >= 0; --d) {
        Elt c = coefficient(static_cast<std::size_t>(d));
        if (c == 0) continue;
        const bool negative = (p_ == 3 && c == 2);
        if (first) {
            if (negative) out << "-";
        } else {
            out << (negative ? " - " : " + ");
        }
        first = false;
        if (d == 0) {
            out << "1";
        } else {
            out << "x";
            if (d > 1) out << "^" << d;
        }
    }
    return out.str();
}

DivMod poly_divmod(const FFPolynomial& f, const FFPolynomial& g)
{
    if (g.is_zero()) throw FFError("division by zero polynomial");
    if (f.characteristic() != g.characteristic()) throw FFError("characteristic mismatch");
    const int p = f.characteristic();
    std::vector<int> rem(f.coefficients().begin(), f.coefficients().end());
    const int dg = g.degree();
    const int df = f.degree();
    if (df < dg) return {FFPolynomial::zero(p), f};
    std::vector<int> quot(static_cast<std::size_t>(df - dg) + 1, 0);
    const Elt lead_inv = ff_inv(p, g.leading());
    for (int d = df; d >= dg; --d) {
        const Elt c = static_cast<Elt>(rem[static_cast<std::size_t>(d)] % p);
        if (c == 0) continue;
        const Elt q = ff_mul(p, c, lead_inv);
        quot[static_cast<std::size_t>(d - dg)] = q;
        for (int i = 0; i <= dg; ++i) {
            auto& slot = rem[static_cast<std::size_t>(d - dg + i)];
            slot = ff_sub(p, static_cast<Elt>(slot % p), ff_mul(p, q, g.coefficient(static_cast<std::size_t>(i))));
        }
    }
    rem.resize(static_cast<std::size_t>(dg));
    return {FFPolynomial(p, std::move(quot)), FFPolynomial(p, std::move(rem))};
}

FFPolynomial poly_gcd(FFPolynomial a, FFPolynomial b)
{
    while (!b.is_zero()) {
        FFPolynomial r = poly_divmod(a, b).remainder;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

FFPolynomial poly_lcm(const FFPolynomial& a, const FFPolynomial& b)
{
    if (a.is_zero() || b.is_zero()) return FFPolynomial::zero(a.characteristic());
    return poly_divmod(a * b, poly_gcd(a, b)).quotient.monic();
}

// ---------------------------------------------------------------- minimal polynomials

namespace {

// Echelon basis of Krylov vectors, each tagged with the polynomial p such that
// vector = start * p(M).  Reduction of a new vector tracks its polynomial too.
struct KrylovBasis {
    int p;
    std::vector<FFVector> vecs;
    std::vector<FFPolynomial> polys;

    // Reduces v (with polynomial tag poly) against the basis in place.
    void reduce(FFVector& v, FFPolynomial& poly) const
    {
        for (std::size_t i = 0; i < vecs.size(); ++i) {
            const Elt c = v.get(vecs[i].leading_index());
            if (c == 0) continue;
            const Elt nc = ff_neg(p, c);
            v.add_scaled(vecs[i], nc);
            poly += FFPolynomial(p, {nc}) * polys[i];
        }
    }

    void insert(FFVector v, FFPolynomial poly)
    {
        const Elt s = ff_inv(p, v.get(v.leading_index()));
        v.scale(s);
        poly = FFPolynomial(p, {s}) * poly;
        // Keep fully reduced so `reduce` is a single pass.
        const std::size_t piv = v.leading_index();
        for (std::size_t i = 0; i < vecs.size(); ++i) {
            const Elt c = vecs[i].get(piv);
            if (c == 0) continue;
            const Elt nc = ff_neg(p, c);
            vecs[i].add_scaled(v, nc);
            polys[i] += FFPolynomial(p, {nc}) * poly;
        }
        vecs.push_back(std::move(v));
        polys.push_back(std::move(poly));
    }
};

// Monic q of least degree with start * q(M) = 0 modulo the span of `modulo`.
// Vectors met on the way are added to `modulo` when `extend` is set.
FFPolynomial relative_min_poly(const FFVector& start, const FFMatrix& m, KrylovBasis& modulo, bool extend)
{
    const int p = m.characteristic();
    // Reduce against the fixed subspace first; its polynomial tags are irrelevant.
    auto reduce_fixed = [&](FFVector& v) {
        for (const auto& b : modulo.vecs) {
            const Elt c = v.get(b.leading_index());
            if (c) v.add_scaled(b, ff_neg(p, c));
        }
    };
    KrylovBasis local{p, {}, {}};
    FFVector cur = start;
    FFPolynomial xk = FFPolynomial::one(p);
    std::vector<FFVector> accepted;
    while (true) {
        FFVector v = cur;
        reduce_fixed(v);
        FFPolynomial tag = xk;
        local.reduce(v, tag);
        if (v.is_zero()) {
            if (extend) {
                for (auto& a : accepted) {
                    FFPolynomial dummy = FFPolynomial::zero(p);
                    reduce_fixed(a);
                    if (!a.is_zero()) modulo.insert(a, dummy);
                }
            }
            return tag.monic();
        }
        local.insert(v, tag);
        accepted.push_back(cur);
        cur = vec_apply(cur, m);
        xk = xk * FFPolynomial::x(p);
    }
}

}  // namespace

FFPolynomial min_poly(const FFMatrix& m, std::uint64_t seed)
{
    if (!m.is_square()) throw FFError("minimal polynomial of non-square matrix");
    const int p = m.characteristic();
    const std::size_t n = m.rows();
    std::mt19937_64 rng(seed);
    FFPolynomial acc = FFPolynomial::one(p);
    auto annihilates = [&](const FFPolynomial& f) { return f.evaluate(m).rows() == n && f.evaluate(m) == FFMatrix(p, n, n); };
    // A handful of random starts almost always suffices; the unit vectors
    // afterwards make the result exact regardless of luck.
    for (int trial = 0; trial < 4; ++trial) {
        KrylovBasis none{p, {}, {}};
        FFVector start = FFVector::random(p, n, rng);
        if (start.is_zero()) continue;
        acc = poly_lcm(acc, relative_min_poly(start, m, none, false));
        if (annihilates(acc)) return acc;
    }
    for (std::size_t i = 0; i < n; ++i) {
        KrylovBasis none{p, {}, {}};
        acc = poly_lcm(acc, relative_min_poly(FFVector::unit(p, n, i), m, none, false));
    }
    if (!annihilates(acc)) throw FFError("minimal polynomial verification failed");
    return acc;
}

FFPolynomial char_poly(const FFMatrix& m)
{
    if (!m.is_square()) throw FFError("characteristic polynomial of non-square matrix");
    const int p = m.characteristic();
    const std::size_t n = m.rows();
    KrylovBasis span{p, {}, {}};
    FFPolynomial acc = FFPolynomial::one(p);
    for (std::size_t i = 0; i < n && span.vecs.size() < n; ++i) {
        FFVector e = FFVector::unit(p, n, i);
        FFVector probe = e;
        for (const auto& b : span.vecs) {
            const Elt c = probe.get(b.leading_index());
            if (c) probe.add_scaled(b, ff_neg(p, c));
        }
        if (probe.is_zero()) continue;
        acc = acc * relative_min_poly(e, m, span, true);
    }
    return acc;
}

FFMatrix companion_matrix(const FFPolynomial& f)
{
    if (!f.is_monic() || f.degree() < 1) throw FFError("companion matrix needs a monic polynomial of degree >= 1");
    const int p = f.characteristic();
    const auto n = static_cast<std::size_t>(f.degree());
    FFMatrix c(p, n, n);
    for (std::size_t i = 0; i + 1 < n; ++i) c.set(i, i + 1, 1);
    for (std::size_t j = 0; j < n; ++j) c.set(n - 1, j, ff_neg(p, f.coefficient(j)));
    return c;
}

// ---------------------------------------------------------------- text formats

FFMatrix read_matrix(std::istream& in)
{
    std::string tag;
    int p = 0;
    std::size_t rows = 0, cols = 0;
    if (!(in >> tag >> p >> rows >> cols) || tag != "mat") throw FFError("expected `mat <p> <rows> <cols>` header");
    check_characteristic(p);
    if (rows == 0 || cols == 0) throw FFError("matrix dimensions must be positive");
    FFMatrix m(p, rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        std::string line;
        if (!(in >> line)) throw FFError("matrix truncated at row " + std::to_string(r));
        if (line.size() != cols) throw FFError("matrix row " + std::to_string(r) + " has wrong length");
        for (std::size_t c = 0; c < cols; ++c) {
            const int d = line[c] - '0';
            if (d < 0 || d >= p) throw FFError("bad matrix digit '" + std::string(1, line[c]) + "'");
            m.set(r, c, static_cast<Elt>(d));
        }
    }
    return m;
}

void write_matrix(std::ostream& out, const FFMatrix& m)
{
    out << "mat " << m.characteristic() << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (const auto& r : m.row_vectors()) out << r.digits() << '\n';
}

FFPolynomial parse_polynomial(const std::string& line)
{
    std::istringstream in(line);
    std::string tag;
    int p = 0;
    if (!(in >> tag >> p) || tag != "poly") throw FFError("expected `poly <p> c0 ... cn`");
    check_characteristic(p);
    std::vector<int> coeffs;
    int c = 0;
    while (in >> c) coeffs.push_back(c);
    if (!in.eof()) throw FFError("bad polynomial coefficient");
    return FFPolynomial(p, std::move(coeffs));
}

std::string format_polynomial(const FFPolynomial& f)
{
    std::ostringstream out;
    out << "poly " << f.characteristic();
    for (Elt c : f.coefficients()) out << ' ' << static_cast<int>(c);
    return out.str();
}

}  // namespace mgx
