#pragma once

// Packed vectors, matrices and polynomials over GF(2) and GF(3).
//
// GF(2) vectors hold one bit per entry.  GF(3) vectors are bit-sliced into two
// planes: bit i of `ones` is set when entry i equals 1, bit i of `twos` when it
// equals 2.  Additions run word-at-a-time on both planes.
//
// Vectors are rows and act on the right of matrices: vec_apply(v, M) = v*M.

#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mgx {

class FFError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

using Elt = std::uint8_t;  // field element in {0, .., p-1}

inline void check_characteristic(int p)
{
    if (p != 2 && p != 3) {
        throw FFError("unsupported characteristic " + std::to_string(p));
    }
}

inline Elt ff_add(int p, Elt a, Elt b) { return static_cast<Elt>((a + b) % p); }
inline Elt ff_sub(int p, Elt a, Elt b) { return static_cast<Elt>((a + p - b) % p); }
inline Elt ff_mul(int p, Elt a, Elt b) { return static_cast<Elt>((a * b) % p); }
inline Elt ff_neg(int p, Elt a) { return static_cast<Elt>((p - a) % p); }
// In GF(2) and GF(3) every nonzero element is its own inverse.
inline Elt ff_inv(int p, Elt a)
{
    if (a == 0) throw FFError("inverse of zero");
    (void)p;
    return a;
}

class FFVector {
public:
    FFVector() = default;
    FFVector(int p, std::size_t length);
    FFVector(int p, std::span<const Elt> entries);

    static FFVector unit(int p, std::size_t length, std::size_t i);
    static FFVector random(int p, std::size_t length, std::mt19937_64& rng);

    int characteristic() const { return p_; }
    std::size_t size() const { return len_; }

    Elt get(std::size_t i) const;
    void set(std::size_t i, Elt value);

    bool is_zero() const;
    // Index of the first nonzero entry, or size() when zero.
    std::size_t leading_index() const;

    FFVector& operator+=(const FFVector& other);
    FFVector& operator-=(const FFVector& other);
    // this += c * other
    void add_scaled(const FFVector& other, Elt c);
    void scale(Elt c);
    FFVector operator-() const;

    friend FFVector operator+(FFVector a, const FFVector& b) { return a += b; }
    friend FFVector operator-(FFVector a, const FFVector& b) { return a -= b; }
    friend bool operator==(const FFVector& a, const FFVector& b)
    {
        return a.p_ == b.p_ && a.len_ == b.len_ && a.ones_ == b.ones_ && a.twos_ == b.twos_;
    }

    std::vector<Elt> entries() const;
    std::string digits() const;
    std::size_t hash() const;

    // Raw planes, exposed for tests of the packing invariant.
    std::span<const std::uint64_t> ones_plane() const { return ones_; }
    std::span<const std::uint64_t> twos_plane() const { return twos_; }

private:
    void require_same_shape(const FFVector& other) const;

    int p_ = 2;
    std::size_t len_ = 0;
    std::vector<std::uint64_t> ones_;
    std::vector<std::uint64_t> twos_;  // empty over GF(2)
};

class FFMatrix {
public:
    FFMatrix() = default;
    FFMatrix(int p, std::size_t rows, std::size_t cols);
    FFMatrix(int p, const std::vector<std::vector<int>>& entries);
    explicit FFMatrix(std::vector<FFVector> rows);

    static FFMatrix identity(int p, std::size_t n);
    static FFMatrix random(int p, std::size_t rows, std::size_t cols, std::mt19937_64& rng);

    int characteristic() const { return p_; }
    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows() == cols_; }

    Elt get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
    void set(std::size_t r, std::size_t c, Elt v) { rows_[r].set(c, v); }
    const FFVector& row(std::size_t r) const { return rows_[r]; }
    FFVector& row(std::size_t r) { return rows_[r]; }
    const std::vector<FFVector>& row_vectors() const { return rows_; }

    FFMatrix transpose() const;
    bool is_identity() const;
    std::size_t rank() const;
    // Throws FFError for singular or non-square input.
    FFMatrix inverse() const;
    FFMatrix pow(long long e) const;

    FFMatrix& operator+=(const FFMatrix& other);
    FFMatrix& operator-=(const FFMatrix& other);
    friend FFMatrix operator+(FFMatrix a, const FFMatrix& b) { return a += b; }
    friend FFMatrix operator-(FFMatrix a, const FFMatrix& b) { return a -= b; }
    friend bool operator==(const FFMatrix& a, const FFMatrix& b)
    {
        return a.p_ == b.p_ && a.cols_ == b.cols_ && a.rows_ == b.rows_;
    }

    std::size_t hash() const;

private:
    int p_ = 2;
    std::size_t cols_ = 0;
    std::vector<FFVector> rows_;
};

FFMatrix mat_mul(const FFMatrix& a, const FFMatrix& b);
inline FFMatrix operator*(const FFMatrix& a, const FFMatrix& b) { return mat_mul(a, b); }

// Row vector times matrix.
FFVector vec_apply(const FFVector& v, const FFMatrix& m);

class FFPolynomial {
public:
    FFPolynomial() = default;
    // Coefficients lowest degree first; arbitrary integers are reduced mod p.
    FFPolynomial(int p, std::vector<int> coefficients);

    static FFPolynomial zero(int p) { return FFPolynomial(p, std::vector<int>{}); }
    static FFPolynomial one(int p) { return FFPolynomial(p, std::vector<int>{1}); }
    static FFPolynomial x(int p) { return FFPolynomial(p, std::vector<int>{0, 1}); }
    // x^n - 1
    static FFPolynomial x_pow_minus_one(int p, int n);

    int characteristic() const { return p_; }
    bool is_zero() const { return coeffs_.empty(); }
    // Degree of the zero polynomial is -1.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    Elt coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }
    const std::vector<Elt>& coefficients() const { return coeffs_; }
    Elt leading() const { return coeffs_.empty() ? 0 : coeffs_.back(); }
    bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }
    FFPolynomial monic() const;

    Elt evaluate(Elt at) const;
    FFMatrix evaluate(const FFMatrix& m) const;
    // v * f(M), via Horner on the vector.
    FFVector evaluate(const FFVector& v, const FFMatrix& m) const;

    FFPolynomial& operator+=(const FFPolynomial& other);
    FFPolynomial& operator-=(const FFPolynomial& other);
    friend FFPolynomial operator+(FFPolynomial a, const FFPolynomial& b) { return a += b; }
    friend FFPolynomial operator-(FFPolynomial a, const FFPolynomial& b) { return a -= b; }
    friend FFPolynomial operator*(const FFPolynomial& a, const FFPolynomial& b);
    friend bool operator==(const FFPolynomial& a, const FFPolynomial& b) = default;

    // Human-readable form with signed coefficients over GF(3), e.g. "x^3 - x - 1".
    std::string to_string() const;

private:
    void trim();

    int p_ = 2;
    std::vector<Elt> coeffs_;
};

struct DivMod {
    FFPolynomial quotient;
    FFPolynomial remainder;
};

DivMod poly_divmod(const FFPolynomial& f, const FFPolynomial& g);
FFPolynomial poly_gcd(FFPolynomial a, FFPolynomial b);
FFPolynomial poly_lcm(const FFPolynomial& a, const FFPolynomial& b);

// Minimal polynomial via Krylov sequences of seeded random start vectors; the
// result is confirmed by evaluation before it is returned.
FFPolynomial min_poly(const FFMatrix& m, std::uint64_t seed = 0);
// Characteristic polynomial as the product of relative minimal polynomials of
// successive cyclic subspaces.
FFPolynomial char_poly(const FFMatrix& m);

// Row-reduced echelon basis of {v : v*M = v}.
std::vector<FFVector> fixed_space(const FFMatrix& m);
// Row-reduced echelon basis of {v : v*M = 0}.
std::vector<FFVector> left_null_space(const FFMatrix& m);
// Reduced row echelon form of the given rows, zero rows dropped.
std::vector<FFVector> row_echelon(std::vector<FFVector> rows);

// Companion matrix of a monic polynomial, acting on row vectors:
// e_i -> e_{i+1}, e_{n-1} -> -(c_0, ..., c_{n-1}).
FFMatrix companion_matrix(const FFPolynomial& f);

// Text formats: `mat <p> <rows> <cols>` then one digit row per line, and
// `poly <p> c0 c1 ... cn`.
FFMatrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const FFMatrix& m);
FFPolynomial parse_polynomial(const std::string& line);
std::string format_polynomial(const FFPolynomial& f);

}  // namespace mgx
