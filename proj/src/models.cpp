#include "mgx/models.hpp"

#include <array>
#include <functional>
#include <stdexcept>

#include "mgx/projective.hpp"

namespace mgx::models {

// ---------------------------------------------------------------- GF(27)

namespace {

std::array<int, 3> digits27(int a) { return {a % 3, (a / 3) % 3, a / 9}; }
int from_digits27(const std::array<int, 3>& d) { return d[0] + 3 * d[1] + 9 * d[2]; }

}  // namespace

int gf27_add(int a, int b)
{
    auto x = digits27(a), y = digits27(b);
    for (int i = 0; i < 3; ++i) x[i] = (x[i] + y[i]) % 3;
    return from_digits27(x);
}

int gf27_neg(int a)
{
    auto x = digits27(a);
    for (auto& d : x) d = (3 - d) % 3;
    return from_digits27(x);
}

int gf27_mul(int a, int b)
{
    const auto x = digits27(a), y = digits27(b);
    int prod[5] = {0, 0, 0, 0, 0};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) prod[i + j] += x[i] * y[j];
    }
    // x^3 = x + 1
    for (int k = 4; k >= 3; --k) {
        prod[k - 2] += prod[k];
        prod[k - 3] += prod[k];
        prod[k] = 0;
    }
    return from_digits27({prod[0] % 3, prod[1] % 3, prod[2] % 3});
}

int gf27_inv(int a)
{
    if (a == 0) throw std::domain_error("gf27_inv(0)");
    for (int b = 1; b < 27; ++b) {
        if (gf27_mul(a, b) == 1) return b;
    }
    throw std::logic_error("gf27_inv: no inverse");
}

int gf27_primitive()
{
    for (int a = 2; a < 27; ++a) {
        int x = a, order = 1;
        while (x != 1) {
            x = gf27_mul(x, a);
            ++order;
        }
        if (order == 26) return a;
    }
    throw std::logic_error("GF(27) has no primitive element");
}

// ---------------------------------------------------------------- permutation models

namespace {

Permutation perm_from(std::size_t n, const std::function<std::size_t(std::size_t)>& f)
{
    std::vector<Permutation::Point> img(n);
    for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<Permutation::Point>(f(i));
    return Permutation(img);
}

Permutation cycle13(std::size_t n, std::size_t offset)
{
    return perm_from(n, [&](std::size_t i) { return i >= offset && i < offset + 13 ? offset + (i - offset + 1) % 13 : i; });
}

Permutation reflection13(std::size_t n, std::size_t offset)
{
    return perm_from(n, [&](std::size_t i) { return i >= offset && i < offset + 13 ? offset + (13 - (i - offset)) % 13 : i; });
}

}  // namespace

GroupModel cyclic13() { return GroupModel("C13", {{"t", cycle13(13, 0)}}); }

GroupModel d26() { return GroupModel("D26", {{"t", cycle13(13, 0)}, {"x", reflection13(13, 0)}}); }

GroupModel psl2_27()
{
    const std::size_t inf = 27;
    const int w2 = gf27_mul(gf27_primitive(), gf27_primitive());
    const auto u = perm_from(28, [&](std::size_t z) { return z == inf ? inf : static_cast<std::size_t>(gf27_add(int(z), 1)); });
    const auto t = perm_from(28, [&](std::size_t z) { return z == inf ? inf : static_cast<std::size_t>(gf27_mul(int(z), w2)); });
    const auto s = perm_from(28, [&](std::size_t z) -> std::size_t {
        if (z == inf) return 0;
        if (z == 0) return inf;
        return static_cast<std::size_t>(gf27_neg(gf27_inv(int(z))));
    });
    return GroupModel("PSL2(27)", {{"u", u}, {"t", t}, {"s", s}});
}

namespace {

std::vector<Permutation> psl3_3_generators()
{
    const std::vector<FFMatrix> mats = {FFMatrix(3, {{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}),
                                        FFMatrix(3, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}})};
    return projective_action(mats);
}

Permutation shift(const Permutation& p, std::size_t n, std::size_t offset)
{
    return perm_from(n, [&](std::size_t i) {
        return i >= offset && i < offset + p.degree() ? offset + p[static_cast<Permutation::Point>(i - offset)] : i;
    });
}

}  // namespace

GroupModel psl3_3()
{
    const auto g = psl3_3_generators();
    return GroupModel("PSL3(3)", {{"a", g[0]}, {"b", g[1]}});
}

GroupModel c13_2_x_psl3_3()
{
    const auto g = psl3_3_generators();
    return GroupModel("13:2xPSL3(3)",
                      {{"t", cycle13(26, 0)}, {"r", reflection13(26, 0)}, {"a", shift(g[0], 26, 13)}, {"b", shift(g[1], 26, 13)}});
}

namespace {

std::vector<std::pair<std::string, Element>> affine_27_gens()
{
    const int w2 = gf27_mul(gf27_primitive(), gf27_primitive());
    return {{"u", perm_from(27, [](std::size_t z) { return static_cast<std::size_t>(gf27_add(int(z), 1)); })},
            {"t", perm_from(27, [&](std::size_t z) { return static_cast<std::size_t>(gf27_mul(int(z), w2)); })}};
}

}  // namespace

GroupModel affine_27_13() { return GroupModel("3^3:13", affine_27_gens()); }

GroupModel affine_27_13_3()
{
    auto gens = affine_27_gens();
    gens.emplace_back("f", perm_from(27, [](std::size_t z) {
                          const int a = int(z);
                          return static_cast<std::size_t>(gf27_mul(a, gf27_mul(a, a)));
                      }));
    return GroupModel("3^3:13:3", std::move(gens));
}

GroupModel affine_27_d26()
{
    const std::size_t n = 40;
    std::vector<std::pair<std::string, Element>> gens;
    const char* names[] = {"u1", "u2", "u3"};
    for (int k = 0; k < 3; ++k) {
        const int step = k == 0 ? 1 : (k == 1 ? 3 : 9);
        gens.emplace_back(names[k], perm_from(n, [&](std::size_t z) { return z < 27 ? static_cast<std::size_t>(gf27_add(int(z), step)) : z; }));
    }
    gens.emplace_back("t", cycle13(n, 27));
    const auto refl = reflection13(n, 27);
    gens.emplace_back("x", perm_from(n, [&](std::size_t z) { return z < 27 ? static_cast<std::size_t>(gf27_neg(int(z))) : std::size_t(refl[z]); }));
    return GroupModel("3^3:D26", std::move(gens));
}

// ---------------------------------------------------------------- Heisenberg model

namespace {

constexpr int kP = 13;

int md(long long a) { return static_cast<int>(((a % kP) + kP) % kP); }

struct M2 {
    int a, b, c, d;
    friend M2 operator*(const M2& x, const M2& y)
    {
        return {md(x.a * y.a + x.b * y.c), md(x.a * y.b + x.b * y.d), md(x.c * y.a + x.d * y.c), md(x.c * y.b + x.d * y.d)};
    }
    friend bool operator==(const M2&, const M2&) = default;
    int det() const { return md(a * d - b * c); }
    int trace() const { return md(a + d); }
};

const M2 kI{1, 0, 0, 1};

M2 inv(const M2& m)
{
    int dinv = 1;
    while (md(dinv * m.det()) != 1) ++dinv;
    return {md(m.d * dinv), md(-m.b * dinv), md(-m.c * dinv), md(m.a * dinv)};
}

std::size_t hpoint(int v1, int v2, int c) { return static_cast<std::size_t>(v1 + kP * v2 + kP * kP * c); }

// Right multiplication by (w1, w2, d) in the Heisenberg group with
// (v,c)(w,d) = (v+w, c+d+(v1 w2 - v2 w1)/2).
Permutation htranslation(int w1, int w2, int d)
{
    const int half = 7;
    return perm_from(kP * kP * kP, [&](std::size_t i) {
        const int v1 = int(i % kP), v2 = int((i / kP) % kP), c = int(i / (kP * kP));
        return hpoint(md(v1 + w1), md(v2 + w2), md(c + d + half * (v1 * w2 - v2 * w1)));
    });
}

Permutation hautomorphism(const M2& m)
{
    const int det = m.det();
    return perm_from(kP * kP * kP, [&](std::size_t i) {
        const int v1 = int(i % kP), v2 = int((i / kP) % kP), c = int(i / (kP * kP));
        return hpoint(md(v1 * m.a + v2 * m.c), md(v1 * m.b + v2 * m.d), md(det * c));
    });
}

}  // namespace

HeisenbergModel heisenberg_13()
{
    std::vector<M2> sl2;
    for (int a = 0; a < kP; ++a)
        for (int b = 0; b < kP; ++b)
            for (int c = 0; c < kP; ++c)
                for (int d = 0; d < kP; ++d) {
                    const M2 m{a, b, c, d};
                    if (m.det() == 1) sl2.push_back(m);
                }
    const M2 minus{kP - 1, 0, 0, kP - 1};
    // Quaternion generators i, j with i^2 = j^2 = -1 and ji = -ij.
    std::vector<M2> order4;
    for (const auto& m : sl2) {
        if (m * m == minus) order4.push_back(m);
    }
    const M2 qi = order4.front();
    std::optional<M2> qj;
    for (const auto& m : order4) {
        if (m * qi == minus * (qi * m)) {
            qj = m;
            break;
        }
    }
    if (!qj) throw std::logic_error("heisenberg_13: no quaternion pair in SL2(13)");
    const M2 qk = qi * *qj;
    std::optional<M2> g3;
    for (const auto& m : sl2) {
        if (m == kI || !(m * m * m == kI)) continue;
        const M2 mi = inv(m);
        if (mi * qi * m == *qj && mi * *qj * m == qk) {
            g3 = m;
            break;
        }
    }
    if (!g3) throw std::logic_error("heisenberg_13: no order-3 element permuting the quaternion units");

    const M2 scalar2{2, 0, 0, 2}, scalar3{3, 0, 0, 3};
    HeisenbergModel out;
    const Permutation t = htranslation(0, 0, 1);
    out.group = GroupModel("13^(1+2):(3x4A4)", {{"e1", htranslation(1, 0, 0)},
                                                {"e2", htranslation(0, 1, 0)},
                                                {"l", hautomorphism(scalar2)},
                                                {"i", hautomorphism(qi)},
                                                {"j", hautomorphism(*qj)},
                                                {"g", hautomorphism(*g3)},
                                                {"t", t}});
    out.t = t;
    out.k = {hautomorphism(scalar3), hautomorphism(minus), hautomorphism(*g3)};
    return out;
}

// ---------------------------------------------------------------- matrix models

FFMatrix affine_matrix(const FFMatrix& a, const FFVector& v)
{
    const std::size_t d = a.rows();
    FFMatrix m(a.characteristic(), d + 1, d + 1);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) m.set(r, c, a.get(r, c));
    for (std::size_t c = 0; c < d; ++c) m.set(d, c, v.get(c));
    m.set(d, d, 1);
    return m;
}

std::vector<Element> translations(int p, std::size_t first, std::size_t count, std::size_t n)
{
    std::vector<Element> out;
    for (std::size_t i = 0; i < count; ++i) {
        FFMatrix m = FFMatrix::identity(p, n);
        m.set(n - 1, first + i, 1);
        out.emplace_back(std::move(m));
    }
    return out;
}

namespace {

FFPolynomial phi13(int p) { return poly_divmod(FFPolynomial::x_pow_minus_one(p, 13), FFPolynomial(p, {-1, 1})).quotient; }

// Squaring map on GF(2)[x]/Phi13 in the basis 1, x, ..., x^11.
FFMatrix frobenius12()
{
    FFMatrix f(2, 12, 12);
    for (std::size_t i = 0; i < 12; ++i) {
        const std::size_t j = (2 * i) % 13;
        if (j < 12) {
            f.set(i, j, 1);
        } else {
            for (std::size_t c = 0; c < 12; ++c) f.set(i, c, 1);
        }
    }
    return f;
}

FFMatrix block_diag(const std::vector<FFMatrix>& blocks)
{
    std::size_t n = 0;
    for (const auto& b : blocks) n += b.rows();
    FFMatrix m(blocks.front().characteristic(), n, n);
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t r = 0; r < b.rows(); ++r)
            for (std::size_t c = 0; c < b.cols(); ++c) m.set(off + r, off + c, b.get(r, c));
        off += b.rows();
    }
    return m;
}

}  // namespace

GroupModel q12_13_12()
{
    const FFMatrix c = companion_matrix(phi13(2));
    const FFVector zero(2, 12);
    return GroupModel("2^12:(13:12)", {{"t", affine_matrix(c, zero)}, {"s", affine_matrix(frobenius12(), zero)}},
                      translations(2, 0, 12, 13));
}

GroupModel q6_13_12()
{
    const FFMatrix c = companion_matrix(phi13(2));
    FFMatrix b(2, 6, 6);  // companion of x^2+x+1 (order 3) plus a unipotent 4x4 Jordan block (order 4)
    b.set(0, 1, 1);
    b.set(1, 0, 1);
    b.set(1, 1, 1);
    for (std::size_t i = 2; i < 6; ++i) {
        b.set(i, i, 1);
        if (i + 1 < 6) b.set(i, i + 1, 1);
    }
    const FFMatrix one = FFMatrix::identity(2, 1);
    const FFMatrix t = block_diag({c, FFMatrix::identity(2, 6), one});
    const FFMatrix s = block_diag({frobenius12(), b, one});
    return GroupModel("2^6:(13:12)", {{"t", t}, {"s", s}}, translations(2, 12, 6, 19));
}

GroupModel q10_d26()
{
    const FFMatrix c = companion_matrix(phi13(2));
    const FFMatrix f6 = frobenius12().pow(6);
    FFMatrix swap(2, 10, 10);
    for (std::size_t i = 0; i < 5; ++i) {
        swap.set(i, i + 5, 1);
        swap.set(i + 5, i, 1);
    }
    const FFMatrix one = FFMatrix::identity(2, 1);
    return GroupModel("2^10:D26",
                      {{"t", block_diag({c, FFMatrix::identity(2, 10), one})}, {"x", block_diag({f6, swap, one})}},
                      translations(2, 12, 10, 23));
}

GroupModel gf3_12_translations()
{
    const FFMatrix c = companion_matrix(phi13(3));
    auto q = translations(3, 0, 12, 13);
    return GroupModel("3^12:13", {{"t", affine_matrix(c, FFVector(3, 12))}, {"u", q.front()}}, q);
}

GroupModel gf3_13_regular()
{
    FFMatrix p(3, 13, 13);
    for (std::size_t i = 0; i < 13; ++i) p.set(i, (i + 1) % 13, 1);
    auto q = translations(3, 0, 13, 14);
    return GroupModel("3^13:13", {{"t", affine_matrix(p, FFVector(3, 13))}, {"u", q.front()}}, q);
}

}  // namespace mgx::models
