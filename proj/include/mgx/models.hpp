#pragma once

// Concrete small groups used as controls and test beds.

#include <vector>

#include "mgx/blackbox.hpp"

namespace mgx::models {

// GF(27) = GF(3)[x]/(x^3 - x - 1); element k has coefficients the base-3 digits of k.
int gf27_add(int a, int b);
int gf27_mul(int a, int b);
int gf27_neg(int a);
int gf27_inv(int a);
// Least primitive element (multiplicative order 26).
int gf27_primitive();

GroupModel cyclic13();
// t a 13-cycle, x a reflection.
GroupModel d26();
// On the 28 points of the projective line: u: z+1, t: w^2 z, s: -1/z.
GroupModel psl2_27();
// On the 13 points of PG(2,3), induced by a transvection and a 3-cycle matrix.
GroupModel psl3_3();
// On 26 points: t, r generate 13:2 on 1..13; a, b generate PSL3(3) on 14..26.
GroupModel c13_2_x_psl3_3();
// Affine group of GF(27) generated by u: z+1 and t: w^2 z (order 351).
GroupModel affine_27_13();
// The same extended by the Frobenius z^3 (order 1053).
GroupModel affine_27_13_3();
// 3^3:D26 of order 702 on 40 points: the 13 centralizes the 3^3 and the
// reflection inverts both.
GroupModel affine_27_d26();

// 13^{1+2}:(3 x 4A4) acting regularly-by-translations on its 2197-element
// normal subgroup, with the central element t and the 3x2x3 subgroup K.
struct HeisenbergModel {
    GroupModel group;
    Element t;
    std::vector<Element> k;
};
HeisenbergModel heisenberg_13();

// Matrix models over GF(2)/GF(3) with Q a group of translations written as
// (d+1)x(d+1) matrices [[A,0],[v,1]] acting on row vectors (v,1).
FFMatrix affine_matrix(const FFMatrix& a, const FFVector& v);
// Unit translations along coordinates first..first+count-1 of n x n affine matrices.
std::vector<Element> translations(int p, std::size_t first, std::size_t count, std::size_t n);

// 2^12:(13:12): t = companion of (x^13-1)/(x-1), s the Frobenius.
GroupModel q12_13_12();
// 2^6:(13:12): H acts on the 2^6 through its quotient C12, so the 13 centralizes Q.
GroupModel q6_13_12();
// 2^10:D26: D26 acts on 2^10 through C2, swapping two halves.
GroupModel q10_d26();
// GF(3)^12 translations with t acting by the companion of (x^13-1)/(x-1).
GroupModel gf3_12_translations();
// GF(3)^13 translations with t the 13-cycle permutation matrix.
GroupModel gf3_13_regular();

}  // namespace mgx::models
