#pragma once

#include "fundom/numeric.hpp"

#include <array>
#include <vector>

namespace fundom {

// Integer 4-vector with the two skew involutions used by the unit-group sieves.
struct IntVec4 {
    std::array<Int, 4> v{};

    IntVec4() = default;
    IntVec4(Int a, Int b, Int c, Int d) : v{std::move(a), std::move(b), std::move(c), std::move(d)} {}

    Int &operator[](int i) { return v[i]; }
    const Int &operator[](int i) const { return v[i]; }
    bool operator==(const IntVec4 &o) const { return v == o.v; }

    IntVec4 operator-() const { return {-v[0], -v[1], -v[2], -v[3]}; }
};

// J(x) = (x1, -x0, -x3, x2), S(x) = (-x3, x2, -x1, x0); both square to -1.
IntVec4 J_map(const IntVec4 &x);
IntVec4 S_map(const IntVec4 &x);
// Bianchi variant: J(x) = (x3, -x2, -x1, x0)
IntVec4 J_bianchi(const IntVec4 &x);

Int inner(const IntVec4 &a, const IntVec4 &b);
Int norm_sq(const IntVec4 &a);
Int det2(const IntVec4 &a); // a0 a3 - a1 a2

// q(x)  = x0^2 - a x1^2 - b x2^2 + ab x3^2
Int form_q(const Int &a, const Int &b, const IntVec4 &x);
// q2(x) = x0^2 + a x1^2 + b x2^2 + ab x3^2
Int form_q2(const Int &a, const Int &b, const IntVec4 &x);
// B(x,y) = q(x+y) - q(x) - q(y)
Int form_bilinear(const Int &a, const Int &b, const IntVec4 &x, const IntVec4 &y);

enum class FormKind { QAB, Q2AB, Q1AB, Det2, BilinearB, Inner };
Int form_eval(FormKind kind, const Int &a, const Int &b, const IntVec4 &x, const IntVec4 &y = IntVec4());

// All integer solutions of sum_i coeff[i] * x_i^2 = target with |x_i| <= bound,
// in lexicographic order. Coefficients must be positive (definite form), in
// which case the per-variable bounds derived from the coefficients make the
// list complete regardless of `bound`; a nonpositive coefficient is rejected.
std::vector<std::vector<Int>> solve_diagonal_form(const Int &target, const std::vector<Int> &coeffs,
                                                  const Int &bound);

// Solutions of sum over pairs (x_i^2 + x_i y_i + c y_i^2) = target, i.e. the
// norm form of Z[(1+sqrt(-d))/2] summed over `pairs` coordinates (c=(d+1)/4).
std::vector<std::vector<Int>> solve_half_norm_sum(const Int &target, const Int &c, int pairs);

} // namespace fundom
