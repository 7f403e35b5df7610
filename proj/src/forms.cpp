#include "fundom/forms.hpp"

#include <algorithm>
#include <functional>

namespace fundom {

IntVec4 J_map(const IntVec4 &x) { return {x[1], -x[0], -x[3], x[2]}; }
IntVec4 S_map(const IntVec4 &x) { return {-x[3], x[2], -x[1], x[0]}; }
IntVec4 J_bianchi(const IntVec4 &x) { return {x[3], -x[2], -x[1], x[0]}; }

Int inner(const IntVec4 &a, const IntVec4 &b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

Int norm_sq(const IntVec4 &a) { return inner(a, a); }

Int det2(const IntVec4 &a) { return a[0] * a[3] - a[1] * a[2]; }

Int form_q(const Int &a, const Int &b, const IntVec4 &x) {
    return x[0] * x[0] - a * x[1] * x[1] - b * x[2] * x[2] + a * b * x[3] * x[3];
}

Int form_q2(const Int &a, const Int &b, const IntVec4 &x) {
    return x[0] * x[0] + a * x[1] * x[1] + b * x[2] * x[2] + a * b * x[3] * x[3];
}

Int form_bilinear(const Int &a, const Int &b, const IntVec4 &x, const IntVec4 &y) {
    return 2 * (x[0] * y[0] - a * x[1] * y[1] - b * x[2] * y[2] + a * b * x[3] * y[3]);
}

Int form_eval(FormKind kind, const Int &a, const Int &b, const IntVec4 &x, const IntVec4 &y) {
    switch (kind) {
    case FormKind::QAB:
    case FormKind::Q1AB: return form_q(a, b, x);
    case FormKind::Q2AB: return form_q2(a, b, x);
    case FormKind::Det2: return det2(x);
    case FormKind::BilinearB: return form_bilinear(a, b, x, y);
    case FormKind::Inner: return inner(x, y);
    }
    return Int(0);
}

std::vector<std::vector<Int>> solve_diagonal_form(const Int &target, const std::vector<Int> &coeffs,
                                                  const Int &bound) {
    for (const auto &c : coeffs)
        if (c <= 0) throw FamilyError("solve_diagonal_form: form must be positive definite");
    std::vector<std::vector<Int>> out;
    if (target < 0) return out;
    std::vector<Int> cur(coeffs.size());
    std::function<void(size_t, Int)> rec = [&](size_t i, Int rem) {
        if (i == coeffs.size()) {
            if (rem == 0) out.push_back(cur);
            return;
        }
        if (i + 1 == coeffs.size()) {
            // last variable: coeff * x^2 == rem
            if (rem % coeffs[i] != 0) return;
            Int q = rem / coeffs[i], r;
            if (!is_square(q, r)) return;
            if (r > bound) return;
            if (r == 0) {
                cur[i] = 0;
                out.push_back(cur);
            } else {
                cur[i] = -r;
                out.push_back(cur);
                cur[i] = r;
                out.push_back(cur);
            }
            return;
        }
        Int xmax = isqrt(rem / coeffs[i]);
        if (xmax > bound) xmax = bound;
        for (Int x = -xmax; x <= xmax; ++x) {
            cur[i] = x;
            rec(i + 1, rem - coeffs[i] * x * x);
        }
    };
    rec(0, target);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<Int>> solve_half_norm_sum(const Int &target, const Int &c, int pairs) {
    // per-pair form x^2 + x y + c y^2, positive definite for c >= 1
    if (c < 1) throw FamilyError("solve_half_norm_sum: indefinite block");
    std::vector<std::vector<Int>> out;
    if (target < 0) return out;
    std::vector<Int> cur(2 * pairs);
    std::function<void(int, Int)> rec = [&](int i, Int rem) {
        if (i == pairs) {
            if (rem == 0) out.push_back(cur);
            return;
        }
        // (x + y/2)^2 + (c - 1/4) y^2 <= rem  =>  (4c-1) y^2 <= 4 rem
        Int ymax = isqrt(4 * rem / (4 * c - 1));
        for (Int y = -ymax; y <= ymax; ++y) {
            // x^2 + xy + (c y^2 - rem) <= 0
            Int disc = y * y - 4 * (c * y * y - rem);
            if (disc < 0) continue;
            Int s = isqrt(disc);
            Int xlo = (-y - s) / 2 - 1, xhi = (-y + s) / 2 + 1;
            for (Int x = xlo; x <= xhi; ++x) {
                Int val = x * x + x * y + c * y * y;
                if (val > rem) continue;
                cur[2 * i] = x;
                cur[2 * i + 1] = y;
                rec(i + 1, rem - val);
            }
        }
    };
    rec(0, target);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace fundom
