#pragma once

// Shared test oracle: grid search over coordinate vectors, checking the
// reduced-norm / determinant condition by direct ring arithmetic.
#include "fundom/families.hpp"

#include <algorithm>
#include <cmath>

namespace fundom_test {

using namespace fundom;

inline std::vector<GroupElement> brute_force_shell(const Family &fam, const Int &shell) {
    std::vector<GroupElement> out;
    Int norm2 = fam.shell_norm(shell);
    auto push_if = [&](const IntVec4 &x, const IntVec4 &y) {
        GroupElement g{x, y, Int(0)};
        if (!fam.satisfies_system(g)) return;
        g.norm2 = fam.norm_of(g);
        if (g.norm2 != norm2) return;
        out.push_back(fam.normalized(g));
    };
    switch (fam.kind()) {
    case FamilyKind::QuatImquad: {
        auto ring = fam.coord_ring();
        long xb = (long)to_double(isqrt(Int(1) + (Int(fam.param_d()) + 1) / 4 * 2 * shell)) + 1;
        long yb = (long)to_double(isqrt(2 * shell)) + 1;
        for (long x0 = -xb; x0 <= xb; x0++)
            for (long x1 = -xb; x1 <= xb; x1++)
                for (long x2 = -xb; x2 <= xb; x2++)
                    for (long x3 = -xb; x3 <= xb; x3++)
                        for (long y0 = -yb; y0 <= yb; y0++)
                            for (long y1 = -yb; y1 <= yb; y1++)
                                for (long y2 = -yb; y2 <= yb; y2++)
                                    for (long y3 = -yb; y3 <= yb; y3++) {
                                        if (Int(y0) * y0 + Int(y1) * y1 + Int(y2) * y2 +
                                                Int(y3) * y3 !=
                                            2 * shell)
                                            continue;
                                        QuadInt n(0, 0, ring);
                                        long xs[4] = {x0, x1, x2, x3}, ys[4] = {y0, y1, y2, y3};
                                        for (int t = 0; t < 4; t++) {
                                            QuadInt u(xs[t], ys[t], ring);
                                            n = n + u * u;
                                        }
                                        if (n.x == 1 && n.y == 0)
                                            push_if(IntVec4(x0, x1, x2, x3),
                                                    IntVec4(y0, y1, y2, y3));
                                    }
        break;
    }
    case FamilyKind::QuatGauss: {
        auto ring = fam.coord_ring();
        Int a(fam.param_a()), b(fam.param_b());
        long bb = (long)to_double(isqrt(shell)) + 1;
        for (long x0 = -bb; x0 <= bb; x0++)
            for (long x1 = -bb; x1 <= bb; x1++)
                for (long x2 = -bb; x2 <= bb; x2++)
                    for (long x3 = -bb; x3 <= bb; x3++)
                        for (long y0 = -bb; y0 <= bb; y0++)
                            for (long y1 = -bb; y1 <= bb; y1++)
                                for (long y2 = -bb; y2 <= bb; y2++)
                                    for (long y3 = -bb; y3 <= bb; y3++) {
                                        QuadInt u0(x0, y0, ring), u1(x1, y1, ring),
                                            u2(x2, y2, ring), u3(x3, y3, ring);
                                        QuadInt n = u0 * u0 - QuadInt(a, 0, ring) * u1 * u1 -
                                                    QuadInt(b, 0, ring) * u2 * u2 +
                                                    QuadInt(a * b, 0, ring) * u3 * u3;
                                        if (n.x == 1 && n.y == 0)
                                            push_if(IntVec4(x0, x1, x2, x3),
                                                    IntVec4(y0, y1, y2, y3));
                                    }
        break;
    }
    case FamilyKind::QuatRat: {
        long bb = (long)to_double(isqrt(shell)) + 1;
        Int a(fam.param_a()), b(fam.param_b());
        for (long x0 = -bb; x0 <= bb; x0++)
            for (long x1 = -bb; x1 <= bb; x1++)
                for (long x2 = -bb; x2 <= bb; x2++)
                    for (long x3 = -bb; x3 <= bb; x3++) {
                        IntVec4 x(x0, x1, x2, x3);
                        if (form_q(a, b, x) == 1) push_if(x, IntVec4(0, 0, 0, 0));
                    }
        break;
    }
    case FamilyKind::Bianchi: {
        // grid with running norm budget: sum |entry|^2 = shell
        auto ring = fam.coord_ring();
        auto grid = [&](long maxn) {
            std::vector<QuadInt> zs;
            long dv = (long)to_double(ring.d);
            long yb = ring.kind == OmegaKind::Half ? (long)(2 * std::sqrt((double)maxn / dv)) + 1
                                                   : (long)std::sqrt((double)maxn / dv) + 1;
            long xb = (long)std::sqrt((double)maxn) + yb + 1;
            for (long x = -xb; x <= xb; x++)
                for (long y = -yb; y <= yb; y++) {
                    QuadInt z(x, y, ring);
                    if (z.norm() <= maxn) zs.push_back(z);
                }
            return zs;
        };
        long S = (long)to_double(shell);
        for (const auto &a : grid(S))
            for (const auto &b : grid(S - (long)to_double(a.norm()))) {
                long r2 = S - (long)to_double(Int(a.norm() + b.norm()));
                if (r2 < 0) continue;
                for (const auto &cq : grid(r2)) {
                    long r3 = r2 - (long)to_double(cq.norm());
                    if (r3 < 0) continue;
                    for (const auto &d : grid(r3))
                        push_if(IntVec4(a.x, b.x, cq.x, d.x), IntVec4(a.y, b.y, cq.y, d.y));
                }
            }
        break;
    }
    case FamilyKind::Cong: {
        long n0 = fam.param_n0();
        Int total = fam.shell_norm(shell);
        long eb = ((long)to_double(isqrt(total)) + 1) / n0 + 1;
        if (fam.dimension() == 2) {
            for (long x0 = -eb; x0 <= eb; x0++)
                for (long x1 = -eb; x1 <= eb; x1++)
                    for (long x2 = -eb; x2 <= eb; x2++)
                        for (long x3 = -eb; x3 <= eb; x3++)
                            push_if(IntVec4(x0, x1, x2, x3), IntVec4(0, 0, 0, 0));
        } else {
            auto ring = fam.coord_ring();
            long dv = (long)to_double(ring.d);
            long yb = (long)std::sqrt(to_double(total) / dv) / n0 + 1;
            for (long x0 = -eb; x0 <= eb; x0++)
                for (long y0 = -yb; y0 <= yb; y0++)
                    for (long x1 = -eb; x1 <= eb; x1++)
                        for (long y1 = -yb; y1 <= yb; y1++)
                            for (long x2 = -eb; x2 <= eb; x2++)
                                for (long y2 = -yb; y2 <= yb; y2++)
                                    for (long x3 = -eb; x3 <= eb; x3++)
                                        for (long y3 = -yb; y3 <= yb; y3++)
                                            push_if(IntVec4(x0, x1, x2, x3),
                                                    IntVec4(y0, y1, y2, y3));
        }
        break;
    }
    }
    std::sort(out.begin(), out.end(),
              [](const GroupElement &a, const GroupElement &b) { return lex_compare(a, b) < 0; });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace fundom_test
