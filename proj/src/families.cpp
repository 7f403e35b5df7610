#include "fundom/families.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace fundom {

int lex_compare(const GroupElement &a, const GroupElement &b) {
    for (int i = 0; i < 4; i++) {
        if (a.x[i] != b.x[i]) return a.x[i] < b.x[i] ? -1 : 1;
    }
    for (int i = 0; i < 4; i++) {
        if (a.y[i] != b.y[i]) return a.y[i] < b.y[i] ? -1 : 1;
    }
    return 0;
}

Family Family::quat_imquad(long d) {
    if (d <= 0 || (d % 8) != 7) throw FamilyError("quat_imquad: need d = 7 mod 8");
    Family f;
    f.kind_ = FamilyKind::QuatImquad;
    f.d_ = d;
    f.dim_ = 3;
    f.ring_ = RingDescriptor::half(Int(d));
    f.has_ring_ = true;
    f.fu_ = d;
    f.fv_ = 1;
    return f;
}

Family Family::quat_gauss(long a, long b) {
    if (a <= 0 || b <= a) throw FamilyError("quat_gauss: need 0 < a < b");
    Family f;
    f.kind_ = FamilyKind::QuatGauss;
    f.a_ = a;
    f.b_ = b;
    f.dim_ = 3;
    f.ring_ = RingDescriptor::gauss();
    f.has_ring_ = true;
    f.fu_ = a;
    f.fv_ = b;
    return f;
}

Family Family::quat_rat(long a, long b) {
    if (a <= 0 || b <= a) throw FamilyError("quat_rat: need 0 < a < b");
    Family f;
    f.kind_ = FamilyKind::QuatRat;
    f.a_ = a;
    f.b_ = b;
    f.dim_ = 2;
    f.has_ring_ = false;
    f.fu_ = a;
    f.fv_ = b;
    return f;
}

Family Family::bianchi(long d) {
    if (d <= 0) throw FamilyError("bianchi: need d > 0");
    Family f;
    f.kind_ = FamilyKind::Bianchi;
    f.d_ = d;
    f.dim_ = 3;
    f.ring_ = (d % 4 == 3) ? RingDescriptor::half(Int(d)) : RingDescriptor::root(Int(d));
    if (d == 1) f.ring_ = RingDescriptor::gauss();
    f.has_ring_ = true;
    f.fu_ = d;
    f.fv_ = 1;
    return f;
}

Family Family::cong(long n0, const std::string &ring) {
    if (n0 < 1) throw FamilyError("cong: need n0 >= 1");
    Family f;
    f.kind_ = FamilyKind::Cong;
    f.n0_ = n0;
    if (ring == "Z") {
        f.dim_ = 2;
        f.has_ring_ = false;
        f.fu_ = f.fv_ = 1;
    } else if (ring == "Zi") {
        f.dim_ = 3;
        f.ring_ = RingDescriptor::gauss();
        f.has_ring_ = true;
        f.fu_ = f.fv_ = 1;
    } else if (ring == "Zsqrt-2") {
        f.dim_ = 3;
        f.ring_ = RingDescriptor::root(Int(2));
        f.has_ring_ = true;
        f.fu_ = 2;
        f.fv_ = 1;
    } else {
        throw FamilyError("cong: unknown ring " + ring);
    }
    return f;
}

std::string Family::name() const {
    switch (kind_) {
    case FamilyKind::QuatImquad: return "quat_imquad(" + std::to_string(d_) + ")";
    case FamilyKind::QuatGauss: return "quat_gauss(" + std::to_string(a_) + "," + std::to_string(b_) + ")";
    case FamilyKind::QuatRat: return "quat_rat(" + std::to_string(a_) + "," + std::to_string(b_) + ")";
    case FamilyKind::Bianchi: return "bianchi(" + std::to_string(d_) + ")";
    case FamilyKind::Cong: {
        std::string r = dim_ == 2 ? "Z" : (ring_.kind == OmegaKind::Gauss ? "Zi" : "Zsqrt-2");
        return "cong(" + std::to_string(n0_) + "," + r + ")";
    }
    }
    return "?";
}

Int Family::min_shell() const {
    switch (kind_) {
    case FamilyKind::QuatImquad: return 1;
    case FamilyKind::QuatGauss:
    case FamilyKind::QuatRat: return 2;
    case FamilyKind::Bianchi: return 3;
    case FamilyKind::Cong: return 1;
    }
    return 1;
}

Int Family::shell_norm(const Int &shell) const {
    switch (kind_) {
    case FamilyKind::QuatImquad: return 2 + 2 * Int(d_) * shell; // ||y||^2 = 2 shell
    case FamilyKind::QuatGauss:
    case FamilyKind::QuatRat: return 4 * shell - 2;
    case FamilyKind::Bianchi: return shell;
    case FamilyKind::Cong: return 2 + Int(n0_) * Int(n0_) * shell;
    }
    return shell;
}

Int Family::shell_for_norm_bound(const Rat &bound) const {
    // largest s with shell_norm(s) <= bound
    Rat s;
    switch (kind_) {
    case FamilyKind::QuatImquad: s = (bound - 2) / Rat(2 * d_); break;
    case FamilyKind::QuatGauss:
    case FamilyKind::QuatRat: s = (bound + 2) / Rat(4); break;
    case FamilyKind::Bianchi: s = bound; break;
    case FamilyKind::Cong: s = (bound - 2) / Rat(n0_ * n0_); break;
    }
    Int fl = Int(s.get_num() / s.get_den()); // floor for s >= 0
    if (Rat(fl) > s) fl -= 1;
    return fl;
}

// --- element helpers -------------------------------------------------------

GroupElement Family::make_element(IntVec4 x, IntVec4 y) const {
    GroupElement g{std::move(x), std::move(y), Int(0)};
    if (!satisfies_system(g)) throw FamilyError(name() + ": coordinates violate the defining system");
    g.norm2 = norm_of(g);
    return g;
}

GroupElement Family::identity() const {
    GroupElement g;
    if (kind_ == FamilyKind::Cong) {
        g.x = IntVec4(0, 0, 0, 0); // ghat = 0
    } else if (kind_ == FamilyKind::Bianchi) {
        g.x = IntVec4(1, 0, 0, 1);
    } else {
        g.x = IntVec4(1, 0, 0, 0);
    }
    g.y = IntVec4(0, 0, 0, 0);
    g.norm2 = 2;
    return g;
}

bool Family::is_identity_class(const GroupElement &g) const {
    if (g.norm2 != 2) return false;
    GroupElement id = identity();
    if (g == id) return true;
    if (minus_in_group()) {
        GroupElement n = negate(id);
        if (g == n) return true;
    }
    return false;
}

bool Family::minus_in_group() const {
    if (kind_ == FamilyKind::Cong) return n0_ <= 2;
    return true;
}

GroupElement Family::negate(const GroupElement &g) const {
    GroupElement r = g;
    if (kind_ == FamilyKind::Cong) {
        // -(1 + n0 ghat) = 1 + n0 (-ghat - 2/n0)
        Int shift = Int(2) / Int(n0_); // n0 in {1,2}
        r.x = -g.x;
        r.y = -g.y;
        r.x[0] -= shift;
        r.x[3] -= shift;
        return r;
    }
    r.x = -g.x;
    r.y = -g.y;
    return r;
}

GroupElement Family::normalized(GroupElement g) const {
    if (!minus_in_group()) return g;
    GroupElement n = negate(g);
    return lex_compare(n, g) < 0 ? n : g;
}

GroupElement Family::multiply(const GroupElement &g, const GroupElement &h) const {
    switch (kind_) {
    case FamilyKind::QuatImquad:
    case FamilyKind::QuatGauss:
    case FamilyKind::QuatRat: {
        // quaternion product over the coordinate ring, i^2 = A, j^2 = B
        long A = kind_ == FamilyKind::QuatImquad ? -1 : a_;
        long B = kind_ == FamilyKind::QuatImquad ? -1 : b_;
        RingDescriptor ring = has_ring_ ? ring_ : RingDescriptor::gauss();
        auto cu = [&](int t, const GroupElement &e) {
            return has_ring_ ? QuadInt(e.x[t], e.y[t], ring) : QuadInt(e.x[t], 0, ring);
        };
        QuadInt u[4] = {cu(0, g), cu(1, g), cu(2, g), cu(3, g)};
        QuadInt v[4] = {cu(0, h), cu(1, h), cu(2, h), cu(3, h)};
        QuadInt qa(A, 0, ring), qb(B, 0, ring), qab(Int(A) * B, 0, ring);
        QuadInt w0 = u[0] * v[0] + qa * u[1] * v[1] + qb * u[2] * v[2] - qab * u[3] * v[3];
        QuadInt w1 = u[0] * v[1] + u[1] * v[0] - qb * u[2] * v[3] + qb * u[3] * v[2];
        QuadInt w2 = u[0] * v[2] + u[2] * v[0] + qa * u[1] * v[3] - qa * u[3] * v[1];
        QuadInt w3 = u[0] * v[3] + u[3] * v[0] + u[1] * v[2] - u[2] * v[1];
        return make_element(IntVec4(w0.x, w1.x, w2.x, w3.x), IntVec4(w0.y, w1.y, w2.y, w3.y));
    }
    case FamilyKind::Bianchi: {
        QuadInt a1(g.x[0], g.y[0], ring_), b1(g.x[1], g.y[1], ring_), c1(g.x[2], g.y[2], ring_),
            d1(g.x[3], g.y[3], ring_);
        QuadInt a2(h.x[0], h.y[0], ring_), b2(h.x[1], h.y[1], ring_), c2(h.x[2], h.y[2], ring_),
            d2(h.x[3], h.y[3], ring_);
        QuadInt A = a1 * a2 + b1 * c2, Bq = a1 * b2 + b1 * d2;
        QuadInt C = c1 * a2 + d1 * c2, D = c1 * b2 + d1 * d2;
        return make_element(IntVec4(A.x, Bq.x, C.x, D.x), IntVec4(A.y, Bq.y, C.y, D.y));
    }
    case FamilyKind::Cong: {
        // (1 + n0 p)(1 + n0 q) = 1 + n0 (p + q + n0 p q)
        RingDescriptor ring = has_ring_ ? ring_ : RingDescriptor::gauss();
        auto cu = [&](int t, const GroupElement &e) {
            return has_ring_ ? QuadInt(e.x[t], e.y[t], ring) : QuadInt(e.x[t], 0, ring);
        };
        QuadInt a1 = cu(0, g), b1 = cu(1, g), c1 = cu(2, g), d1 = cu(3, g);
        QuadInt a2 = cu(0, h), b2 = cu(1, h), c2 = cu(2, h), d2 = cu(3, h);
        QuadInt n0(Int(n0_), 0, ring);
        QuadInt A = a1 + a2 + n0 * (a1 * a2 + b1 * c2);
        QuadInt Bq = b1 + b2 + n0 * (a1 * b2 + b1 * d2);
        QuadInt C = c1 + c2 + n0 * (c1 * a2 + d1 * c2);
        QuadInt D = d1 + d2 + n0 * (c1 * b2 + d1 * d2);
        return make_element(IntVec4(A.x, Bq.x, C.x, D.x), IntVec4(A.y, Bq.y, C.y, D.y));
    }
    }
    throw FamilyError("multiply: unknown family");
}

GroupElement Family::inverse(const GroupElement &g) const {
    switch (kind_) {
    case FamilyKind::QuatImquad:
    case FamilyKind::QuatGauss:
    case FamilyKind::QuatRat: {
        // norm-one quaternion: inverse = conjugate
        IntVec4 x(g.x[0], -g.x[1], -g.x[2], -g.x[3]);
        IntVec4 y(g.y[0], -g.y[1], -g.y[2], -g.y[3]);
        return make_element(x, y);
    }
    case FamilyKind::Bianchi:
    case FamilyKind::Cong: {
        // [[a,b],[c,d]] -> [[d,-b],[-c,a]] (works entrywise on ghat as well)
        IntVec4 x(g.x[3], -g.x[1], -g.x[2], g.x[0]);
        IntVec4 y(g.y[3], -g.y[1], -g.y[2], g.y[0]);
        return make_element(x, y);
    }
    }
    throw FamilyError("inverse: unknown family");
}

Int Family::norm_of(const GroupElement &g) const {
    switch (kind_) {
    case FamilyKind::QuatImquad:
        // 2 N(u) + d ||y||^2 with N(u) = 1
        return 2 + Int(d_) * norm_sq(g.y);
    case FamilyKind::QuatGauss: {
        Int n = g.x[0] * g.x[0] + a_ * g.y[1] * g.y[1] + b_ * g.y[2] * g.y[2] + a_ * b_ * g.x[3] * g.x[3];
        return 4 * n - 2;
    }
    case FamilyKind::QuatRat: {
        Int n = g.x[0] * g.x[0] + a_ * b_ * g.x[3] * g.x[3];
        return 4 * n - 2;
    }
    case FamilyKind::Bianchi: {
        Int s = 0;
        for (int i = 0; i < 4; i++) s += QuadInt(g.x[i], g.y[i], ring_).norm();
        return s;
    }
    case FamilyKind::Cong: {
        // ||1 + n0 ghat||^2 = 2 + 2 n0 Re(tr ghat) + n0^2 ||ghat||^2
        Int tr_re = g.x[0] + g.x[3];
        Int hn = 0;
        if (has_ring_) {
            for (int i = 0; i < 4; i++) hn += QuadInt(g.x[i], g.y[i], ring_).norm();
        } else {
            hn = norm_sq(g.x);
        }
        return 2 + 2 * Int(n0_) * tr_re + Int(n0_) * Int(n0_) * hn;
    }
    }
    return 0;
}

bool Family::satisfies_system(const GroupElement &g) const {
    switch (kind_) {
    case FamilyKind::QuatImquad: {
        Int c4 = (Int(d_) + 1) / 4;
        if (norm_sq(g.x) - c4 * norm_sq(g.y) != 1) return false;
        return 2 * inner(g.x, g.y) + norm_sq(g.y) == 0;
    }
    case FamilyKind::QuatGauss: {
        Int qa(a_), qb(b_);
        if (form_q(qa, qb, g.x) - form_q(qa, qb, g.y) != 1) return false;
        return form_bilinear(qa, qb, g.x, g.y) == 0;
    }
    case FamilyKind::QuatRat: {
        if (!(g.y == IntVec4(0, 0, 0, 0))) return false;
        return form_q(Int(a_), Int(b_), g.x) == 1;
    }
    case FamilyKind::Bianchi: {
        QuadInt a(g.x[0], g.y[0], ring_), b(g.x[1], g.y[1], ring_), c(g.x[2], g.y[2], ring_),
            d(g.x[3], g.y[3], ring_);
        QuadInt det = a * d - b * c;
        return det.x == 1 && det.y == 0;
    }
    case FamilyKind::Cong: {
        // det(1 + n0 ghat) = 1  <=>  tr(ghat) + n0 det(ghat) = 0
        if (!has_ring_) {
            if (!(g.y == IntVec4(0, 0, 0, 0))) return false;
            return g.x[0] + g.x[3] + Int(n0_) * det2(g.x) == 0;
        }
        QuadInt a(g.x[0], g.y[0], ring_), b(g.x[1], g.y[1], ring_), c(g.x[2], g.y[2], ring_),
            d(g.x[3], g.y[3], ring_);
        QuadInt tr = a + d;
        QuadInt det = a * d - b * c;
        QuadInt lhs = tr + QuadInt(Int(n0_), 0, ring_) * det;
        return lhs.is_zero();
    }
    }
    return false;
}

// --- enumeration -----------------------------------------------------------

namespace {
std::vector<GroupElement> finalize(const Family &fam, std::vector<GroupElement> raw) {
    for (auto &g : raw) g = fam.normalized(std::move(g));
    std::sort(raw.begin(), raw.end(),
              [](const GroupElement &a, const GroupElement &b) { return lex_compare(a, b) < 0; });
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    for (const auto &g : raw)
        if (!fam.satisfies_system(g)) throw FamilyError("enumeration produced invalid element");
    return raw;
}

IntVec4 to_vec(const std::vector<Int> &v, int i0, int i1, int i2, int i3) {
    return IntVec4(v[i0], v[i1], v[i2], v[i3]);
}
} // namespace

std::vector<GroupElement> Family::enum_imquad(const Int &shell) const {
    std::vector<GroupElement> out;
    Int y2 = 2 * shell;
    Int c4 = (Int(d_) + 1) / 4;
    Int x2 = 1 + c4 * y2;
    auto ys = solve_diagonal_form(y2, {1, 1, 1, 1}, y2 + 1);
    auto xs = solve_diagonal_form(x2, {1, 1, 1, 1}, x2 + 1);
    for (const auto &yv : ys) {
        IntVec4 y = to_vec(yv, 0, 1, 2, 3);
        for (const auto &xv : xs) {
            IntVec4 x = to_vec(xv, 0, 1, 2, 3);
            if (2 * inner(x, y) + y2 == 0) {
                GroupElement g{x, y, 2 + Int(d_) * y2};
                out.push_back(g);
            }
        }
    }
    return out;
}

std::vector<GroupElement> Family::enum_gauss(const Int &shell) const {
    std::vector<GroupElement> out;
    Int qa(a_), qb(b_), qab = qa * qb;
    auto A = solve_diagonal_form(shell, {1, qa, qb, qab}, shell + 1);     // (x0, y1, y2, x3)
    auto B = solve_diagonal_form(shell - 1, {1, qa, qb, qab}, shell + 1); // (y0, x1, x2, y3)
    Int norm2v = 4 * shell - 2;
    for (const auto &av : A) {
        for (const auto &bv : B) {
            IntVec4 x(av[0], bv[1], bv[2], av[3]);
            IntVec4 y(bv[0], av[1], av[2], bv[3]);
            if (form_bilinear(qa, qb, x, y) == 0) out.push_back(GroupElement{x, y, norm2v});
        }
    }
    return out;
}

std::vector<GroupElement> Family::enum_rat(const Int &shell) const {
    std::vector<GroupElement> out;
    Int qa(a_), qb(b_), qab = qa * qb;
    auto A = solve_diagonal_form(shell, {1, qab}, shell + 1);     // (x0, x3)
    auto B = solve_diagonal_form(shell - 1, {qa, qb}, shell + 1); // (x1, x2)
    Int norm2v = 4 * shell - 2;
    for (const auto &av : A)
        for (const auto &bv : B) {
            IntVec4 x(av[0], bv[0], bv[1], av[1]);
            out.push_back(GroupElement{x, IntVec4(0, 0, 0, 0), norm2v});
        }
    return out;
}

std::vector<GroupElement> Family::enum_bianchi(const Int &shell) const {
    std::vector<GroupElement> out;
    // ||gamma||^2 = sum of entry norms = shell; entries in Z[omega]
    std::map<Int, std::vector<QuadInt>> lists;
    auto list_for = [&](const Int &m) -> const std::vector<QuadInt> & {
        auto it = lists.find(m);
        if (it == lists.end()) it = lists.emplace(m, ring_elements_with_norm(ring_, m)).first;
        return it->second;
    };
    QuadInt one(1, 0, ring_);
    for (Int na = 0; na <= shell; ++na) {
        const auto &La = list_for(na);
        if (La.empty()) continue;
        for (Int nb = 0; na + nb <= shell; ++nb) {
            const auto &Lb = list_for(nb);
            if (Lb.empty()) continue;
            for (Int nc = 0; na + nb + nc <= shell; ++nc) {
                const auto &Lc = list_for(nc);
                if (Lc.empty()) continue;
                Int nd = shell - na - nb - nc;
                for (const auto &a : La)
                    for (const auto &b : Lb)
                        for (const auto &c : Lc) {
                            // a d = 1 + b c: solve for d by exact division
                            QuadInt num = one + b * c;
                            if (a.is_zero()) {
                                if (!num.is_zero()) continue;
                                for (const auto &d : list_for(nd)) {
                                    GroupElement g{IntVec4(a.x, b.x, c.x, d.x),
                                                   IntVec4(a.y, b.y, c.y, d.y), shell};
                                    out.push_back(g);
                                }
                                continue;
                            }
                            if (na * nd < num.norm()) continue; // |a d| mismatch
                            if (num.norm() != na * nd) continue;
                            QuadInt t = num * a.conj();
                            if (t.x % na != 0 || t.y % na != 0) continue;
                            QuadInt d(t.x / na, t.y / na, ring_);
                            if (d.norm() != nd) continue;
                            out.push_back(GroupElement{IntVec4(a.x, b.x, c.x, d.x),
                                                       IntVec4(a.y, b.y, c.y, d.y), shell});
                        }
            }
        }
    }
    return out;
}

std::vector<GroupElement> Family::enum_cong_z(const Int &shell) const {
    std::vector<GroupElement> out;
    const Int n = shell;
    const Int n0(n0_);
    Int norm2v = 2 + n0 * n0 * n;
    // n = diff^2 + sumbc^2, S = a + d = n0 e, W = b - c,
    // W^2 = n - n0^2 e^2 - 4 e
    auto pairs = solve_diagonal_form(n, {1, 1}, n + 1); // (diff, sumbc)
    for (Int e = -(isqrt(n) / n0 + 2); e <= isqrt(n) / n0 + 2; ++e) {
        Int w2 = n - n0 * n0 * e * e - 4 * e;
        Int w;
        if (w2 < 0 || !is_square(w2, w)) continue;
        std::vector<Int> ws = w == 0 ? std::vector<Int>{Int(0)} : std::vector<Int>{w, -w};
        for (const auto &pr : pairs) {
            const Int &diff = pr[0], &sumbc = pr[1];
            Int S = n0 * e;
            if ((S - diff) % 2 != 0) continue;
            for (const Int &wv : ws) {
                if ((sumbc - wv) % 2 != 0) continue;
                Int a = (S + diff) / 2, d = (S - diff) / 2;
                Int b = (sumbc + wv) / 2, c = (sumbc - wv) / 2;
                GroupElement g{IntVec4(a, b, c, d), IntVec4(0, 0, 0, 0), norm2v};
                if (satisfies_system(g) && norm_of(g) == norm2v) out.push_back(g);
            }
        }
    }
    return out;
}

std::vector<GroupElement> Family::enum_cong_complex(const Int &shell) const {
    std::vector<GroupElement> out;
    const Int n = shell;
    const Int n0(n0_);
    Int total = 2 + n0 * n0 * n; // ||gamma||^2
    // |1+n0 a|^2 + |1+n0 d|^2 + n0^2(|b|^2+|c|^2) = total
    Int abound = ((1 + isqrt(total)) / n0 + 1);
    auto As = ring_elements_norm_upto(ring_, abound * abound + 2 * abound + 1);
    QuadInt one(1, 0, ring_);
    QuadInt n0q(n0, 0, ring_);
    for (const auto &ah : As) {
        QuadInt a1 = one + n0q * ah;
        Int na = a1.norm();
        if (na > total) continue;
        for (const auto &dh : As) {
            QuadInt d1 = one + n0q * dh;
            Int rem = total - na - d1.norm();
            if (rem < 0) continue;
            if (rem % (n0 * n0) != 0) continue;
            Int M = rem / (n0 * n0); // |b|^2 + |c|^2
            // bc = K := (a1*d1 - 1)/n0^2
            QuadInt K = a1 * d1 - one;
            if (K.x % (n0 * n0) != 0 || K.y % (n0 * n0) != 0) continue;
            K = QuadInt(K.x / (n0 * n0), K.y / (n0 * n0), ring_);
            if (K.is_zero()) {
                // b = 0 or c = 0
                for (const auto &b : ring_elements_with_norm(ring_, M)) {
                    out.push_back(GroupElement{IntVec4(ah.x, b.x, Int(0), dh.x),
                                               IntVec4(ah.y, b.y, Int(0), dh.y), total});
                    if (M != 0)
                        out.push_back(GroupElement{IntVec4(ah.x, Int(0), b.x, dh.x),
                                                   IntVec4(ah.y, Int(0), b.y, dh.y), total});
                }
                continue;
            }
            Int nk = K.norm();
            for (const auto &b : ring_elements_norm_upto(ring_, M)) {
                if (b.is_zero()) continue;
                Int nb = b.norm();
                if (nb == 0 || nk % nb != 0) continue;
                // c = K / b = K * conj(b) / |b|^2
                QuadInt num = K * b.conj();
                if (num.x % nb != 0 || num.y % nb != 0) continue;
                QuadInt c(num.x / nb, num.y / nb, ring_);
                if (nb + c.norm() != M) continue;
                GroupElement g{IntVec4(ah.x, b.x, c.x, dh.x), IntVec4(ah.y, b.y, c.y, dh.y), total};
                if (satisfies_system(g)) out.push_back(g);
            }
        }
    }
    return out;
}

std::vector<GroupElement> Family::enumerate_shell(const Int &shell) const {
    if (shell < 0) throw FamilyError("enumerate_shell: negative shell");
    std::vector<GroupElement> raw;
    switch (kind_) {
    case FamilyKind::QuatImquad: raw = enum_imquad(shell); break;
    case FamilyKind::QuatGauss: raw = enum_gauss(shell); break;
    case FamilyKind::QuatRat: raw = enum_rat(shell); break;
    case FamilyKind::Bianchi: raw = enum_bianchi(shell); break;
    case FamilyKind::Cong: raw = dim_ == 2 ? enum_cong_z(shell) : enum_cong_complex(shell); break;
    }
    return finalize(*this, std::move(raw));
}

// --- stabilizer / cusps ----------------------------------------------------

std::vector<GroupElement> Family::stabilizer() const {
    std::vector<GroupElement> out;
    switch (kind_) {
    case FamilyKind::QuatImquad: {
        // <i, j> = Q8: the eight unit quaternions, y = 0
        for (int s : {1, -1})
            for (int i = 0; i < 4; i++) {
                IntVec4 x(0, 0, 0, 0);
                x[i] = s;
                out.push_back(GroupElement{x, IntVec4(0, 0, 0, 0), Int(2)});
            }
        std::sort(out.begin(), out.end(),
                  [](const GroupElement &a, const GroupElement &b) { return lex_compare(a, b) < 0; });
        return out;
    }
    case FamilyKind::Bianchi: {
        // elements of norm 2, normalized mod +/-
        auto elems = enumerate_shell(Int(2));
        return elems;
    }
    default: return out; // trivial
    }
}

CuspData Family::cusp_data() const {
    if (cocompact()) throw NotCusped(name() + " is cocompact");
    CuspData cd;
    auto half = rat_of(1, 2);
    if (kind_ == FamilyKind::Bianchi) {
        // translations by 1 and -omega
        cd.translations.push_back(make_element(IntVec4(1, 1, 0, 1), IntVec4(0, 0, 0, 0)));
        cd.translations.push_back(make_element(IntVec4(1, 0, 0, 1), IntVec4(0, -1, 0, 0)));
        long d = d_;
        if (d == 1) {
            cd.cell = {{qe(-half), qe(Rat(0))}, {qe(half), qe(Rat(0))}, {qe(half), qe(half)}, {qe(-half), qe(half)}};
        } else if (d == 3) {
            // 0 <= Re <= 1/2, 0 <= Re + sqrt(3) Im <= 1
            cd.cell = {{qe(Rat(0)), qe(Rat(0))},
                       {qe(half), qe(Rat(0))},
                       {qe(half), qe_root(rat_of(1, 6), 3)},
                       {qe(Rat(0)), qe_root(rat_of(1, 3), 3)}};
        } else if (d % 4 == 3) {
            // hexagon: +/-(d+1)sqrt(d)/(4d) i, +/-1/2 +/- (d-1)sqrt(d)/(4d) i
            Rat big = make_rat(d + 1, 4 * d), small = make_rat(d - 1, 4 * d);
            cd.cell = {{qe(half), qe_root(-small, d)},  {qe(half), qe_root(small, d)},
                       {qe(Rat(0)), qe_root(big, d)},   {qe(-half), qe_root(small, d)},
                       {qe(-half), qe_root(-small, d)}, {qe(Rat(0)), qe_root(-big, d)}};
        } else {
            // rectangle +/-1/2, +/- sqrt(d)/2
            cd.cell = {{qe(-half), qe_root(-half, d)},
                       {qe(half), qe_root(-half, d)},
                       {qe(half), qe_root(half, d)},
                       {qe(-half), qe_root(half, d)}};
        }
        return cd;
    }
    // congruence: translations gamma = 1 + n0 [[0, t], [0, 0]]
    if (dim_ == 2) {
        cd.translations.push_back(make_element(IntVec4(0, 1, 0, 0), IntVec4(0, 0, 0, 0)));
        Rat h = make_rat(n0_, 2);
        cd.cell = {{qe(-h), qe(Rat(0))}, {qe(h), qe(Rat(0))}};
        return cd;
    }
    cd.translations.push_back(make_element(IntVec4(0, 1, 0, 0), IntVec4(0, 0, 0, 0)));
    cd.translations.push_back(make_element(IntVec4(0, 0, 0, 0), IntVec4(0, 1, 0, 0)));
    Rat h = make_rat(n0_, 2);
    if (ring_.kind == OmegaKind::Gauss) {
        cd.cell = {{qe(-h), qe(-h)}, {qe(h), qe(-h)}, {qe(h), qe(h)}, {qe(-h), qe(h)}};
    } else {
        // Z[sqrt(-2)]: cell [-n0/2, n0/2] x [-n0 sqrt(2)/2, n0 sqrt(2)/2]
        cd.cell = {{qe(-h), qe_root(-h, 2)},
                   {qe(h), qe_root(-h, 2)},
                   {qe(h), qe_root(h, 2)},
                   {qe(-h), qe_root(h, 2)}};
    }
    return cd;
}

// --- embedding -------------------------------------------------------------

ExactComplex Family::entry_from_quadint(const QuadInt &z) const {
    Rat re0, imd;
    z.complex_parts(re0, imd);
    long m = (ring_.kind == OmegaKind::Gauss) ? 1 : (d_ > 0 ? d_ : 2);
    return ExactComplex{qe(re0), qe_root(imd, m)};
}

MoebiusMatrix Family::embed(const GroupElement &g) const {
    switch (kind_) {
    case FamilyKind::QuatImquad: {
        // u_t = p_t + q_t sqrt(d) i ; gamma = [[u0+u1 i, u2+u3 i], [-u2+u3 i, u0-u1 i]]
        Rat p[4], q[4];
        for (int t = 0; t < 4; t++) {
            QuadInt u(g.x[t], g.y[t], ring_);
            u.complex_parts(p[t], q[t]);
        }
        auto C = [&](Rat re0, Rat red, Rat im0, Rat imd) {
            return ExactComplex{qe(re0) + qe_root(red, d_), qe(im0) + qe_root(imd, d_)};
        };
        ExactComplex A = C(p[0], -q[1], p[1], q[0]);
        ExactComplex B = C(p[2], -q[3], p[3], q[2]);
        ExactComplex Cc = C(-p[2], -q[3], p[3], -q[2]);
        ExactComplex D = C(p[0], q[1], -p[1], q[0]);
        return {A, B, Cc, D};
    }
    case FamilyKind::QuatGauss: {
        // gamma = [[u0+u1 sa, u2 sb + u3 sab], [u2 sb - u3 sab, u0-u1 sa]]
        auto C2 = [&](const Rat &r0, long m0, const Rat &r1, long m1, const Rat &i0, long mi0,
                      const Rat &i1, long mi1) {
            return ExactComplex{qe_root(r0, m0) + qe_root(r1, m1), qe_root(i0, mi0) + qe_root(i1, mi1)};
        };
        ExactComplex A = C2(Rat(g.x[0]), 1, Rat(g.x[1]), a_, Rat(g.y[0]), 1, Rat(g.y[1]), a_);
        ExactComplex D = C2(Rat(g.x[0]), 1, Rat(-g.x[1]), a_, Rat(g.y[0]), 1, Rat(-g.y[1]), a_);
        ExactComplex B = C2(Rat(g.x[2]), b_, Rat(g.x[3]), a_ * b_, Rat(g.y[2]), b_, Rat(g.y[3]), a_ * b_);
        ExactComplex Cc = C2(Rat(g.x[2]), b_, Rat(-g.x[3]), a_ * b_, Rat(g.y[2]), b_, Rat(-g.y[3]), a_ * b_);
        return {A, B, Cc, D};
    }
    case FamilyKind::QuatRat: {
        auto R = [&](const Rat &r0, long m0, const Rat &r1, long m1) {
            return ExactComplex{qe_root(r0, m0) + qe_root(r1, m1), qe(Rat(0))};
        };
        ExactComplex A = R(Rat(g.x[0]), 1, Rat(g.x[1]), a_);
        ExactComplex D = R(Rat(g.x[0]), 1, Rat(-g.x[1]), a_);
        ExactComplex B = R(Rat(g.x[2]), b_, Rat(g.x[3]), a_ * b_);
        ExactComplex Cc = R(Rat(g.x[2]), b_, Rat(-g.x[3]), a_ * b_);
        return {A, B, Cc, D};
    }
    case FamilyKind::Bianchi: {
        auto E = [&](int t) { return entry_from_quadint(QuadInt(g.x[t], g.y[t], ring_)); };
        return {E(0), E(1), E(2), E(3)};
    }
    case FamilyKind::Cong: {
        if (dim_ == 2) {
            auto E = [&](const Int &v, bool diag) {
                Rat r = Rat(n0_) * Rat(v) + (diag ? Rat(1) : Rat(0));
                return ExactComplex{qe(r), qe(Rat(0))};
            };
            return {E(g.x[0], true), E(g.x[1], false), E(g.x[2], false), E(g.x[3], true)};
        }
        auto E = [&](int t, bool diag) {
            QuadInt z(g.x[t], g.y[t], ring_);
            ExactComplex e = entry_from_quadint(z);
            ExactComplex scaled{e.re * Rat(n0_), e.im * Rat(n0_)};
            if (diag) scaled.re = scaled.re + qe(Rat(1));
            return scaled;
        };
        return {E(0, true), E(1, false), E(2, false), E(3, true)};
    }
    }
    throw FamilyError("embed: unknown family");
}

// --- symmetries ------------------------------------------------------------

std::vector<std::string> Family::symmetry_generators() const {
    switch (kind_) {
    case FamilyKind::QuatImquad: return {"sigma", "tau"};
    case FamilyKind::QuatGauss: return {"sigma2", "tau", "phi"};
    case FamilyKind::QuatRat: return {"sigma2", "phi"};
    case FamilyKind::Bianchi: return {"sigma2", "tau"};
    case FamilyKind::Cong:
        // sigma^2 and tau are tessellation symmetries separately; the composite
        // generates only an index-two subgroup of the walls' symmetry group
        return dim_ == 2 ? std::vector<std::string>{"sigma2", "phi"}
                         : std::vector<std::string>{"sigma2", "tau", "phi"};
    }
    return {};
}

namespace {
// conjugate of x + y*omega in its ring, as coordinates
void conj_coords(const RingDescriptor &ring, Int &x, Int &y) {
    if (ring.kind == OmegaKind::Half) x = x + y;
    y = -y;
}
} // namespace

GroupElement Family::apply_symmetry(const std::string &gen, const GroupElement &g) const {
    IntVec4 x = g.x, y = g.y;
    auto conj_t = [&](int t) { conj_coords(ring_, x[t], y[t]); };
    switch (kind_) {
    case FamilyKind::QuatImquad: {
        if (gen == "sigma") {
            // u -> (u0, u1, -u3, u2)
            IntVec4 nx(x[0], x[1], -x[3], x[2]), ny(y[0], y[1], -y[3], y[2]);
            return make_element(nx, ny);
        }
        if (gen == "sigma2") {
            return make_element(IntVec4(x[0], x[1], -x[2], -x[3]), IntVec4(y[0], y[1], -y[2], -y[3]));
        }
        if (gen == "tau") {
            // u -> (conj u0, -conj u1, conj u2, -conj u3)
            for (int t = 0; t < 4; t++) conj_t(t);
            return make_element(IntVec4(x[0], -x[1], x[2], -x[3]), IntVec4(y[0], -y[1], y[2], -y[3]));
        }
        break;
    }
    case FamilyKind::QuatGauss: {
        if (gen == "sigma2")
            return make_element(IntVec4(x[0], x[1], -x[2], -x[3]), IntVec4(y[0], y[1], -y[2], -y[3]));
        if (gen == "tau") return make_element(x, -y);
        if (gen == "phi")
            return make_element(IntVec4(x[0], -x[1], x[2], -x[3]), IntVec4(-y[0], y[1], -y[2], y[3]));
        break;
    }
    case FamilyKind::QuatRat: {
        if (gen == "sigma2") return make_element(IntVec4(x[0], x[1], -x[2], -x[3]), y);
        if (gen == "phi") return make_element(IntVec4(x[0], -x[1], x[2], -x[3]), y);
        break;
    }
    case FamilyKind::Bianchi: {
        if (gen == "sigma2")
            return make_element(IntVec4(x[0], -x[1], -x[2], x[3]), IntVec4(y[0], -y[1], -y[2], y[3]));
        if (gen == "tau") {
            for (int t = 0; t < 4; t++) conj_t(t);
            return make_element(x, y);
        }
        break;
    }
    case FamilyKind::Cong: {
        if (gen == "sigma2")
            return make_element(IntVec4(x[0], -x[1], -x[2], x[3]), IntVec4(y[0], -y[1], -y[2], y[3]));
        if (gen == "tau") {
            for (int t = 0; t < 4; t++) conj_t(t);
            return make_element(x, y);
        }
        if (gen == "phi")
            return make_element(IntVec4(x[3], x[2], x[1], x[0]), IntVec4(-y[3], -y[2], -y[1], -y[0]));
        if (gen == "sigma2tau") {
            for (int t = 0; t < 4; t++) conj_t(t);
            return make_element(IntVec4(x[0], -x[1], -x[2], x[3]), IntVec4(y[0], -y[1], -y[2], y[3]));
        }
        break;
    }
    }
    throw FamilyError("apply_symmetry: generator " + gen + " not available for " + name());
}

} // namespace fundom
