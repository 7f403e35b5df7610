#include "fundom/covering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fundom {

namespace {

QuadExt dot3(const std::array<QuadExt, 3> &a, const std::array<QuadExt, 3> &b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

double dot3d(const std::array<double, 3> &a, const std::array<double, 3> &b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

// Solve G mu = rhs (k x k, k <= 3) exactly; returns false if singular.
bool solve_exact(std::vector<std::vector<QuadExt>> G, std::vector<QuadExt> rhs,
                 std::vector<QuadExt> &mu) {
    const size_t k = rhs.size();
    for (size_t col = 0; col < k; col++) {
        size_t piv = col;
        while (piv < k && G[piv][col].is_zero()) piv++;
        if (piv == k) return false;
        std::swap(G[piv], G[col]);
        std::swap(rhs[piv], rhs[col]);
        for (size_t r = 0; r < k; r++) {
            if (r == col || G[r][col].is_zero()) continue;
            QuadExt f = G[r][col] / G[col][col];
            for (size_t cc = 0; cc < k; cc++) G[r][cc] = G[r][cc] - f * G[col][cc];
            rhs[r] = rhs[r] - f * rhs[col];
        }
    }
    mu.assign(k, QuadExt());
    for (size_t i = 0; i < k; i++) mu[i] = rhs[i] / G[i][i];
    return true;
}

constexpr double kBand = 1e-7; // numeric band around exact decisions

} // namespace

Cap Cap::from_wall(const BallWall &w, int elem_idx) {
    Cap c;
    c.elem = elem_idx;
    c.c = w.center;
    c.r2 = w.r2;
    c.cd = w.cd;
    c.rd = w.rd;
    c.cnorm = std::sqrt(dot3d(w.cd, w.cd));
    return c;
}

bool cap_contains(const Cap &outer, const Cap &inner) {
    // ||P_o - P_i|| <= R_o - R_i: needs R_o >= R_i, then
    // X := ||dP||^2 - Ro^2 - Ri^2 <= 0 and X^2 >= 4 Ro^2 Ri^2
    if (outer.r2 < inner.r2) return false;
    std::array<QuadExt, 3> dp{outer.c[0] - inner.c[0], outer.c[1] - inner.c[1],
                              outer.c[2] - inner.c[2]};
    QuadExt d2 = dot3(dp, dp);
    long u = outer.c[0].u(), v = outer.c[0].v();
    QuadExt X = d2 - QuadExt::rational(outer.r2 + inner.r2, u, v);
    if (X.sign() > 0) return false;
    QuadExt rhs = QuadExt::rational(4 * outer.r2 * inner.r2, u, v);
    return (X * X - rhs).sign() >= 0;
}

bool cap_union_redundant(const Cap &cand, const std::vector<Cap> &accepted, int dim,
                         RedundancyStats &stats,
                         const std::vector<std::array<QuadExt, 3>> &region) {
    const long u = cand.c[0].u(), v = cand.c[0].v();
    const QuadExt one = QuadExt::rational(Rat(1), u, v);
    const QuadExt zero = QuadExt::rational(Rat(0), u, v);

    // relevant caps: planes that can meet the candidate's ideal cap, screened
    // through the extremes of <u, P_i> over that spherical cap
    std::vector<int> rel;
    double cn = cand.cnorm;
    double alpha = std::acos(std::min(1.0, std::max(-1.0, 1.0 / cn)));
    for (size_t i = 0; i < accepted.size(); i++) {
        const Cap &p = accepted[i];
        double pn = p.cnorm;
        double cth = dot3d(cand.cd, p.cd) / (cn * pn);
        cth = std::min(1.0, std::max(-1.0, cth));
        double th = std::acos(cth);
        double mx = pn * std::cos(std::max(0.0, th - alpha));
        double mn = pn * std::cos(std::min(M_PI, th + alpha));
        if (mx < 1.0 - kBand) continue; // cap i never reaches the candidate
        if (mn > 1.0 + kBand && cap_contains(p, cand)) return true;
        rel.push_back((int)i);
    }
    if (rel.empty() && region.empty()) return false;

    // pole test: c/||c|| strictly inside the region cone and outside every
    // closed cap => not redundant
    bool pole_ok = true;
    for (const auto &n : region)
        if (dot3(cand.c, n).sign() <= 0) {
            pole_ok = false;
            break;
        }
    if (pole_ok) {
        bool pole_covered = false;
        for (int i : rel) {
            const Cap &p = accepted[i];
            double dots = dot3d(cand.cd, p.cd);
            int s;
            if (dots < cn * (1 - kBand)) s = -1;
            else if (dots > cn * (1 + kBand)) s = 1;
            else s = sign_minus_sqrt(dot3(cand.c, p.c), dot3(cand.c, cand.c));
            if (s >= 0) {
                pole_covered = true;
                break;
            }
        }
        if (!pole_covered) {
            stats.pole_accepts++;
            return false;
        }
    }

    // exact min-norm point of
    //   P = {<x,c> >= 1} cap {<x,n_r> >= 0} cap_i {<x,P_i> <= 1}
    stats.qp_runs++;
    const int nreg = (int)region.size();
    // constraint ids: -1 candidate, 0..nreg-1 regions, nreg.. accepted
    auto normal = [&](int idx) -> const std::array<QuadExt, 3> & {
        if (idx < 0) return cand.c;
        if (idx < nreg) return region[idx];
        return accepted[rel[idx - nreg]].c;
    };
    auto rhs_of = [&](int idx) { return idx < 0 ? one : (idx < nreg ? zero : one); };
    auto is_ge = [&](int idx) { return idx < nreg; }; // candidate and regions are >=
    int nall = nreg + (int)rel.size();
    std::vector<std::vector<int>> subsets;
    subsets.push_back({});
    for (int i = 0; i < nall; i++) subsets.push_back({i});
    if (dim >= 3)
        for (int i = 0; i < nall; i++)
            for (int j = i + 1; j < nall; j++) subsets.push_back({i, j});

    bool have_opt = false;
    std::array<QuadExt, 3> xstar{zero, zero, zero};
    QuadExt q2 = one;
    for (const auto &sub : subsets) {
        std::vector<int> act;
        act.push_back(-1); // the candidate constraint is always active
        for (int i : sub) act.push_back(i);
        size_t k = act.size();
        std::vector<std::vector<QuadExt>> G(k, std::vector<QuadExt>(k, zero));
        for (size_t r = 0; r < k; r++)
            for (size_t cidx = 0; cidx < k; cidx++)
                G[r][cidx] = dot3(normal(act[r]), normal(act[cidx]));
        std::vector<QuadExt> mu, rhs(k, one);
        for (size_t r = 0; r < k; r++) rhs[r] = rhs_of(act[r]);
        if (!solve_exact(G, rhs, mu)) continue;
        bool bad = false;
        for (size_t j = 0; j < k; j++) {
            int want = is_ge(act[j]) ? 1 : -1; // multiplier sign per constraint type
            int sg = mu[j].sign();
            if (sg != 0 && sg != want) bad = true;
        }
        if (bad) continue;
        std::array<QuadExt, 3> x{zero, zero, zero};
        for (size_t j = 0; j < k; j++)
            for (int t = 0; t < 3; t++) x[t] = x[t] + normal(act[j])[t] * mu[j];
        bool feas = true;
        for (int i = 0; i < nall && feas; i++) {
            if (std::find(sub.begin(), sub.end(), i) != sub.end()) continue;
            int sg = (dot3(x, normal(i)) - rhs_of(i)).sign();
            if (is_ge(i) ? sg < 0 : sg > 0) feas = false;
        }
        if (!feas) continue;
        have_opt = true;
        xstar = x;
        q2 = zero;
        for (size_t j = 0; j < k; j++) q2 = q2 + mu[j] * rhs[j];
        break;
    }
    if (!have_opt) return true; // feasible set empty

    int cmp1 = (q2 - one).sign();
    if (cmp1 > 0) return true;  // nearest point already outside the closed ball
    if (cmp1 == 0) return true; // a single ideal point is never an open overlap

    std::vector<int> act_at; // accepted or region constraints active at x*
    for (int i = 0; i < nall; i++)
        if ((dot3(xstar, normal(i)) - rhs_of(i)).sign() == 0) act_at.push_back(i);
    if (act_at.empty()) return false; // strict interior witness

    // x* sits on boundaries; look for a strict witness nearby
    for (long t : {0L, 1L, 2L, 4L, 8L}) {
        std::array<QuadExt, 3> d{zero, zero, zero};
        for (int i : act_at) {
            Rat sgn = is_ge(i) ? Rat(1) : Rat(-1); // step into the feasible side
            for (int c3 = 0; c3 < 3; c3++) d[c3] = d[c3] + normal(i)[c3] * sgn;
        }
        for (int c3 = 0; c3 < 3; c3++) d[c3] = d[c3] + cand.c[c3] * Rat(t);
        bool ok = true;
        for (int i : act_at) {
            int sg = dot3(d, normal(i)).sign();
            if (is_ge(i) ? sg <= 0 : sg >= 0) ok = false;
        }
        if ((dot3(xstar, cand.c) - one).sign() == 0 && dot3(d, cand.c).sign() < 0) ok = false;
        if (!ok) continue;
        Rat eps(1, 1024);
        for (int tries = 0; tries < 40; tries++) {
            std::array<QuadExt, 3> xp{xstar[0] + d[0] * eps, xstar[1] + d[1] * eps,
                                      xstar[2] + d[2] * eps};
            bool good = (dot3(xp, cand.c) - one).sign() >= 0 && (dot3(xp, xp) - one).sign() < 0;
            for (int i = 0; i < nall && good; i++) {
                int sg = (dot3(xp, normal(i)) - rhs_of(i)).sign();
                if (is_ge(i) ? sg <= 0 : sg >= 0) good = false;
            }
            if (good) return false;
            eps /= 4;
        }
    }
    stats.degenerate++;
    return true;
}

// --- coverage ----------------------------------------------------------------

Coverage::Coverage(TargetKind kind, int dim, long fu, long fv)
    : kind_(kind), dim_(dim), fu_(fu), fv_(fv) {}

void Coverage::add_initial_cell(std::vector<ExactPoint> corners) {
    CoverCell cell;
    cell.corners = std::move(corners);
    cell.depth = 0;
    fill_doubles(cell);
    residual_.push_back(std::move(cell));
    initialized_ = true;
}

void Coverage::set_polygon(const std::vector<std::array<QuadExt, 2>> &poly) { polygon_ = poly; }

void Coverage::add_cap(const Cap &cap, const Footprint *foot) {
    caps_.push_back(cap);
    if (foot) {
        feet_.push_back(*foot);
        feet_.back().cap_index = (int)caps_.size() - 1;
    }
    detect_tangencies(caps_.size() - 1);
}

void Coverage::fill_doubles(CoverCell &cell) const {
    cell.cd.clear();
    for (const auto &p : cell.corners) {
        std::array<double, 3> d{p[0].to_double(), p[1].to_double(), p[2].to_double()};
        if (kind_ == TargetKind::SpherePatch || kind_ == TargetKind::CircleArc) {
            double n = std::sqrt(dot3d(d, d));
            for (auto &x : d) x /= n;
        }
        cell.cd.push_back(d);
    }
}

double Coverage::cell_diam(const CoverCell &cell) const {
    double m = 0;
    for (size_t i = 0; i < cell.cd.size(); i++)
        for (size_t j = i + 1; j < cell.cd.size(); j++) {
            double dx = cell.cd[i][0] - cell.cd[j][0];
            double dy = cell.cd[i][1] - cell.cd[j][1];
            double dz = cell.cd[i][2] - cell.cd[j][2];
            m = std::max(m, std::sqrt(dx * dx + dy * dy + dz * dz));
        }
    // geodesic arcs bulge past the chord hull
    return m * 1.6 + 1e-12;
}

bool Coverage::cell_covered(const CoverCell &cell) const {
    double diam = cell_diam(cell);
    if (kind_ == TargetKind::SpherePatch || kind_ == TargetKind::CircleArc) {
        for (const auto &cap : caps_) {
            double lim = 1.0 + diam * cap.cnorm + kBand * (1 + cap.cnorm);
            bool ok = true;
            for (const auto &ud : cell.cd)
                if (dot3d(ud, cap.cd) < lim) {
                    ok = false;
                    break;
                }
            if (ok) return true;
        }
        return false;
    }
    // flat cells and convex footprints: corner membership is exact
    for (const auto &f : feet_) {
        bool ok = true;
        for (size_t ci = 0; ci < cell.cd.size() && ok; ci++) {
            const auto &zd = cell.cd[ci];
            if (f.is_plane) {
                double vv = f.px * f.px + f.py * f.py;
                double lin = f.px * zd[0] + f.py * zd[1] + vv / 2;
                if (lin < -kBand * (1 + vv)) continue;
                if (lin > kBand * (1 + vv)) {
                    ok = false;
                    continue;
                }
                const auto &p = cell.corners[ci];
                QuadExt line = f.v.re * p[0] + f.v.im * p[1] + f.v.abs_sq() * rat_of(1, 2);
                if (line.sign() > 0) ok = false;
            } else {
                double dx = zd[0] - f.px, dy = zd[1] - f.py;
                double dd = std::sqrt(dx * dx + dy * dy);
                if (dd < f.rdbl - kBand * (1 + f.rdbl)) continue;
                if (dd > f.rdbl + kBand * (1 + f.rdbl)) {
                    ok = false;
                    continue;
                }
                const auto &p = cell.corners[ci];
                QuadExt ex = p[0] - f.v.re, ey = p[1] - f.v.im;
                if ((ex * ex + ey * ey - f.r2).sign() > 0) ok = false;
            }
        }
        if (ok) return true;
    }
    if (unit_disk_cap_) {
        bool ok = true;
        for (size_t ci = 0; ci < cell.cd.size() && ok; ci++) {
            const auto &zd = cell.cd[ci];
            double dd = std::sqrt(zd[0] * zd[0] + zd[1] * zd[1]);
            if (dd < 1.0 - kBand) continue;
            if (dd > 1.0 + kBand) {
                ok = false;
                continue;
            }
            const auto &p = cell.corners[ci];
            QuadExt n2 = p[0] * p[0] + p[1] * p[1];
            if ((n2 - QuadExt::rational(Rat(1), fu_, fv_)).sign() > 0) ok = false;
        }
        if (ok) return true;
    }
    return false;
}

bool Coverage::cell_outside_polygon(const CoverCell &cell) const {
    if (polygon_.empty()) return false;
    if (kind_ == TargetKind::SegmentCell) {
        const QuadExt &lo = polygon_[0][0], &hi = polygon_[1][0];
        bool all_lo = true, all_hi = true;
        for (const auto &p : cell.corners) {
            if ((p[0] - lo).sign() >= 0) all_lo = false;
            if ((p[0] - hi).sign() <= 0) all_hi = false;
        }
        return all_lo || all_hi;
    }
    size_t n = polygon_.size();
    for (size_t e = 0; e < n; e++) {
        const auto &A = polygon_[e];
        const auto &B = polygon_[(e + 1) % n];
        QuadExt ex = B[0] - A[0], ey = B[1] - A[1];
        bool all_out = true;
        for (const auto &p : cell.corners) {
            QuadExt cr = ex * (p[1] - A[1]) - ey * (p[0] - A[0]);
            if (cr.sign() >= 0) { // inside or on this edge line
                all_out = false;
                break;
            }
        }
        if (all_out) return true;
    }
    return false;
}

bool Coverage::cell_near_cusp(const CoverCell &cell) const {
    if (cusp_points_.empty()) return false;
    double diam = cell_diam(cell);
    for (const auto &t : cusp_points_) {
        bool all = true;
        for (const auto &pd : cell.cd) {
            double d;
            if (kind_ == TargetKind::SpherePatch || kind_ == TargetKind::CircleArc) {
                double dx = pd[0] - t.ball[0], dy = pd[1] - t.ball[1], dz = pd[2] - t.ball[2];
                d = std::sqrt(dx * dx + dy * dy + dz * dz);
            } else {
                double dx = pd[0] - t.ux, dy = pd[1] - t.uy;
                d = std::sqrt(dx * dx + dy * dy);
            }
            if (d > eps_cusp_ + diam) {
                all = false;
                break;
            }
        }
        if (all) return true;
    }
    return false;
}

bool Coverage::point_in_target(const ExactPoint &p) const {
    if (polygon_.empty()) return true;
    if (kind_ == TargetKind::SegmentCell) {
        return (p[0] - polygon_[0][0]).sign() >= 0 && (p[0] - polygon_[1][0]).sign() <= 0;
    }
    size_t n = polygon_.size();
    for (size_t e = 0; e < n; e++) {
        const auto &A = polygon_[e];
        const auto &B = polygon_[(e + 1) % n];
        QuadExt ex = B[0] - A[0], ey = B[1] - A[1];
        QuadExt cr = ex * (p[1] - A[1]) - ey * (p[0] - A[0]);
        if (cr.sign() < 0) return false;
    }
    return true;
}

bool Coverage::point_outside_all_closed(const ExactPoint &p) const {
    std::array<double, 3> pd{p[0].to_double(), p[1].to_double(), p[2].to_double()};
    if (kind_ == TargetKind::SpherePatch || kind_ == TargetKind::CircleArc) {
        double n = std::sqrt(dot3d(pd, pd));
        QuadExt n2;
        bool n2_ready = false;
        for (const auto &cap : caps_) {
            double dots = dot3d(pd, cap.cd) / n;
            if (dots < 1.0 - kBand) continue; // certainly outside this cap
            if (!n2_ready) {
                n2 = dot3(p, p);
                n2_ready = true;
            }
            if (sign_minus_sqrt(dot3(p, cap.c), n2) >= 0) return false;
        }
        return true;
    }
    for (const auto &f : feet_) {
        if (f.is_plane) {
            double vv = f.px * f.px + f.py * f.py;
            double lin = f.px * pd[0] + f.py * pd[1] + vv / 2;
            if (lin < -kBand * (1 + vv)) continue;
            QuadExt line = f.v.re * p[0] + f.v.im * p[1] + f.v.abs_sq() * rat_of(1, 2);
            if (line.sign() <= 0) return false;
        } else {
            double dx = pd[0] - f.px, dy = pd[1] - f.py;
            if (std::sqrt(dx * dx + dy * dy) > f.rdbl + kBand * (1 + f.rdbl)) continue;
            QuadExt ex = p[0] - f.v.re, ey = p[1] - f.v.im;
            if ((ex * ex + ey * ey - f.r2).sign() <= 0) return false;
        }
    }
    if (unit_disk_cap_) {
        QuadExt n2 = p[0] * p[0] + p[1] * p[1];
        if ((n2 - QuadExt::rational(Rat(1), fu_, fv_)).sign() <= 0) return false;
    }
    return true;
}

void Coverage::subdivide(const CoverCell &cell, std::vector<CoverCell> &out) const {
    bool round = kind_ == TargetKind::SpherePatch || kind_ == TargetKind::CircleArc;
    auto mid = [&](const ExactPoint &a, const ExactPoint &b) {
        if (!round)
            return ExactPoint{(a[0] + b[0]) * rat_of(1, 2), (a[1] + b[1]) * rat_of(1, 2),
                              (a[2] + b[2]) * rat_of(1, 2)};
        // direction vectors: a + b bisects the angle only for equal norms, so
        // scale a by a rational approximation of ||b||/||a|| first
        auto norm = [](const ExactPoint &p) {
            double x = p[0].to_double(), y = p[1].to_double(), z = p[2].to_double();
            return std::sqrt(x * x + y * y + z * z);
        };
        double f = norm(b) / norm(a);
        Rat q(std::lround(f * 1048576.0), 1048576);
        q.canonicalize();
        return ExactPoint{a[0] * q + b[0], a[1] * q + b[1], a[2] * q + b[2]};
    };
    if (cell.corners.size() == 2) {
        ExactPoint m = mid(cell.corners[0], cell.corners[1]);
        for (int half = 0; half < 2; half++) {
            CoverCell ch;
            ch.depth = cell.depth + 1;
            ch.corners = {half == 0 ? cell.corners[0] : m, half == 0 ? m : cell.corners[1]};
            fill_doubles(ch);
            out.push_back(std::move(ch));
        }
        return;
    }
    const auto &A = cell.corners[0], &B = cell.corners[1], &C = cell.corners[2];
    ExactPoint ab = mid(A, B), bc = mid(B, C), ca = mid(C, A);
    std::vector<std::vector<ExactPoint>> tris = {{A, ab, ca}, {ab, B, bc}, {ca, bc, C}, {ab, bc, ca}};
    for (auto &t : tris) {
        CoverCell ch;
        ch.depth = cell.depth + 1;
        ch.corners = std::move(t);
        fill_doubles(ch);
        out.push_back(std::move(ch));
    }
}

bool Coverage::update() {
    std::vector<CoverCell> queue = std::move(residual_);
    residual_.clear();
    witness_.reset();
    while (!queue.empty()) {
        CoverCell cell = std::move(queue.back());
        queue.pop_back();
        cells_processed_++;
        if (cell_outside_polygon(cell)) continue;
        if (cell_covered(cell)) continue;
        bool held = false;
        for (const auto &corner : cell.corners) {
            if (point_in_target(corner) && point_outside_all_closed(corner)) {
                if (!witness_) witness_ = corner;
                cell.witness_checked = true;
                residual_.push_back(std::move(cell));
                held = true;
                break;
            }
        }
        if (held) continue;
        if (cell.depth >= max_depth_) {
            if (cell_near_cusp(cell)) continue; // excised
            cell.witness_checked = false;
            residual_.push_back(std::move(cell));
            continue;
        }
        std::vector<CoverCell> children;
        subdivide(cell, children);
        for (auto &ch : children) queue.push_back(std::move(ch));
    }
    return residual_.empty();
}

void Coverage::detect_tangencies(size_t first_new_cap) {
    const QuadExt one = QuadExt::rational(Rat(1), fu_, fv_);
    auto push_point = [&](const std::array<QuadExt, 3> &x, int a, int b) {
        TangencyPoint t;
        t.cap_a = a;
        t.cap_b = b;
        for (int c3 = 0; c3 < 3; c3++) t.ball[c3] = x[c3].to_double();
        for (const auto &old : cusp_points_) {
            double dx = old.ball[0] - t.ball[0], dy = old.ball[1] - t.ball[1],
                   dz = old.ball[2] - t.ball[2];
            if (dx * dx + dy * dy + dz * dz < 1e-18) return;
        }
        double den = 1.0 - t.ball[2];
        if (std::abs(den) > 1e-12) {
            t.ux = t.ball[0] / den;
            t.uy = t.ball[1] / den;
        } else {
            t.ux = t.uy = std::numeric_limits<double>::infinity();
        }
        cusp_points_.push_back(t);
    };
    // ideal vertices where three walls meet exactly on the sphere
    if (dim_ == 3 && caps_.size() >= 3) {
        for (size_t k = std::max(first_new_cap, (size_t)2); k < caps_.size(); k++) {
            for (size_t i = 0; i < k; i++) {
                for (size_t j = i + 1; j < k; j++) {
                    const Cap &A = caps_[i], &B = caps_[j], &C = caps_[k];
                    // numeric solve of the 3x3 system <x, P> = 1
                    double M[3][3] = {{A.cd[0], A.cd[1], A.cd[2]},
                                      {B.cd[0], B.cd[1], B.cd[2]},
                                      {C.cd[0], C.cd[1], C.cd[2]}};
                    double det = M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
                                 M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
                                 M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
                    if (std::abs(det) < 1e-10) continue;
                    double xd[3];
                    for (int col = 0; col < 3; col++) {
                        double N[3][3];
                        for (int rr = 0; rr < 3; rr++)
                            for (int cc = 0; cc < 3; cc++) N[rr][cc] = (cc == col) ? 1.0 : M[rr][cc];
                        double dc = N[0][0] * (N[1][1] * N[2][2] - N[1][2] * N[2][1]) -
                                    N[0][1] * (N[1][0] * N[2][2] - N[1][2] * N[2][0]) +
                                    N[0][2] * (N[1][0] * N[2][1] - N[1][1] * N[2][0]);
                        xd[col] = dc / det;
                    }
                    double n2 = xd[0] * xd[0] + xd[1] * xd[1] + xd[2] * xd[2];
                    if (std::abs(n2 - 1.0) > 1e-7) continue;
                    // exact confirmation
                    std::vector<std::vector<QuadExt>> G = {
                        {A.c[0], A.c[1], A.c[2]}, {B.c[0], B.c[1], B.c[2]}, {C.c[0], C.c[1], C.c[2]}};
                    std::vector<QuadExt> mu, rhs(3, one);
                    if (!solve_exact(G, rhs, mu)) continue;
                    std::array<QuadExt, 3> x{mu[0], mu[1], mu[2]};
                    // solve_exact returned the solution of G mu = rhs where G
                    // rows are the normals, so mu IS the point x
                    QuadExt n2e = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
                    if (!((n2e - one).is_zero())) continue;
                    push_point(x, (int)i, (int)k);
                }
            }
        }
    }
    for (size_t j = first_new_cap; j < caps_.size(); j++) {
        for (size_t i = 0; i < j; i++) {
            const Cap &A = caps_[i], &B = caps_[j];
            double g11 = dot3d(A.cd, A.cd), g22 = dot3d(B.cd, B.cd), g12 = dot3d(A.cd, B.cd);
            double det = g11 * g22 - g12 * g12;
            if (std::abs(det) < 1e-12) continue;
            double m1 = (g22 - g12) / det, m2 = (g11 - g12) / det;
            if (std::abs(m1 + m2 - 1.0) > 1e-7) continue;
            QuadExt G11 = dot3(A.c, A.c), G22 = dot3(B.c, B.c), G12 = dot3(A.c, B.c);
            QuadExt Det = G11 * G22 - G12 * G12;
            if (Det.is_zero()) continue;
            QuadExt M1 = (G22 - G12) / Det, M2 = (G11 - G12) / Det;
            if (!((M1 + M2 - one).is_zero())) continue;
            std::array<QuadExt, 3> x{A.c[0] * M1 + B.c[0] * M2, A.c[1] * M1 + B.c[1] * M2,
                                     A.c[2] * M1 + B.c[2] * M2};
            push_point(x, (int)i, (int)j);
        }
    }
}

Footprint footprint_of(const MoebiusMatrix &m, int cap_index, long, long) {
    UpperWall w = wall_upper(m);
    Footprint f;
    f.cap_index = cap_index;
    f.is_plane = w.is_plane;
    f.v = w.center_or_v;
    f.px = w.center_or_v.re.to_double();
    f.py = w.center_or_v.im.to_double();
    if (!w.is_plane) {
        f.r2 = w.r2;
        f.rdbl = std::sqrt(w.r2.to_double());
    }
    return f;
}

} // namespace fundom
