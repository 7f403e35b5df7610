#include "fundom/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <sstream>

namespace fundom {

namespace {

QuadExt dot3(const std::array<QuadExt, 3> &a, const std::array<QuadExt, 3> &b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

ExactPoint pt(long a, long b, long c, long u, long v) {
    return {QuadExt::rational(Rat(a), u, v), QuadExt::rational(Rat(b), u, v),
            QuadExt::rational(Rat(c), u, v)};
}

} // namespace

bool Engine::WallKey::operator<(const WallKey &o) const {
    int c0 = cmp(r2, o.r2);
    if (c0 != 0) return c0 < 0;
    for (int i = 0; i < 3; i++) {
        int ci = QuadExt::key_compare(c[i], o.c[i]);
        if (ci != 0) return ci < 0;
    }
    return false;
}

Engine::WallKey Engine::key_of(const BallWall &w) { return WallKey{w.r2, w.center}; }

Engine::Engine(Family fam, RunOptions opt) : fam_(std::move(fam)), opt_(opt) {
    const long u = fam_.field_u(), v = fam_.field_v();
    auto axis = [&](long a, long b, long c) {
        return std::array<QuadExt, 3>{QuadExt::rational(Rat(a), u, v),
                                      QuadExt::rational(Rat(b), u, v),
                                      QuadExt::rational(Rat(c), u, v)};
    };
    // the stabilizer fundamental cone (plus the symmetry-reduced patch when
    // enabled), as Klein half-spaces through the origin
    switch (fam_.kind()) {
    case FamilyKind::QuatImquad:
        region_.push_back(axis(0, 1, 0));  // u2 >= 0
        region_.push_back(axis(0, 0, -1)); // u3 <= 0
        break;
    case FamilyKind::Bianchi:
        region_.push_back(axis(0, 0, 1)); // |z| >= 1 upstairs
        if (fam_.param_d() == 1) region_.push_back(axis(0, 1, 0));
        if (fam_.param_d() == 3) {
            region_.push_back(axis(0, 1, 0));
            // the order-3 rotation wedge: u1 + sqrt(3) u2 >= 0
            region_.push_back({QuadExt::rational(Rat(1), u, v),
                               QuadExt::root_term(Rat(1), 3, u, v),
                               QuadExt::rational(Rat(0), u, v)});
        }
        break;
    default: break;
    }
}

void Engine::add_wall(const GroupElement &g, const Int &shell, Coverage &cov) {
    const bool planar = (fam_.kind() == FamilyKind::Bianchi || fam_.kind() == FamilyKind::Cong);
    AcceptedWall aw;
    aw.g = g;
    aw.shell = shell;
    MoebiusMatrix m = fam_.embed(g);
    aw.ball = wall_ball(m);
    aw.upper = wall_upper(m);
    Cap cap = Cap::from_wall(aw.ball, (int)walls_.size());
    wall_index_[key_of(aw.ball)] = (int)walls_.size();
    walls_.push_back(aw);
    caps_.push_back(cap);
    if (planar) {
        Footprint f = footprint_of(m, (int)caps_.size() - 1, fam_.field_u(), fam_.field_v());
        cov.add_cap(cap, &f);
    } else {
        cov.add_cap(cap);
    }
}

void Engine::seed_translations(Coverage &cov) {
    if (fam_.cocompact()) return;
    CuspData cd = fam_.cusp_data();
    auto orbit = expand_orbit(fam_, cd.translations, true);
    std::sort(orbit.begin(), orbit.end(), [&](const GroupElement &a, const GroupElement &b) {
        if (a.norm2 != b.norm2) return a.norm2 < b.norm2;
        return lex_compare(a, b) < 0;
    });
    for (const auto &g : orbit) {
        BallWall w = wall_ball(fam_.embed(g));
        if (wall_index_.count(key_of(w))) continue;
        Int shell = fam_.shell_for_norm_bound(Rat(g.norm2));
        add_wall(g, shell, cov);
    }
}

void Engine::build_target(const Family &fam_, const RunOptions &opt_, Coverage &cov) {
    const long u = fam_.field_u(), v = fam_.field_v();
    cov.set_limits(opt_.max_depth, opt_.eps_cusp);
    switch (fam_.kind()) {
    case FamilyKind::QuatImquad: {
        // stabilizer region patch {u2 >= 0, u3 <= 0}; symmetry halves it
        cov.add_initial_cell({pt(1, 0, 0, u, v), pt(0, 1, 0, u, v), pt(0, 0, -1, u, v)});
        if (!opt_.sym_reduce)
            cov.add_initial_cell({pt(-1, 0, 0, u, v), pt(0, 1, 0, u, v), pt(0, 0, -1, u, v)});
        return;
    }
    case FamilyKind::QuatGauss: {
        cov.add_initial_cell({pt(1, 0, 0, u, v), pt(0, 1, 0, u, v), pt(0, 0, 1, u, v)});
        if (!opt_.sym_reduce) {
            for (int sx = -1; sx <= 1; sx += 2)
                for (int sy = -1; sy <= 1; sy += 2)
                    for (int sz = -1; sz <= 1; sz += 2) {
                        if (sx == 1 && sy == 1 && sz == 1) continue;
                        cov.add_initial_cell(
                            {pt(sx, 0, 0, u, v), pt(0, sy, 0, u, v), pt(0, 0, sz, u, v)});
                    }
        }
        return;
    }
    case FamilyKind::QuatRat: {
        cov.add_initial_cell({pt(1, 0, 0, u, v), pt(0, 0, 1, u, v)});
        if (!opt_.sym_reduce) {
            cov.add_initial_cell({pt(0, 0, 1, u, v), pt(-1, 0, 0, u, v)});
            cov.add_initial_cell({pt(-1, 0, 0, u, v), pt(0, 0, -1, u, v)});
            cov.add_initial_cell({pt(0, 0, -1, u, v), pt(1, 0, 0, u, v)});
        }
        return;
    }
    case FamilyKind::Bianchi:
    case FamilyKind::Cong: {
        CuspData cd = fam_.cusp_data();
        if (fam_.dimension() == 2) {
            cov.set_polygon(cd.cell);
            cov.add_initial_cell({ExactPoint{cd.cell[0][0], QuadExt::rational(Rat(0), u, v),
                                             QuadExt::rational(Rat(0), u, v)},
                                  ExactPoint{cd.cell[1][0], QuadExt::rational(Rat(0), u, v),
                                             QuadExt::rational(Rat(0), u, v)}});
            return;
        }
        cov.set_polygon(cd.cell);
        // two triangles over the bounding box of the cell polygon
        QuadExt xmin = cd.cell[0][0], xmax = xmin, ymin = cd.cell[0][1], ymax = ymin;
        for (const auto &p : cd.cell) {
            if ((p[0] - xmin).sign() < 0) xmin = p[0];
            if ((p[0] - xmax).sign() > 0) xmax = p[0];
            if ((p[1] - ymin).sign() < 0) ymin = p[1];
            if ((p[1] - ymax).sign() > 0) ymax = p[1];
        }
        QuadExt z = QuadExt::rational(Rat(0), u, v);
        cov.add_initial_cell({ExactPoint{xmin, ymin, z}, ExactPoint{xmax, ymin, z},
                              ExactPoint{xmax, ymax, z}});
        cov.add_initial_cell({ExactPoint{xmin, ymin, z}, ExactPoint{xmax, ymax, z},
                              ExactPoint{xmin, ymax, z}});
        if (fam_.kind() == FamilyKind::Bianchi) cov.enable_unit_disk_cap();
        return;
    }
    }
}

long Engine::process_shell(const Int &shell, Coverage &cov) {
    auto elems = fam_.enumerate_shell(shell);
    const bool planar = (fam_.kind() == FamilyKind::Bianchi || fam_.kind() == FamilyKind::Cong);
    // one wall per distinct bisector, keyed exactly; lexicographically smallest
    // coordinates win (stabilizer multiples share walls)
    std::map<WallKey, GroupElement> shell_walls;
    for (const auto &g : elems) {
        if (g.norm2 == 2) continue; // unitary: no bisector
        BallWall w = wall_ball(fam_.embed(g));
        WallKey k = key_of(w);
        auto it = shell_walls.find(k);
        if (it == shell_walls.end() || lex_compare(g, it->second) < 0) shell_walls[k] = g;
    }
    // candidates in deterministic element order
    std::vector<std::pair<GroupElement, WallKey>> cands;
    for (auto &kv : shell_walls) cands.push_back({kv.second, kv.first});
    std::sort(cands.begin(), cands.end(),
              [](const auto &a, const auto &b) { return lex_compare(a.first, b.first) < 0; });

    long accepted = 0;
    size_t prior = caps_.size(); // candidates are filtered against earlier shells only
    std::vector<Cap> prior_caps(caps_.begin(), caps_.begin() + prior);
    std::vector<std::pair<GroupElement, Cap>> keep;
    for (auto &[g, key] : cands) {
        if (wall_index_.count(key_of(wall_ball(fam_.embed(g))))) continue; // pre-seeded
        BallWall w = wall_ball(fam_.embed(g));
        Cap cap = Cap::from_wall(w, -1);
        if (cap_union_redundant(cap, prior_caps, fam_.dimension(), stats_, region_)) continue;
        keep.push_back({g, cap});
        accepted++;
    }
    for (auto &[g, cap] : keep) add_wall(g, shell, cov);
    (void)planar;
    return accepted;
}

void Engine::prune_transients() {
    // a wall accepted early can be absorbed, inside the target cone, by the
    // later ones; the domain's true sides are exactly the walls that are not
    // absorbed by the union of all the others, independent of any order. The
    // accepted list itself is kept (the published tables list accepted walls,
    // sides or not).
    for (size_t i = 0; i < walls_.size(); i++) {
        std::vector<Cap> others;
        others.reserve(caps_.size() - 1);
        for (size_t j = 0; j < caps_.size(); j++)
            if (j != i) others.push_back(caps_[j]);
        walls_[i].side =
            !cap_union_redundant(caps_[i], others, fam_.dimension(), stats_, region_);
    }
}

std::string Engine::orbit_canon(const GroupElement &g, bool with_inverses) const {
    // canonical name of the symmetry orbit: the smallest wall key over the
    // element closure (wall keys also identify stabilizer left-multiples)
    auto closure = expand_orbit(fam_, {g}, with_inverses);
    std::string best;
    for (const auto &h : closure) {
        BallWall w = wall_ball(fam_.embed(h));
        std::ostringstream os;
        os << w.r2.get_str() << "|";
        for (int i = 0; i < 3; i++)
            for (int k = 0; k < 4; k++) os << w.ball_coeff_str(i, k) << ",";
        std::string key = os.str();
        if (best.empty() || key < best) best = key;
    }
    return best;
}

void Engine::compute_orbits() {
    // orbits keyed by the canonical wall of the full symmetry closure, so
    // region filtering cannot fragment them
    orbit_of_.assign(walls_.size(), -1);
    std::map<std::string, int> orbit_ids;
    for (size_t i = 0; i < walls_.size(); i++) {
        std::string key = orbit_canon(walls_[i].g, false);
        auto it = orbit_ids.find(key);
        if (it == orbit_ids.end()) it = orbit_ids.emplace(key, (int)orbit_ids.size()).first;
        orbit_of_[i] = it->second;
        walls_[i].orbit = it->second;
    }
}

std::vector<GroupElement> Engine::expand_orbit(const Family &fam,
                                               const std::vector<GroupElement> &reps,
                                               bool with_inverses, bool with_stabilizer) {
    auto gens = fam.symmetry_generators();
    std::vector<GroupElement> stab;
    if (with_stabilizer)
        for (const auto &s : fam.stabilizer())
            if (!fam.is_identity_class(s)) stab.push_back(s);
    std::vector<GroupElement> out;
    std::set<std::string> seen;
    auto keystr = [](const GroupElement &g) {
        std::string s;
        for (int i = 0; i < 4; i++) s += g.x[i].get_str() + ",";
        for (int i = 0; i < 4; i++) s += g.y[i].get_str() + ",";
        return s;
    };
    std::vector<GroupElement> queue = reps;
    for (auto &g : queue) {
        GroupElement n = fam.normalized(g);
        if (seen.insert(keystr(n)).second) out.push_back(n);
    }
    size_t head = 0;
    std::vector<GroupElement> frontier = out;
    while (head < frontier.size()) {
        GroupElement g = frontier[head++];
        for (const auto &gen : gens) {
            GroupElement img = fam.normalized(fam.apply_symmetry(gen, g));
            if (seen.insert(keystr(img)).second) {
                out.push_back(img);
                frontier.push_back(img);
            }
        }
        if (with_inverses) {
            GroupElement inv = fam.normalized(fam.inverse(g));
            if (seen.insert(keystr(inv)).second) {
                out.push_back(inv);
                frontier.push_back(inv);
            }
        }
        for (const auto &s : stab) {
            for (GroupElement img : {fam.multiply(g, s), fam.multiply(s, g)}) {
                img = fam.normalized(img);
                if (seen.insert(keystr(img)).second) {
                    out.push_back(img);
                    frontier.push_back(img);
                }
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [](const GroupElement &a, const GroupElement &b) { return lex_compare(a, b) < 0; });
    return out;
}

void Engine::compute_vertices(RunResult &r) const {
    // Klein model: walls are the planes <x, c> = 1; stabilizer region planes
    // pass through the origin. Vertices are triple (pair in 2D) intersections
    // on the correct side of everything else.
    struct Plane {
        std::array<double, 3> n;
        double rhs;
        const std::array<QuadExt, 3> *ne = nullptr; // exact normal if a wall
    };
    std::vector<Plane> planes;
    for (size_t i = 0; i < caps_.size(); i++)
        if (walls_[i].side) planes.push_back({caps_[i].cd, 1.0, &caps_[i].c});
    size_t nwalls = planes.size();
    if (fam_.kind() == FamilyKind::QuatImquad) {
        planes.push_back({{0, 1, 0}, 0.0, nullptr});
        planes.push_back({{0, 0, 1}, 0.0, nullptr});
    }
    int need = fam_.dimension();
    std::vector<std::array<double, 3>> verts;
    double maxdist = 0;
    auto consider = [&](const std::array<double, 3> &x) {
        double n2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        if (n2 > 1.0 - 1e-12) return;
        for (size_t w = 0; w < nwalls; w++) {
            double d = x[0] * planes[w].n[0] + x[1] * planes[w].n[1] + x[2] * planes[w].n[2];
            if (d > 1.0 + 1e-9) return; // inside an open cap: not a vertex of F
        }
        if (fam_.kind() == FamilyKind::QuatImquad) {
            if (x[1] < -1e-9 || x[2] > 1e-9) return; // outside the stabilizer region
        }
        for (const auto &vv : verts) {
            double dx = vv[0] - x[0], dy = vv[1] - x[1], dz = vv[2] - x[2];
            if (dx * dx + dy * dy + dz * dz < 1e-18) return;
        }
        verts.push_back(x);
        double rk = std::sqrt(n2);
        maxdist = std::max(maxdist, std::atanh(rk));
    };

    size_t m = planes.size();
    if (need == 3) {
        for (size_t a = 0; a < m; a++)
            for (size_t b = a + 1; b < m; b++)
                for (size_t c = b + 1; c < m; c++) {
                    // solve the 3x3 linear system rows n_a, n_b, n_c
                    double M[3][3] = {{planes[a].n[0], planes[a].n[1], planes[a].n[2]},
                                      {planes[b].n[0], planes[b].n[1], planes[b].n[2]},
                                      {planes[c].n[0], planes[c].n[1], planes[c].n[2]}};
                    double rhs[3] = {planes[a].rhs, planes[b].rhs, planes[c].rhs};
                    double det = M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
                                 M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
                                 M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
                    if (std::abs(det) < 1e-12) continue;
                    std::array<double, 3> x{};
                    for (int col = 0; col < 3; col++) {
                        double N[3][3];
                        for (int i = 0; i < 3; i++)
                            for (int j = 0; j < 3; j++) N[i][j] = (j == col) ? rhs[i] : M[i][j];
                        double dc = N[0][0] * (N[1][1] * N[2][2] - N[1][2] * N[2][1]) -
                                    N[0][1] * (N[1][0] * N[2][2] - N[1][2] * N[2][0]) +
                                    N[0][2] * (N[1][0] * N[2][1] - N[1][1] * N[2][0]);
                        x[col] = dc / det;
                    }
                    consider(x);
                }
    } else {
        for (size_t a = 0; a < m; a++)
            for (size_t b = a + 1; b < m; b++) {
                double M[2][2] = {{planes[a].n[0], planes[a].n[2]}, {planes[b].n[0], planes[b].n[2]}};
                double rhs[2] = {planes[a].rhs, planes[b].rhs};
                double det = M[0][0] * M[1][1] - M[0][1] * M[1][0];
                if (std::abs(det) < 1e-12) continue;
                std::array<double, 3> x{};
                x[0] = (rhs[0] * M[1][1] - M[0][1] * rhs[1]) / det;
                x[2] = (M[0][0] * rhs[1] - rhs[0] * M[1][0]) / det;
                consider(x);
            }
    }
    r.vertices = verts;
    r.refine.max_vertex_dist = maxdist;
}

bool Engine::in_fundamental_region(const std::array<double, 3> &u) const {
    // Poincare-ball membership test, doubles only (volume diagnostics)
    if (fam_.kind() == FamilyKind::QuatImquad && (u[1] < 0 || u[2] > 0)) return false;
    for (size_t i = 0; i < caps_.size(); i++) {
        if (!walls_[i].side) continue;
        const auto &cap = caps_[i];
        double dx = u[0] - cap.cd[0], dy = u[1] - cap.cd[1], dz = u[2] - cap.cd[2];
        if (dx * dx + dy * dy + dz * dz < cap.rd * cap.rd) return false;
    }
    return true;
}

double Engine::monte_carlo_volume() const {
    // crude estimate of the hyperbolic volume (area in 2D) of the domain
    uint64_t state = 0x9e3779b97f4a7c15ULL;
    auto next = [&]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return (double)(state >> 11) / (double)(1ULL << 53);
    };
    const double rmax = 0.995;
    long hits = 0;
    double sum = 0;
    long n = opt_.volume_samples;
    int dim = fam_.dimension();
    for (long i = 0; i < n; i++) {
        std::array<double, 3> u{};
        double r2;
        do {
            u[0] = 2 * next() - 1;
            u[1] = dim == 3 ? 2 * next() - 1 : 0;
            u[2] = 2 * next() - 1;
            r2 = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
        } while (r2 > rmax * rmax);
        if (!in_fundamental_region(u)) continue;
        hits++;
        double w = 2.0 / (1.0 - r2);
        sum += dim == 3 ? w * w * w : w * w;
    }
    double cube = dim == 3 ? 8.0 : 4.0;
    double ball_frac = dim == 3 ? (4.0 / 3.0) * M_PI * std::pow(rmax, 3) / 8.0
                                : M_PI * rmax * rmax / 4.0;
    (void)ball_frac;
    return cube * sum / (double)n;
}

RunResult Engine::run() {
    auto t0 = std::chrono::steady_clock::now();
    RunResult r;
    r.family = fam_.name();
    r.options = opt_;
    r.symmetry_words = fam_.symmetry_generators();
    r.stabilizer = fam_.stabilizer();

    Coverage cov(fam_.kind() == FamilyKind::QuatRat ? TargetKind::CircleArc
                 : fam_.kind() == FamilyKind::QuatImquad || fam_.kind() == FamilyKind::QuatGauss
                     ? TargetKind::SpherePatch
                 : fam_.dimension() == 2 ? TargetKind::SegmentCell
                                         : TargetKind::PlanarCell,
                 fam_.dimension(), fam_.field_u(), fam_.field_v());
    build_target(fam_, opt_, cov);
    seed_translations(cov);

    long stop = -1;
    Int shell = fam_.min_shell();
    for (; shell <= opt_.shell_cap; ++shell) {
        process_shell(shell, cov);
        bool done = cov.update();
        if (done && stop < 0) stop = shell.get_si();
        if (stop >= 0 && shell >= std::max(stop, opt_.scan_floor)) break;
    }
    if (stop < 0)
        throw EngineGuard(fam_.name() + ": shell cap " + std::to_string(opt_.shell_cap) +
                          " reached without covering the target region");
    r.stop_shell = stop;
    r.stop_norm = fam_.shell_norm(Int(stop));
    r.covered = true;
    for (const auto &t : cov.cusp_points()) r.suspected_cusps.push_back(t.ball);
    r.residual_cells = (long)cov.residual().size();

    prune_transients();
    compute_orbits();
    // orbit representatives: lexicographically smallest element per orbit
    std::map<int, int> best;
    for (size_t i = 0; i < walls_.size(); i++) {
        auto it = best.find(walls_[i].orbit);
        if (it == best.end() || lex_compare(walls_[i].g, walls_[it->second].g) < 0)
            best[walls_[i].orbit] = (int)i;
    }
    for (auto &kv : best) r.reps.push_back(kv.second);
    std::sort(r.reps.begin(), r.reps.end(), [&](int a, int b) {
        if (walls_[a].shell != walls_[b].shell) return walls_[a].shell < walls_[b].shell;
        return lex_compare(walls_[a].g, walls_[b].g) < 0;
    });
    for (int rep : r.reps) r.rep_count_by_shell[walls_[rep].shell.get_si()]++;
    {
        std::map<std::string, long> pair_shell;
        for (int rep : r.reps) {
            std::string key = orbit_canon(walls_[rep].g, true);
            long sh = walls_[rep].shell.get_si();
            auto ins = pair_shell.emplace(key, sh);
            if (!ins.second) ins.first->second = std::min(ins.first->second, sh);
        }
        r.pair_classes = (long)pair_shell.size();
        for (auto &kv : pair_shell) r.pair_count_by_shell[kv.second]++;
    }

    // refined scan for the full-group certificate (cocompact families only)
    r.certification = "FINITE_INDEX";
    if (opt_.refine && fam_.cocompact()) {
        for (int round = 0; round < 4; round++) {
            compute_vertices(r);
            r.refine.attempted = true;
            // largest accepted norm so far governs k
            double rn = to_double(r.stop_norm);
            for (const auto &w : walls_) rn = std::max(rn, to_double(fam_.shell_norm(w.shell)));
            double k = std::acosh(rn / 2.0);
            double rr = std::max(k / 2.0, r.refine.max_vertex_dist);
            double ntilde = 2.0 * std::cosh(2.0 * rr);
            r.refine.k = k;
            r.refine.r = rr;
            r.refine.norm_bound = ntilde;
            Int scan_to = fam_.shell_for_norm_bound(Rat(ntilde)) + 1;
            r.refine.scan_to_shell = scan_to.get_si();
            long new_walls = 0;
            for (Int s = shell + 1; s <= scan_to; ++s) new_walls += process_shell(s, cov);
            if (new_walls == 0) {
                r.refine.certified = true;
                r.certification = "FULL_GROUP";
                break;
            }
            r.refine.new_walls += new_walls;
            shell = scan_to;
            prune_transients();
            compute_orbits();
        }
    } else {
        compute_vertices(r);
    }

    // final wall list and generators
    r.walls = walls_;
    std::vector<GroupElement> rep_elems;
    for (int rep : r.reps) rep_elems.push_back(walls_[rep].g);
    r.generators = expand_orbit(fam_, rep_elems);
    r.generators.insert(r.generators.end(), r.stabilizer.begin(), r.stabilizer.end());
    r.volume_estimate = monte_carlo_volume();
    r.degenerate_redundancy = stats_.degenerate;
    r.qp_runs = stats_.qp_runs;
    if (cov.witness())
        r.witness_note = "uncovered witness seen before the stop shell";
    auto t1 = std::chrono::steady_clock::now();
    r.timing_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    return r;
}

CoverageOutcome region_covered(const Family &fam, const std::vector<AcceptedWall> &walls,
                               double eps_cusp, int max_depth, bool sym_reduce) {
    RunOptions opt;
    opt.sym_reduce = sym_reduce;
    opt.eps_cusp = eps_cusp;
    opt.max_depth = max_depth;
    Coverage cov(fam.kind() == FamilyKind::QuatRat ? TargetKind::CircleArc
                 : fam.kind() == FamilyKind::QuatImquad || fam.kind() == FamilyKind::QuatGauss
                     ? TargetKind::SpherePatch
                 : fam.dimension() == 2 ? TargetKind::SegmentCell
                                        : TargetKind::PlanarCell,
                 fam.dimension(), fam.field_u(), fam.field_v());
    Engine::build_target(fam, opt, cov);
    const bool planar = (fam.kind() == FamilyKind::Bianchi || fam.kind() == FamilyKind::Cong);
    int idx = 0;
    for (const auto &w : walls) {
        Cap cap = Cap::from_wall(w.ball, idx);
        if (planar) {
            Footprint f = footprint_of(fam.embed(w.g), idx, fam.field_u(), fam.field_v());
            cov.add_cap(cap, &f);
        } else {
            cov.add_cap(cap);
        }
        idx++;
    }
    CoverageOutcome out;
    out.covered = cov.update();
    out.residual = (long)cov.residual().size();
    for (const auto &t : cov.cusp_points()) out.suspected_cusps.push_back(t.ball);
    return out;
}

} // namespace fundom
