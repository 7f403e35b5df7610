// Acceptance suite: one criterion per --criterion N (1..8), one pass/fail
// line each; run all with --all.
#include "fundom/engine.hpp"
#include "fundom/groupring.hpp"
#include "fundom/result.hpp"
#include "fundom/tables.hpp"
#include "support.hpp"

#include <chrono>
#include <random>
#include <cmath>
#include <cstring>
#include <iostream>
#include <map>
#include <set>

using namespace fundom;

namespace {

int g_failures = 0;

struct Criterion {
    std::string name;
    bool ok = true;
    std::vector<std::string> notes;
    void require(bool cond, const std::string &what) {
        if (!cond) {
            ok = false;
            notes.push_back("failed: " + what);
        }
    }
    void note(const std::string &s) { notes.push_back(s); }
    void finish(double seconds) {
        std::cout << (ok ? "PASS " : "FAIL ") << name << "  (" << (long)seconds << "s)\n";
        for (auto &n : notes) std::cout << "      " << n << "\n";
        if (!ok) g_failures++;
    }
};

std::string data_path(const std::string &f) { return std::string(FUNDOM_TEST_DATA_DIR) + "/" + f; }

std::string wall_key(const Family &fam, const GroupElement &g) {
    BallWall w = wall_ball(fam.embed(g));
    std::string k = w.r2.get_str() + "|";
    for (int i = 0; i < 3; i++)
        for (int j = 0; j < 4; j++) k += w.center[i].coeff(j).get_str() + ",";
    return k;
}

std::set<std::string> closure_walls(const Family &fam, const std::vector<GroupElement> &gens) {
    std::set<std::string> keys;
    for (const auto &g : Engine::expand_orbit(fam, gens, true, true))
        if (g.norm2 != 2) keys.insert(wall_key(fam, g));
    return keys;
}

std::vector<GroupElement> run_elements(const RunResult &r) {
    std::vector<GroupElement> v;
    for (const auto &w : r.walls) v.push_back(w.g);
    return v;
}

// compare the run's wall family with a published table, reporting invalid
// table entries instead of hiding them; `exact_set` additionally demands that
// the closures agree exactly (no extra classes on either side)
void compare_with_table(Criterion &c, const Family &fam, const RunResult &r,
                        const std::string &table_file, size_t expect_entries, size_t min_valid,
                        bool exact_set) {
    auto entries = parse_table_file(fam, data_path(table_file));
    c.require(entries.size() == expect_entries,
              table_file + ": expected " + std::to_string(expect_entries) + " entries");
    std::vector<GroupElement> valid;
    for (size_t i = 0; i < entries.size(); i++) {
        if (entries[i].valid) valid.push_back(entries[i].element);
        else
            c.note("table entry " + std::to_string(i + 1) + " invalid as printed (" +
                   entries[i].reason + "): " + entries[i].text);
    }
    c.require(valid.size() >= min_valid, table_file + ": at least " + std::to_string(min_valid) +
                                             " entries must satisfy the defining system");
    auto run_keys = closure_walls(fam, run_elements(r));
    size_t matched = 0;
    for (size_t i = 0; i < entries.size(); i++) {
        if (!entries[i].valid) continue;
        if (run_keys.count(wall_key(fam, entries[i].element))) matched++;
        else
            c.note("table entry " + std::to_string(i + 1) + " wall missing from the computed set");
    }
    c.require(matched == valid.size(), table_file + ": every valid entry's wall is reproduced (" +
                                           std::to_string(matched) + "/" +
                                           std::to_string(valid.size()) + ")");
    if (exact_set) {
        auto table_keys = closure_walls(fam, valid);
        c.require(run_keys == table_keys, table_file + ": computed wall set equals the table's");
    }
    c.note(table_file + ": " + std::to_string(valid.size()) + "/" + std::to_string(entries.size()) +
           " entries valid, " + std::to_string(matched) + " walls matched exactly");
}

long accepted_at_shell(const RunResult &r, long shell) {
    long n = 0;
    for (const auto &w : r.walls)
        if (w.shell == shell) n++;
    return n;
}

void criterion1(Criterion &c) {
    Family fam = Family::quat_imquad(15);
    RunOptions opt;
    opt.refine = true;
    Engine eng(fam, opt);
    RunResult r = eng.run();
    c.require(r.stop_shell == 4, "stop shell is 4");
    c.require(r.stop_norm == 122, "stop norm is 122");
    c.require(accepted_at_shell(r, 2) == 0 && accepted_at_shell(r, 3) == 0,
              "shells 2 and 3 contribute no walls");
    c.require(r.refine.attempted && r.refine.scan_to_shell == 26,
              "refined scan runs over shells 5..26");
    c.require(r.refine.new_walls == 0 && r.certification == "FULL_GROUP",
              "refined scan adds nothing: full-group certificate");
    // the published table: 9 entries, 5 at shell 1 and 4 at shell 4, all
    // meeting the quarter region, reproduced exactly
    auto entries = parse_table_file(fam, data_path("d15_generators.txt"));
    long s1 = 0, s4 = 0;
    for (auto &e : entries) {
        if (!e.valid) continue;
        long shell = Int((e.element.norm2 - 2) / 30).get_si();
        if (shell == 1) s1++;
        if (shell == 4) s4++;
    }
    c.require(s1 == 5 && s4 == 4, "table wall count 9 = 5 at shell 1 + 4 at shell 4");
    compare_with_table(c, fam, r, "d15_generators.txt", 9, 9, true);
    c.note("vertices: max distance " + std::to_string(r.refine.max_vertex_dist) +
           ", k = " + std::to_string(r.refine.k) + ", scan bound " +
           std::to_string(r.refine.norm_bound));
}

void criterion2(Criterion &c) {
    Family fam = Family::quat_imquad(23);
    RunOptions opt;
    Engine eng(fam, opt);
    RunResult r = eng.run();
    c.require(r.covered, "finite-index generator set computed");
    compare_with_table(c, fam, r, "d23_generators.txt", 20, 16, false);
}

void criterion3(Criterion &c, bool smoke) {
    Family fam = Family::quat_gauss(2, 5);
    RunOptions opt;
    if (smoke) {
        opt.shell_cap = 20;
        Engine eng(fam, opt);
        bool guarded = false;
        RunResult r;
        try {
            r = eng.run();
        } catch (const EngineGuard &) {
            guarded = true;
        }
        c.require(guarded, "shells <= 20 do not cover the sphere yet");
        // the engine state is not recoverable after the guard; re-run with a
        // floor to collect the early walls
        opt.shell_cap = 10000;
        opt.scan_floor = 0;
        // verify the first table entries' walls appear among shells <= 20
        auto entries = parse_table_file(fam, data_path("s25zi_generators.txt"));
        std::vector<GroupElement> early;
        for (auto &e : entries)
            if (e.valid && e.element.norm2 <= fam.shell_norm(Int(20))) early.push_back(e.element);
        c.require(!early.empty(), "table has entries in shells <= 20");
        // enumerate the shells directly and check each early wall is found
        std::set<std::string> keys;
        for (long s = 2; s <= 20; s++)
            for (const auto &g : fam.enumerate_shell(Int(s)))
                if (g.norm2 != 2) keys.insert(wall_key(fam, g));
        size_t hit = 0;
        for (auto &g : early) {
            auto closure = Engine::expand_orbit(fam, {g}, true, true);
            bool found = false;
            for (auto &h : closure)
                if (keys.count(wall_key(fam, h))) found = true;
            if (found) hit++;
        }
        c.require(hit == early.size(), "early table walls reproduced in shells <= 20");
        c.note("smoke variant: " + std::to_string(early.size()) + " early table entries checked");
        return;
    }
    Engine eng(fam, opt);
    RunResult r = eng.run();
    c.require(r.stop_shell == 102, "stop shell is 102");
    c.require(r.stop_norm == 406, "norm bound is 406");
    compare_with_table(c, fam, r, "s25zi_generators.txt", 19, 18, false);
}

void criterion4(Criterion &c) {
    Family fam = Family::quat_rat(2, 5);
    RunOptions opt;
    Engine eng(fam, opt);
    RunResult r = eng.run();
    for (long s = 2; s <= 8; s++)
        c.require(fam.enumerate_shell(Int(s)).empty(), "shell " + std::to_string(s) + " is empty");
    c.require(!fam.enumerate_shell(Int(9)).empty(), "shell 9 is nonempty");
    c.require(r.stop_shell == 46, "stop shell is 46");
    compare_with_table(c, fam, r, "s25z_generators.txt", 4, 4, true);
    // Y is exactly the four listed elements up to sign/stabilizer
    // normalization and side pairing: four closure classes
    std::set<std::string> classes;
    for (const auto &w : r.walls) {
        auto closure = Engine::expand_orbit(fam, {w.g}, true, true);
        std::string best;
        for (auto &h : closure) {
            std::string k = wall_key(fam, h);
            if (best.empty() || k < best) best = k;
        }
        classes.insert(best);
    }
    c.require(classes.size() == 4, "exactly four generator classes");
}

void criterion5(Criterion &c) {
    struct Case {
        long d;
        std::string file;
        size_t entries, min_valid;
    };
    for (Case cs : {Case{19, "bianchi19_generators.txt", 3, 3},
                    Case{23, "bianchi23_generators.txt", 4, 3},
                    Case{27, "bianchi27_generators.txt", 3, 3}}) {
        Family fam = Family::bianchi(cs.d);
        RunOptions opt;
        Engine eng(fam, opt);
        RunResult r = eng.run();
        compare_with_table(c, fam, r, cs.file, cs.entries, cs.min_valid, cs.d != 23);
        if (cs.d == 23) {
            // entry 3 prints determinant 9; the d-entry is forced to -2+w by
            // det = 1 with the other entries fixed
            auto entries = parse_table_file(fam, data_path(cs.file));
            std::vector<GroupElement> completed;
            for (auto &e : entries)
                if (e.valid) completed.push_back(e.element);
            completed.push_back(fam.make_element(IntVec4(-2, 3, -1, -2), IntVec4(1, 0, -1, 1)));
            c.require(closure_walls(fam, run_elements(r)) == closure_walls(fam, completed),
                      "d=23: computed wall set equals the table with the det-forced entry repaired");
            c.note("d=23: row 3 repaired by the unique unimodular diagonal (reported, not hidden)");
        }
        // cusp translations present among the generators
        auto keyg = [](const GroupElement &g) {
            std::string s;
            for (int i = 0; i < 4; i++) s += g.x[i].get_str() + ",";
            for (int i = 0; i < 4; i++) s += g.y[i].get_str() + ",";
            return s;
        };
        std::set<std::string> gen_keys;
        for (const auto &g : r.generators) gen_keys.insert(keyg(g));
        CuspData cd = fam.cusp_data();
        for (const auto &t : cd.translations)
            c.require(gen_keys.count(keyg(fam.normalized(t))) == 1,
                      "d=" + std::to_string(cs.d) + ": cusp translation listed");
        // hexagon cell vertices
        if (cs.d % 4 == 3 && cs.d > 3) {
            c.require(cd.cell.size() == 6, "d=" + std::to_string(cs.d) + ": hexagonal cusp cell");
            QuadExt want = QuadExt::root_term(make_rat(cs.d + 1, 4 * cs.d), cs.d, cs.d, 1);
            bool found = false;
            for (auto &v : cd.cell)
                if (v[0].is_zero() && v[1] == want) found = true;
            c.require(found, "d=" + std::to_string(cs.d) + ": hexagon vertex (d+1)sqrt(d)/(4d)");
        }
    }
}

void criterion6(Criterion &c) {
    Family fam = Family::cong(8, "Z");
    RunOptions opt;
    opt.scan_floor = 2304; // keep accepting up to the published bound
    Engine eng(fam, opt);
    RunResult r = eng.run();
    c.require(r.stop_shell <= 2304, "covering achieved using shells <= 2304 (stop " +
                                        r.stop_shell.get_str() + ")");
    compare_with_table(c, fam, r, "cong8z_generators.txt", 19, 19, false);
}

long closure_class_count(const Family &fam, const RunResult &r) {
    std::set<std::string> classes;
    for (const auto &w : r.walls) {
        auto closure = Engine::expand_orbit(fam, {w.g}, true, true);
        std::string best;
        for (auto &h : closure) {
            std::string k = wall_key(fam, h);
            if (best.empty() || k < best) best = k;
        }
        classes.insert(best);
    }
    return (long)classes.size();
}

void criterion7(Criterion &c) {
    {
        Family fam = Family::cong(2, "Zsqrt-2");
        Engine eng(fam, RunOptions{});
        RunResult r = eng.run();
        // three printed rows have a slipped diagonal entry; with the other
        // three entries and the congruence fixed, det = 1 forces the diagonal
        // uniquely, and the computed set must equal valid rows + corrections
        compare_with_table(c, fam, r, "cong2zsqrt2_generators.txt", 12, 9, false);
        std::vector<GroupElement> completed;
        auto entries = parse_table_file(fam, data_path("cong2zsqrt2_generators.txt"));
        for (auto &e : entries)
            if (e.valid) completed.push_back(e.element);
        completed.push_back(fam.make_element(IntVec4(0, 0, 0, 0), IntVec4(-1, 1, -1, 1)));
        completed.push_back(fam.make_element(IntVec4(-1, 1, 2, -1), IntVec4(1, 0, 0, -1)));
        completed.push_back(fam.make_element(IntVec4(-1, 2, 1, -1), IntVec4(1, 0, 0, -1)));
        c.require(closure_walls(fam, run_elements(r)) == closure_walls(fam, completed),
                  "computed wall set equals the table with the det-forced diagonals repaired");
        c.note("rows 6-8 repaired by the unique unimodular diagonal (reported, not hidden)");
    }
    {
        Family fam = Family::cong(2, "Zi");
        Engine eng(fam, RunOptions{});
        RunResult r = eng.run();
        compare_with_table(c, fam, r, "cong2zi_generators.txt", 6, 6, true);
    }
}

void criterion8(Criterion &c) {
    // property suites, all exact or within shadow error
    std::mt19937 rng(4242);

    // wall identities |A|^2 - |C|^2 = 1 and ||P||^2 - R^2 = 1, eta0
    // equivariance and ball/upper consistency on group elements
    {
        long checked = 0;
        std::vector<Family> fams = {Family::bianchi(19), Family::quat_gauss(2, 5),
                                    Family::cong(2, "Zi")};
        for (auto &fam : fams) {
            for (long s = fam.min_shell().get_si(); s <= 24 && checked < 1200; s++) {
                for (const auto &g : fam.enumerate_shell(Int(s))) {
                    if (g.norm2 == 2) continue;
                    MoebiusMatrix m = fam.embed(g);
                    auto pm = psi(m);
                    double n = to_double(g.norm2);
                    if (std::abs((pm.A.norm_sq() - pm.C.norm_sq()).to_double() - 1.0) >
                        1e-9 * (1 + n))
                        c.require(false, "|A|^2-|C|^2 = 1");
                    BallWall w = wall_ball(m);
                    QuadExt p2 = w.center[0] * w.center[0] + w.center[1] * w.center[1] +
                                 w.center[2] * w.center[2];
                    QuadExt want = QuadExt::rational(Rat(1) + w.r2, fam.field_u(), fam.field_v());
                    if (!(p2 == want)) c.require(false, "||P||^2 - R^2 = 1 exact");
                    if (std::abs(pm.A.norm_sq().to_double() - (2 + n) / 4) > 1e-9 * (1 + n))
                        c.require(false, "|A|^2 = (2+norm)/4");
                    // upper-boundary circle maps onto the ball ideal circle
                    UpperWall uw = wall_upper(m);
                    if (!uw.is_plane) {
                        double px = uw.center_or_v.re.to_double(), py = uw.center_or_v.im.to_double();
                        double R = std::sqrt(uw.r2.to_double());
                        for (int kk = 0; kk < 4; kk++) {
                            double th = kk * 1.5707963267948966 + 0.3;
                            auto u = eta0_boundary({px + R * std::cos(th), py + R * std::sin(th)});
                            double dot = u[0] * w.cd[0] + u[1] * w.cd[1] + u[2] * w.cd[2];
                            if (std::abs(dot - 1.0) > 1e-8) c.require(false, "ball/upper consistency");
                        }
                    }
                    checked++;
                    if (checked >= 1200) break;
                }
            }
        }
        c.require(checked >= 1000, "at least 1000 elements checked");
        c.note("wall identities checked on " + std::to_string(checked) + " elements");
    }

    // monotone rho on 1000 random norms
    {
        std::uniform_int_distribution<long> n(3, 1000000);
        for (int i = 0; i < 1000; i++) {
            long a = n(rng), b = n(rng);
            if (a == b) continue;
            if (a > b) std::swap(a, b);
            if (!(rho_gamma_from_norm(Rat(a)).to_double() > rho_gamma_from_norm(Rat(b)).to_double()))
                c.require(false, "rho strictly decreasing");
        }
        c.note("rho monotonicity checked on 1000 random pairs");
    }

    // enumeration equals grid brute force for every shell of norm <= 50 in
    // every family
    {
        struct Fam {
            Family f;
        };
        std::vector<Family> fams = {Family::quat_imquad(15), Family::quat_gauss(2, 5),
                                    Family::quat_rat(2, 5),  Family::bianchi(19),
                                    Family::bianchi(2),      Family::cong(8, "Z"),
                                    Family::cong(2, "Zi"),   Family::cong(2, "Zsqrt-2")};
        long total = 0;
        for (auto &f : fams) {
            for (long s = 0;; s++) {
                if (f.shell_norm(Int(s)) > 50) break;
                if (s < 0) break;
                auto fast = f.enumerate_shell(Int(s));
                auto slow = fundom_test::brute_force_shell(f, Int(s));
                bool same = fast.size() == slow.size() &&
                            std::equal(fast.begin(), fast.end(), slow.begin(), slow.end(),
                                       [](const GroupElement &a, const GroupElement &b) {
                                           return a == b;
                                       });
                if (!same)
                    c.require(false, f.name() + " shell " + std::to_string(s) +
                                         " differs from brute force");
                total += (long)fast.size();
            }
        }
        c.note("grid cross-check: " + std::to_string(total) + " elements across all families");
        c.require(Family::quat_rat(2, 5).enumerate_shell(Int(2)).empty() &&
                      !Family::quat_rat(2, 5).enumerate_shell(Int(9)).empty(),
                  "H(2,5,Z) shells empty until 9");
    }

    // local fundamental-domain test for H(2,5,Z)
    {
        Family fam = Family::quat_rat(2, 5);
        Engine eng(fam, RunOptions{});
        RunResult r = eng.run();
        auto inside = [&](double x, double z, double slack) {
            if (x * x + z * z >= 1) return false;
            for (const auto &w : r.walls) {
                if (!w.side) continue;
                double dx = x - w.ball.cd[0], dz = z - w.ball.cd[2];
                if (std::sqrt(dx * dx + dz * dz) < w.ball.rd + slack) return false;
            }
            return true;
        };
        std::vector<std::array<double, 2>> pts;
        std::uniform_real_distribution<double> U(-0.95, 0.95);
        while (pts.size() < 100) {
            double x = U(rng), z = U(rng);
            if (inside(x, z, 1e-3)) pts.push_back({x, z});
        }
        auto orbit = Engine::expand_orbit(fam, run_elements(r), true, true);
        long moved = 0, tested = 0;
        for (auto &p : pts) {
            QuatS u{Shadow(p[0]), Shadow(0.0), Shadow(p[1]), Shadow(0.0)};
            for (const auto &g : orbit) {
                if (fam.is_identity_class(g)) continue;
                QuatS img = sb2_apply(psi(fam.embed(g)), u);
                tested++;
                if (!inside(img.w.to_double(), img.y.to_double(), -1e-6)) moved++;
            }
        }
        c.require(moved == tested, "no translate of an interior point returns to the interior");
        c.note("local test: " + std::to_string(tested) + " translates of 100 interior points");
    }

    // group-ring suite
    {
        FiniteGroup q8c3 =
            FiniteGroup::direct_product(FiniteGroup::quaternion8(), FiniteGroup::cyclic(3));
        // augmentations and unit checks of Bass and bicyclic units
        long units = 0;
        for (int g = 0; g < q8c3.size() && units < 12; g++) {
            long o = q8c3.order_of(g);
            for (long i = 2; i < o && units < 12; i++) {
                if (std::gcd(i, o) != 1) continue;
                GroupRingElement b = bass_unit(q8c3, g, i);
                c.require(b.augmentation() == 1, "bass unit augmentation 1");
                c.require(unit_check(b), "bass unit passes the unit check");
                GroupRingElement bn = central_bass_power(q8c3, b);
                c.require(bn.is_central(), "central bass power commutes with the group");
                units++;
            }
        }
        auto [u, v] = bicyclic_units(q8c3, 4, 1);
        c.require(u.augmentation() == 1 && unit_check(u) && unit_check(v), "bicyclic units");

        // matrix-unit block: at least one admissible parameter set validates
        std::vector<int> N{q8c3.identity()};
        Q8CnBlock blk = q8cn_matrix_units(q8c3, N, 3, 1, 1);
        c.require(blk.valid, "matrix-unit block validates for (n=3, p=3, len=1, twist=1)");
        if (blk.valid) {
            c.require(blk.e * blk.e == blk.e && blk.e.is_central(), "e is a central idempotent");
            c.require((blk.E11 * blk.E22).is_zero() && blk.E11 + blk.E22 == blk.e,
                      "E11, E22 orthogonal idempotents summing to e");
            long made = 0;
            for (int g = 0; g < q8c3.size() && made < 4; g++) {
                GroupRingElement ug = q8cn_unit(q8c3, blk, g, N, true);
                if (ug == GroupRingElement::unit(&q8c3)) continue;
                made++;
                c.require(ug.is_integral() && ug.augmentation() == 1 && unit_check(ug),
                          "matrix-unit unit is an integral unit");
            }
            c.require(made > 0, "matrix-unit units constructed");
        }
        // the paper-literal product (twist 0) is rejected, not silently accepted
        for (long len = 1; len <= 4; len++)
            c.require(!q8cn_matrix_units(q8c3, N, 3, len, 0).valid,
                      "literal product length " + std::to_string(len) + " rejected");
        c.note("group-ring suite: bass/bicyclic/central powers/matrix units all exact");
    }
}

} // namespace

int main(int argc, char **argv) {
    int which = 0;
    bool all = false;
    for (int i = 1; i < argc; i++) {
        if (!std::strcmp(argv[i], "--criterion") && i + 1 < argc) which = std::atoi(argv[++i]);
        else if (!std::strcmp(argv[i], "--all")) all = true;
        else if (!std::strcmp(argv[i], "--smoke")) which = -3; // reduced variant of 3
    }
    auto run_one = [&](int n) {
        Criterion c;
        auto t0 = std::chrono::steady_clock::now();
        try {
            switch (n) {
            case 1: c.name = "criterion 1: quat_imquad(15) full-group run"; criterion1(c); break;
            case 2: c.name = "criterion 2: quat_imquad(23) finite-index run"; criterion2(c); break;
            case 3: c.name = "criterion 3: quat_gauss(2,5) stop shell 102"; criterion3(c, false); break;
            case -3: c.name = "criterion 3 (smoke): quat_gauss(2,5) shells <= 20"; criterion3(c, true); break;
            case 4: c.name = "criterion 4: quat_rat(2,5) stop shell 46"; criterion4(c); break;
            case 5: c.name = "criterion 5: bianchi(19/23/27) wall sets"; criterion5(c); break;
            case 6: c.name = "criterion 6: cong(8,Z) covering of [-4,4]"; criterion6(c); break;
            case 7: c.name = "criterion 7: cong(2,.) wall sets"; criterion7(c); break;
            case 8: c.name = "criterion 8: property suites"; criterion8(c); break;
            default: std::cerr << "unknown criterion " << n << "\n"; g_failures++; return;
            }
        } catch (const std::exception &ex) {
            c.require(false, std::string("exception: ") + ex.what());
        }
        auto t1 = std::chrono::steady_clock::now();
        c.finish(std::chrono::duration_cast<std::chrono::seconds>(t1 - t0).count());
    };
    if (all || which == 0) {
        for (int n : {1, 2, -3, 3, 4, 5, 6, 7, 8}) run_one(n);
    } else {
        run_one(which);
        if (which == 3) run_one(-3);
    }
    return g_failures == 0 ? 0 : 1;
}
