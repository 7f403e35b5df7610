#include "fundom/result.hpp"

#include "fundom/covering.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace fundom {

using json = nlohmann::ordered_json;

Family make_family(const RunConfig &cfg) {
    if (cfg.family == "quat_imquad") return Family::quat_imquad(cfg.d);
    if (cfg.family == "quat_gauss") return Family::quat_gauss(cfg.a, cfg.b);
    if (cfg.family == "quat_rat") return Family::quat_rat(cfg.a, cfg.b);
    if (cfg.family == "bianchi") return Family::bianchi(cfg.d);
    if (cfg.family == "cong") return Family::cong(cfg.n0, cfg.ring);
    throw FamilyError("unknown family tag '" + cfg.family + "'");
}

// --- config -------------------------------------------------------------------

namespace {
struct ConfigError : FamilyError {
    using FamilyError::FamilyError;
};

void config_fail(const std::string &origin, int line, int col, const std::string &msg) {
    throw FamilyError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
}
} // namespace

RunConfig parse_run_config_text(const std::string &text, const std::string &origin) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        size_t last = line.find_last_not_of(" \t\r");
        std::string body = line.substr(first, last - first + 1);
        if (body.front() == '[') {
            if (body.back() != ']') config_fail(origin, lineno, (int)last + 1, "expected ']'");
            section = body.substr(1, body.size() - 2);
            if (section != "family" && section != "run" && section != "output")
                config_fail(origin, lineno, (int)first + 2, "unknown section [" + section + "]");
            continue;
        }
        size_t eq = body.find('=');
        if (eq == std::string::npos)
            config_fail(origin, lineno, (int)first + 1, "expected 'key = value'");
        auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t");
            size_t b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        std::string key = trim(body.substr(0, eq));
        std::string val = trim(body.substr(eq + 1));
        int valcol = (int)(first + eq + 2);
        if (key.empty() || val.empty())
            config_fail(origin, lineno, valcol, "empty key or value");
        auto as_long = [&](const std::string &v) {
            try {
                size_t used;
                long r = std::stol(v, &used);
                if (used != v.size()) throw std::invalid_argument(v);
                return r;
            } catch (...) {
                config_fail(origin, lineno, valcol, "expected an integer, got '" + v + "'");
                return 0L;
            }
        };
        auto as_double = [&](const std::string &v) {
            try {
                size_t used;
                double r = std::stod(v, &used);
                if (used != v.size()) throw std::invalid_argument(v);
                return r;
            } catch (...) {
                config_fail(origin, lineno, valcol, "expected a number, got '" + v + "'");
                return 0.0;
            }
        };
        auto as_bool = [&](const std::string &v) {
            if (v == "on" || v == "true" || v == "1") return true;
            if (v == "off" || v == "false" || v == "0") return false;
            config_fail(origin, lineno, valcol, "expected on/off, got '" + v + "'");
            return false;
        };
        if (section == "family") {
            if (key == "type") cfg.family = val;
            else if (key == "d") cfg.d = as_long(val);
            else if (key == "a") cfg.a = as_long(val);
            else if (key == "b") cfg.b = as_long(val);
            else if (key == "n0") cfg.n0 = as_long(val);
            else if (key == "ring") cfg.ring = val;
            else config_fail(origin, lineno, (int)first + 1, "unknown family key '" + key + "'");
        } else if (section == "run") {
            if (key == "symmetry") cfg.options.sym_reduce = as_bool(val);
            else if (key == "refine") cfg.options.refine = as_bool(val);
            else if (key == "eps_cusp") cfg.options.eps_cusp = as_double(val);
            else if (key == "max_depth") cfg.options.max_depth = (int)as_long(val);
            else if (key == "shell_cap") cfg.options.shell_cap = as_long(val);
            else if (key == "scan_floor") cfg.options.scan_floor = as_long(val);
            else if (key == "precision_bits") cfg.options.precision_bits = (int)as_long(val);
            else if (key == "volume_samples") cfg.options.volume_samples = as_long(val);
            else config_fail(origin, lineno, (int)first + 1, "unknown run key '" + key + "'");
        } else if (section == "output") {
            if (key == "result") cfg.result_path = val;
            else if (key == "svg") cfg.svg_path = val;
            else config_fail(origin, lineno, (int)first + 1, "unknown output key '" + key + "'");
        } else {
            config_fail(origin, lineno, (int)first + 1, "key outside a section");
        }
    }
    if (cfg.family.empty()) config_fail(origin, lineno, 1, "missing [family] type");
    if (cfg.options.eps_cusp <= 0 || cfg.options.max_depth <= 0 || cfg.options.shell_cap <= 0)
        config_fail(origin, lineno, 1, "numeric run parameters must be positive");
    return cfg;
}

RunConfig parse_run_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw FamilyError("cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_run_config_text(ss.str(), path);
}

// --- result serialization --------------------------------------------------------

namespace {

json elem_json(const GroupElement &g) {
    json jx = json::array(), jy = json::array();
    for (int i = 0; i < 4; i++) jx.push_back(g.x[i].get_str());
    for (int i = 0; i < 4; i++) jy.push_back(g.y[i].get_str());
    return json{{"x", jx}, {"y", jy}};
}

GroupElement elem_from_json(const Family &fam, const json &j, std::vector<std::string> *issues) {
    IntVec4 x, y;
    for (int i = 0; i < 4; i++) {
        x[i] = Int(j.at("x").at(i).get<std::string>());
        y[i] = Int(j.at("y").at(i).get<std::string>());
    }
    GroupElement g{x, y, Int(0)};
    if (!fam.satisfies_system(g)) {
        if (!issues) throw FamilyError("result entry violates the defining system");
        issues->push_back("entry x=" + j.at("x").dump() + " violates the defining system");
        g.norm2 = 0;
        return g;
    }
    g.norm2 = fam.norm_of(g);
    return g;
}

json quadext_json(const QuadExt &q) {
    json a = json::array();
    for (int i = 0; i < 4; i++) a.push_back(q.coeff(i).get_str());
    return a;
}

json matrix_string(const Family &fam, const GroupElement &g) {
    MoebiusMatrix m = fam.embed(g);
    auto c = [&](const ExactComplex &z) {
        std::ostringstream os;
        os << "(" << z.re << ")+(" << z.im << ")i";
        return os.str();
    };
    return json::array({c(m.a), c(m.b), c(m.c), c(m.d)});
}

} // namespace

std::string result_to_json(const RunResult &r, const RunConfig &cfg) {
    json j;
    j["schema"] = "fundom-result/1";
    j["family"] = {{"type", cfg.family}, {"d", cfg.d},          {"a", cfg.a},
                   {"b", cfg.b},         {"n0", cfg.n0},        {"ring", cfg.ring},
                   {"name", r.family}};
    j["options"] = {{"symmetry", r.options.sym_reduce},   {"refine", r.options.refine},
                    {"eps_cusp", r.options.eps_cusp},     {"max_depth", r.options.max_depth},
                    {"shell_cap", r.options.shell_cap},   {"scan_floor", r.options.scan_floor},
                    {"precision_bits", r.options.precision_bits},
                    {"volume_samples", r.options.volume_samples}};
    j["stop_shell"] = r.stop_shell.get_str();
    j["stop_norm"] = r.stop_norm.get_str();
    j["certification"] = r.certification;
    j["symmetry_words"] = r.symmetry_words;
    json stab = json::array();
    for (const auto &g : r.stabilizer) stab.push_back(elem_json(g));
    j["stabilizer"] = stab;
    json walls = json::array();
    for (const auto &w : r.walls) {
        json jw;
        jw["element"] = elem_json(w.g);
        jw["shell"] = w.shell.get_str();
        jw["norm"] = w.g.norm2.get_str();
        jw["orbit"] = w.orbit;
        jw["side"] = w.side;
        jw["ball_center"] = json::array(
            {quadext_json(w.ball.center[0]), quadext_json(w.ball.center[1]), quadext_json(w.ball.center[2])});
        jw["ball_r2"] = w.ball.r2.get_str();
        jw["upper_plane"] = w.upper.is_plane;
        jw["upper_center_or_v"] =
            json::array({quadext_json(w.upper.center_or_v.re), quadext_json(w.upper.center_or_v.im)});
        jw["upper_r2"] = quadext_json(w.upper.r2);
        walls.push_back(jw);
    }
    j["walls"] = walls;
    j["reps"] = r.reps;
    json gens = json::array();
    for (const auto &g : r.generators) {
        json je = elem_json(g);
        je["norm"] = g.norm2.get_str();
        je["matrix"] = json();
        gens.push_back(je);
    }
    j["generators"] = gens;
    json verts = json::array();
    for (const auto &v : r.vertices) verts.push_back(json::array({v[0], v[1], v[2]}));
    j["vertices"] = verts;
    json cusps = json::array();
    for (const auto &v : r.suspected_cusps) cusps.push_back(json::array({v[0], v[1], v[2]}));
    j["suspected_cusps"] = cusps;
    j["refine"] = {{"attempted", r.refine.attempted},   {"certified", r.refine.certified},
                   {"max_vertex_dist", r.refine.max_vertex_dist},
                   {"k", r.refine.k},                   {"r", r.refine.r},
                   {"norm_bound", r.refine.norm_bound}, {"scan_to_shell", r.refine.scan_to_shell},
                   {"new_walls", r.refine.new_walls}};
    j["volume_estimate"] = r.volume_estimate;
    j["residual_cells"] = r.residual_cells;
    j["degenerate_redundancy"] = r.degenerate_redundancy;
    j["witness_note"] = r.witness_note;
    j["timing_ms"] = r.timing_ms;
    return j.dump(1) + "\n";
}

LoadedResult result_from_json(const std::string &text) {
    json j = json::parse(text);
    if (j.at("schema").get<std::string>() != "fundom-result/1")
        throw FamilyError("unknown result schema");
    LoadedResult out;
    RunConfig &cfg = out.cfg;
    const json &fm = j.at("family");
    cfg.family = fm.at("type").get<std::string>();
    cfg.d = fm.at("d").get<long>();
    cfg.a = fm.at("a").get<long>();
    cfg.b = fm.at("b").get<long>();
    cfg.n0 = fm.at("n0").get<long>();
    cfg.ring = fm.at("ring").get<std::string>();
    const json &op = j.at("options");
    cfg.options.sym_reduce = op.at("symmetry").get<bool>();
    cfg.options.refine = op.at("refine").get<bool>();
    cfg.options.eps_cusp = op.at("eps_cusp").get<double>();
    cfg.options.max_depth = op.at("max_depth").get<int>();
    cfg.options.shell_cap = op.at("shell_cap").get<long>();
    cfg.options.scan_floor = op.at("scan_floor").get<long>();
    cfg.options.precision_bits = op.at("precision_bits").get<int>();
    cfg.options.volume_samples = op.at("volume_samples").get<long>();

    Family fam = make_family(cfg);
    RunResult &r = out.run;
    r.family = j.at("family").at("name").get<std::string>();
    r.options = cfg.options;
    r.stop_shell = Int(j.at("stop_shell").get<std::string>());
    r.stop_norm = Int(j.at("stop_norm").get<std::string>());
    r.certification = j.at("certification").get<std::string>();
    r.symmetry_words = j.at("symmetry_words").get<std::vector<std::string>>();
    for (const auto &je : j.at("stabilizer"))
        r.stabilizer.push_back(elem_from_json(fam, je, &out.issues));
    for (const auto &jw : j.at("walls")) {
        AcceptedWall w;
        w.g = elem_from_json(fam, jw.at("element"), &out.issues);
        w.shell = Int(jw.at("shell").get<std::string>());
        w.orbit = jw.at("orbit").get<int>();
        w.side = jw.at("side").get<bool>();
        if (w.g.norm2 != 0) {
            MoebiusMatrix m = fam.embed(w.g);
            w.ball = wall_ball(m);
            w.upper = wall_upper(m);
            // stored exact data must match the recomputed wall
            for (int i = 0; i < 3; i++)
                for (int k = 0; k < 4; k++)
                    if (w.ball.center[i].coeff(k).get_str() !=
                        jw.at("ball_center").at(i).at(k).get<std::string>())
                        out.issues.push_back("stored wall centre differs from the recomputed one");
            if (w.ball.r2.get_str() != jw.at("ball_r2").get<std::string>())
                out.issues.push_back("stored wall radius differs from the recomputed one");
        }
        r.walls.push_back(w);
    }
    r.reps = j.at("reps").get<std::vector<int>>();
    for (const auto &je : j.at("generators"))
        r.generators.push_back(elem_from_json(fam, je, &out.issues));
    for (const auto &jv : j.at("vertices"))
        r.vertices.push_back({jv.at(0).get<double>(), jv.at(1).get<double>(), jv.at(2).get<double>()});
    for (const auto &jv : j.at("suspected_cusps"))
        r.suspected_cusps.push_back(
            {jv.at(0).get<double>(), jv.at(1).get<double>(), jv.at(2).get<double>()});
    const json &rf = j.at("refine");
    r.refine.attempted = rf.at("attempted").get<bool>();
    r.refine.certified = rf.at("certified").get<bool>();
    r.refine.max_vertex_dist = rf.at("max_vertex_dist").get<double>();
    r.refine.k = rf.at("k").get<double>();
    r.refine.r = rf.at("r").get<double>();
    r.refine.norm_bound = rf.at("norm_bound").get<double>();
    r.refine.scan_to_shell = rf.at("scan_to_shell").get<long>();
    r.refine.new_walls = rf.at("new_walls").get<long>();
    r.volume_estimate = j.at("volume_estimate").get<double>();
    r.residual_cells = j.at("residual_cells").get<long>();
    r.degenerate_redundancy = j.at("degenerate_redundancy").get<long>();
    r.witness_note = j.at("witness_note").get<std::string>();
    r.timing_ms = j.at("timing_ms").get<long>();
    return out;
}

// --- verification -----------------------------------------------------------------

VerifyReport verify_result(const LoadedResult &loaded) {
    VerifyReport rep;
    auto line = [&](bool ok, const std::string &what, const std::string &detail = "") {
        rep.ok = rep.ok && ok;
        rep.lines.push_back(std::string(ok ? "pass " : "FAIL ") + what +
                            (detail.empty() ? "" : ": " + detail));
    };
    Family fam = make_family(loaded.cfg);

    // entries loaded cleanly (Diophantine systems re-validated on load)
    line(loaded.issues.empty(), "entries satisfy the defining systems",
         loaded.issues.empty() ? "" : loaded.issues.front());

    // determinant one for every generator
    bool det_ok = true;
    std::string det_detail;
    for (size_t i = 0; i < loaded.run.generators.size(); i++) {
        const auto &g = loaded.run.generators[i];
        if (g.norm2 == 0) continue; // already reported unparseable
        ExactComplex det = fam.embed(g).det();
        QuadExt one = QuadExt::rational(Rat(1), fam.field_u(), fam.field_v());
        if (!(det.re == one) || !det.im.is_zero()) {
            det_ok = false;
            det_detail = "generator " + std::to_string(i);
            break;
        }
    }
    line(det_ok, "determinant one", det_detail);

    // wall formulas: ||P||^2 - R^2 = 1 in the ball model
    bool orth_ok = true;
    for (const auto &w : loaded.run.walls) {
        if (w.g.norm2 == 0) continue;
        QuadExt n2 = w.ball.center[0] * w.ball.center[0] + w.ball.center[1] * w.ball.center[1] +
                     w.ball.center[2] * w.ball.center[2];
        QuadExt want = QuadExt::rational(Rat(1) + w.ball.r2, fam.field_u(), fam.field_v());
        if (!(n2 == want)) orth_ok = false;
    }
    line(orth_ok, "walls are orthogonal to the boundary sphere");

    // pairwise non-redundancy of the accepted caps
    bool nonred_ok = true;
    std::string nonred_detail;
    std::vector<Cap> caps;
    for (const auto &w : loaded.run.walls)
        if (w.g.norm2 != 0) caps.push_back(Cap::from_wall(w.ball, (int)caps.size()));
    for (size_t i = 0; i < caps.size() && nonred_ok; i++)
        for (size_t j = 0; j < caps.size() && nonred_ok; j++) {
            if (i == j) continue;
            if (caps[i].same_wall(caps[j])) {
                nonred_ok = false;
                nonred_detail = "duplicate wall";
            } else if (loaded.run.walls[j].shell > loaded.run.walls[i].shell &&
                       cap_contains(caps[i], caps[j])) {
                nonred_ok = false;
                nonred_detail = "wall " + std::to_string(j) + " inside wall " + std::to_string(i);
            }
        }
    line(nonred_ok, "accepted walls are pairwise non-redundant", nonred_detail);

    // local fundamental-domain test: no low-norm translate of an interior
    // point returns to the interior
    bool local_ok = true;
    if (loaded.issues.empty() && !loaded.run.walls.empty()) {
        auto inside = [&](double x, double y, double z, double slack) {
            if (x * x + y * y + z * z >= 1) return false;
            for (const auto &w : loaded.run.walls) {
                double dx = x - w.ball.cd[0], dy = y - w.ball.cd[1], dz = z - w.ball.cd[2];
                if (std::sqrt(dx * dx + dy * dy + dz * dz) < w.ball.rd + slack) return false;
            }
            return true;
        };
        std::mt19937 rng(99);
        std::uniform_real_distribution<double> U(-0.9, 0.9);
        std::vector<std::array<double, 3>> pts;
        int dim = fam.dimension();
        while (pts.size() < 60) {
            double x = U(rng), y = dim == 3 ? U(rng) : 0.0, z = U(rng);
            if (inside(x, y, z, 1e-3)) pts.push_back({x, y, z});
            static int guard = 0;
            if (++guard > 200000) break;
        }
        std::vector<GroupElement> elems;
        for (const auto &w : loaded.run.walls) elems.push_back(w.g);
        auto orbit = Engine::expand_orbit(fam, elems, true);
        for (const auto &p : pts) {
            QuatS u{Shadow(p[0]), Shadow(p[1]), Shadow(p[2]), Shadow(0.0)};
            for (const auto &g : orbit) {
                if (fam.is_identity_class(g)) continue;
                QuatS img = sb2_apply(psi(fam.embed(g)), u);
                if (inside(img.w.to_double(), img.x.to_double(), img.y.to_double(), -1e-6)) {
                    local_ok = false;
                    break;
                }
            }
            if (!local_ok) break;
        }
    }
    line(local_ok, "no translate of an interior point lands in the interior");
    return rep;
}

// --- group-ring manifest ------------------------------------------------------------

std::string manifest_to_json(const GeneratorManifest &man, const FiniteGroup &G) {
    json j;
    j["schema"] = "fundom-manifest/1";
    j["group_order"] = man.group_order;
    j["nilpotency_class"] = man.nilpotency_class;
    auto elems = [&](const std::vector<GroupRingElement> &v) {
        json arr = json::array();
        for (const auto &e : v) {
            json je = json::array();
            for (auto &[g, c] : e.coeffs())
                je.push_back(json::array({G.name_of(g), c.get_str()}));
            arr.push_back(je);
        }
        return arr;
    };
    j["bass_central_powers"] = elems(man.bass);
    j["bicyclic"] = elems(man.bicyclic);
    json cong = json::array();
    for (const auto &c : man.congruence)
        cong.push_back(json{{"quotient", c.quotient},
                            {"ring", c.ring},
                            {"level", c.level},
                            {"normal_subgroup", c.normal_subgroup},
                            {"run", std::string("cong(") + std::to_string(c.level) + "," + c.ring + ")"}});
    j["congruence_runs"] = cong;
    j["q8cn_units"] = elems(man.q8cn);
    j["q8cn_parameters"] = man.q8cn_params;
    return j.dump(1) + "\n";
}

} // namespace fundom
