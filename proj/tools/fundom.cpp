#include "fundom/result.hpp"
#include "fundom/svg.hpp"
#include "fundom/tables.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>

using namespace fundom;

namespace {

int exit_code_for(const std::exception &ex) {
    if (dynamic_cast<const UnsupportedComponent *>(&ex)) return 3;
    if (dynamic_cast<const EngineGuard *>(&ex)) return 4;
    return 2;
}

void write_file(const std::string &path, const std::string &content) {
    std::ofstream out(path);
    if (!out) throw FamilyError("cannot write " + path);
    out << content;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw FamilyError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cmd_run(const std::string &config_path) {
    RunConfig cfg = parse_run_config(config_path);
    Family fam = make_family(cfg);
    Engine eng(fam, cfg.options);
    RunResult r = eng.run();
    std::string out = result_to_json(r, cfg);
    if (!cfg.result_path.empty()) write_file(cfg.result_path, out);
    else std::cout << out;
    if (!cfg.svg_path.empty()) write_file(cfg.svg_path, render_svg(r, fam));
    std::cerr << fam.name() << ": stop shell " << r.stop_shell << " (norm " << r.stop_norm << "), "
              << r.reps.size() << " generator orbits, certification " << r.certification << "\n";
    return 0;
}

int cmd_render(const std::string &result_path, std::string out_path) {
    LoadedResult loaded = result_from_json(read_file(result_path));
    if (!loaded.issues.empty())
        throw FamilyError("result file fails validation: " + loaded.issues.front());
    if (loaded.run.walls.empty())
        std::cerr << "warning: no walls to draw, emitting an empty canvas\n";
    Family fam = make_family(loaded.cfg);
    if (out_path.empty()) out_path = result_path + ".svg";
    write_file(out_path, render_svg(loaded.run, fam));
    std::cerr << "wrote " << out_path << "\n";
    return 0;
}

int cmd_verify(const std::string &result_path) {
    LoadedResult loaded = result_from_json(read_file(result_path));
    VerifyReport rep = verify_result(loaded);
    for (const auto &l : rep.lines) std::cout << l << "\n";
    std::cout << (rep.ok ? "verification passed" : "verification FAILED") << "\n";
    return rep.ok ? 0 : 1;
}

ExceptionalRow row_from_json(const nlohmann::json &jr, const FiniteGroup &G) {
    ExceptionalRow row;
    if (jr.contains("m2hq")) row.m2hq = jr.at("m2hq").get<bool>();
    if (jr.contains("N"))
        for (auto &v : jr.at("N")) row.normal_subgroup.push_back(v.get<int>() - 1); // 1-based
    if (jr.contains("quotient")) row.quotient = jr.at("quotient").get<std::string>();
    if (jr.contains("ring")) row.ring = jr.at("ring").get<std::string>();
    if (jr.contains("m")) row.level = jr.at("m").get<long>();
    if (jr.contains("matrix_units")) {
        for (auto &[key, val] : jr.at("matrix_units").items()) {
            GroupRingElement e(&G);
            for (auto &term : val) {
                int g = term.at(0).get<int>() - 1;
                Rat c(term.at(1).get<std::string>());
                c.canonicalize();
                e.set(g, e.coeff(g) + c);
            }
            row.matrix_units.emplace(key, e);
        }
    }
    return row;
}

int cmd_groupring(const std::string &cayley_path, const std::string &config_path,
                  const std::string &out_path) {
    FiniteGroup G = FiniteGroup::from_cayley_file(cayley_path);
    std::vector<ExceptionalRow> rows;
    if (!config_path.empty()) {
        nlohmann::json j = nlohmann::json::parse(read_file(config_path));
        for (auto &jr : j.at("rows")) rows.push_back(row_from_json(jr, G));
    }
    GeneratorManifest man = assemble_generator_manifest(G, rows);
    std::string out = manifest_to_json(man, G);
    if (!out_path.empty()) write_file(out_path, out);
    else std::cout << out;
    std::cerr << "group of order " << G.size() << ": " << man.bass.size() << " central Bass powers, "
              << man.bicyclic.size() << " bicyclic units, " << man.congruence.size()
              << " congruence runs, " << man.q8cn.size() << " matrix-unit units\n";
    return 0;
}

int cmd_import_table(const RunConfig &cfg, const std::string &table_path) {
    Family fam = make_family(cfg);
    auto entries = parse_table_file(fam, table_path);
    size_t ok = 0;
    for (size_t i = 0; i < entries.size(); i++) {
        const auto &e = entries[i];
        if (e.valid) {
            ok++;
            std::cout << "entry " << i + 1 << ": ok, norm " << e.element.norm2 << "\n";
        } else {
            std::cout << "entry " << i + 1 << ": INVALID (" << e.reason << "): " << e.text << "\n";
        }
    }
    std::cout << ok << "/" << entries.size() << " entries satisfy the defining system\n";
    return ok == entries.size() ? 0 : 1;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Dirichlet fundamental domains and unit-group generators"};
    app.require_subcommand(1);

    std::string config_path, result_path, out_path, cayley_path, table_path, ex_config;
    std::string family;
    long d = 0, a = 0, b = 0, n0 = 0;
    std::string ring = "Z";

    auto *run = app.add_subcommand("run", "run the covering engine from a config file");
    run->add_option("config", config_path, "config file")->required();

    auto *render = app.add_subcommand("render", "draw the walls of a result file as SVG");
    render->add_option("result", result_path, "result file")->required();
    render->add_option("-o,--out", out_path, "output svg path");

    auto *verify = app.add_subcommand("verify", "re-run the invariant checks on a result file");
    verify->add_option("result", result_path, "result file")->required();

    auto *gr = app.add_subcommand("groupring", "assemble the unit-generator manifest for a finite group");
    gr->add_option("cayley", cayley_path, "cayley table file")->required();
    gr->add_option("exceptional", ex_config, "exceptional components config (json)");
    gr->add_option("-o,--out", out_path, "manifest output path");

    auto *imp = app.add_subcommand("import-table", "validate a generator table against a family");
    imp->add_option("--family", family, "family tag")->required();
    imp->add_option("--d", d, "d parameter");
    imp->add_option("--a", a, "a parameter");
    imp->add_option("--b", b, "b parameter");
    imp->add_option("--n0", n0, "congruence level");
    imp->add_option("--ring", ring, "congruence ring");
    imp->add_option("table", table_path, "table file")->required();

    try {
        app.parse(argc, argv);
        if (run->parsed()) return cmd_run(config_path);
        if (render->parsed()) return cmd_render(result_path, out_path);
        if (verify->parsed()) return cmd_verify(result_path);
        if (gr->parsed()) return cmd_groupring(cayley_path, ex_config, out_path);
        if (imp->parsed()) {
            RunConfig cfg;
            cfg.family = family;
            cfg.d = d;
            cfg.a = a;
            cfg.b = b;
            cfg.n0 = n0;
            cfg.ring = ring;
            return cmd_import_table(cfg, table_path);
        }
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    } catch (const std::exception &ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return exit_code_for(ex);
    }
    return 2;
}
