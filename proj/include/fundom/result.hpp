#pragma once

#include "fundom/engine.hpp"
#include "fundom/groupring.hpp"

#include <string>
#include <vector>

namespace fundom {

struct RunConfig {
    std::string family; // quat_imquad | quat_gauss | quat_rat | bianchi | cong
    long d = 0, a = 0, b = 0, n0 = 0;
    std::string ring; // cong only: Z | Zi | Zsqrt-2 | Zsqrt-3
    RunOptions options;
    std::string result_path; // [output] result =
    std::string svg_path;    // [output] svg =
};

Family make_family(const RunConfig &cfg);

// key = value sections; throws FamilyError with line:column on bad input
RunConfig parse_run_config(const std::string &path);
RunConfig parse_run_config_text(const std::string &text, const std::string &origin);

// versioned result files; exact data serialized as integer/rational strings
std::string result_to_json(const RunResult &r, const RunConfig &cfg);
struct LoadedResult {
    RunConfig cfg;
    RunResult run;
    std::vector<std::string> issues; // per-entry validation problems found on load
};
LoadedResult result_from_json(const std::string &text);

struct VerifyReport {
    bool ok = true;
    std::vector<std::string> lines; // one line per invariant, pass or fail detail
};
VerifyReport verify_result(const LoadedResult &loaded);

// generator manifest files (group-ring runs)
std::string manifest_to_json(const GeneratorManifest &man, const FiniteGroup &G);

} // namespace fundom
