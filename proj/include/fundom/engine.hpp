#pragma once

#include "fundom/covering.hpp"

#include <map>
#include <string>

namespace fundom {

struct RunOptions {
    bool sym_reduce = true;
    bool refine = false;
    double eps_cusp = 1e-4;
    int max_depth = 14;
    long shell_cap = 10000;
    long scan_floor = 0; // keep accepting walls at least up to this shell
    int precision_bits = 128;
    long volume_samples = 20000;
};

struct AcceptedWall {
    GroupElement g;
    Int shell;
    BallWall ball;
    UpperWall upper;
    int orbit = -1;
    bool side = true; // still contributes after the final redundancy pass
};

struct RefineReport {
    bool attempted = false;
    bool certified = false;
    double max_vertex_dist = 0;
    double k = 0;
    double r = 0;
    double norm_bound = 0; // 2 cosh(2r)
    long scan_to_shell = 0;
    long new_walls = 0;
};

struct RunResult {
    std::string family;
    RunOptions options;
    Int stop_shell;
    Int stop_norm;
    bool covered = false;
    std::vector<AcceptedWall> walls;
    std::vector<int> reps; // orbit representatives (indices into walls)
    std::map<long, long> rep_count_by_shell;
    // orbits merged with their inverse orbits (one class per side pairing)
    std::map<long, long> pair_count_by_shell;
    long pair_classes = 0;
    std::vector<GroupElement> stabilizer;
    std::vector<std::string> symmetry_words;
    std::vector<GroupElement> generators; // stabilizer + expanded symmetry orbit of reps
    std::vector<std::array<double, 3>> vertices;
    RefineReport refine;
    std::string certification; // FULL_GROUP or FINITE_INDEX
    std::vector<std::array<double, 3>> suspected_cusps; // ball coordinates
    double volume_estimate = 0;
    long residual_cells = 0;
    long degenerate_redundancy = 0;
    long qp_runs = 0;
    std::string witness_note;
    long timing_ms = 0;
};

class Engine {
  public:
    Engine(Family fam, RunOptions opt);

    RunResult run();

    // pieces exposed for tests and the verification command
    // closure of `reps` under the family's symmetry generators; with
    // `with_inverses` the element inverses are adjoined too (wall-set
    // comparisons need the side-pairing mates)
    static std::vector<GroupElement> expand_orbit(const Family &fam,
                                                  const std::vector<GroupElement> &reps,
                                                  bool with_inverses = false,
                                                  bool with_stabilizer = false);
    static void build_target(const Family &fam, const RunOptions &opt, Coverage &cov);
    const std::vector<Cap> &caps() const { return caps_; }

  private:
    // accept all non-redundant contributing walls of a shell
    long process_shell(const Int &shell, Coverage &cov);
    void seed_translations(Coverage &cov);
    void add_wall(const GroupElement &g, const Int &shell, Coverage &cov);
    void prune_transients();
    std::string orbit_canon(const GroupElement &g, bool with_inverses) const;
    std::vector<std::array<QuadExt, 3>> region_; // stabilizer-region half-spaces
    void compute_orbits();
    void compute_vertices(RunResult &r) const;
    double monte_carlo_volume() const;
    bool in_fundamental_region(const std::array<double, 3> &u) const;

    Family fam_;
    RunOptions opt_;
    std::vector<AcceptedWall> walls_;
    std::vector<Cap> caps_;
    RedundancyStats stats_;
    std::vector<int> orbit_of_; // per wall
    struct WallKey {
        Rat r2;
        std::array<QuadExt, 3> c;
        bool operator<(const WallKey &o) const;
    };
    std::map<WallKey, int> wall_index_;
    static WallKey key_of(const BallWall &w);
};

// spec-level operation: decide coverage of a family's target region by the
// given walls (used directly by tests and the verify command)
struct CoverageOutcome {
    bool covered;
    long residual;
    std::vector<std::array<double, 3>> suspected_cusps;
};
CoverageOutcome region_covered(const Family &fam, const std::vector<AcceptedWall> &walls,
                               double eps_cusp, int max_depth, bool sym_reduce);

} // namespace fundom
