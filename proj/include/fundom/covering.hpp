#pragma once

#include "fundom/families.hpp"
#include "fundom/hyperbolic.hpp"

#include <array>
#include <optional>
#include <vector>

namespace fundom {

// A wall in engine form. In the Klein model the wall is the plane
// {<x, c> = 1}; the solid cap B(gamma) is {<x, c> >= 1} and its ideal
// boundary disk on S^2 is {<u, c> >= 1}.
struct Cap {
    int elem = -1;
    std::array<QuadExt, 3> c;
    Rat r2;
    std::array<double, 3> cd{};
    double rd = 0, cnorm = 0;

    static Cap from_wall(const BallWall &w, int elem);
    bool same_wall(const Cap &o) const {
        return r2 == o.r2 && c[0] == o.c[0] && c[1] == o.c[1] && c[2] == o.c[2];
    }
};

// closed-ball containment: B(inner) subset of B(outer), exact
bool cap_contains(const Cap &outer, const Cap &inner);

struct RedundancyStats {
    long pole_accepts = 0;
    long qp_runs = 0;
    long degenerate = 0;
};

// Does the candidate's solid cap, clipped to the region cone
// {<x, n> >= 0 for n in region}, add anything beyond the accepted caps?
// Exact convex feasibility in the Klein model; `dim` is 2 or 3.
// Returns true when the clipped cap is absorbed (reject the candidate).
bool cap_union_redundant(const Cap &cand, const std::vector<Cap> &accepted, int dim,
                         RedundancyStats &stats,
                         const std::vector<std::array<QuadExt, 3>> &region = {});

// --- boundary coverage -----------------------------------------------------

enum class TargetKind {
    SpherePatch, // union of spherical triangles on S^2 (ball model)
    CircleArc,   // arcs of S^1 in the (0,2)-coordinate plane
    PlanarCell,  // compact polygon in the upper-model boundary C
    SegmentCell  // compact interval on the upper-model boundary R
};

// exact point: unnormalized direction vector (sphere/circle kinds) or a
// boundary point (planar/segment kinds, coordinate 2 unused)
using ExactPoint = std::array<QuadExt, 3>;

struct CoverCell {
    std::vector<ExactPoint> corners; // 3 (triangle) or 2 (arc/segment)
    std::vector<std::array<double, 3>> cd;
    int depth = 0;
    bool witness_checked = false; // corner 0 exactly outside all caps at last check
};

// upper-model wall footprint for planar/segment targets
struct Footprint {
    bool is_plane = false;
    ExactComplex v;      // plane normal, or disk centre
    QuadExt r2;          // disk radius^2
    double px = 0, py = 0, rdbl = 0;
    int cap_index = -1;
};

struct TangencyPoint {
    std::array<double, 3> ball;
    double ux = 0, uy = 0; // upper-model boundary coordinates
    int cap_a = -1, cap_b = -1;
};

class Coverage {
  public:
    Coverage() = default;
    Coverage(TargetKind kind, int dim, long fu, long fv);

    void set_limits(int max_depth, double eps_cusp) {
        max_depth_ = max_depth;
        eps_cusp_ = eps_cusp;
    }
    void enable_unit_disk_cap() { unit_disk_cap_ = true; } // stabilizer region |z| >= 1

    void add_initial_cell(std::vector<ExactPoint> corners);
    // planar targets: clip cells against the convex cell polygon
    void set_polygon(const std::vector<std::array<QuadExt, 2>> &poly);

    // planar/segment targets also need the wall's upper-model footprint
    void add_cap(const Cap &cap, const Footprint *foot = nullptr);

    // re-examine residual cells against the current caps; returns true when
    // the target is covered (up to excised cusp neighbourhoods)
    bool update();

    bool covered() const { return residual_.empty() && initialized_; }
    const std::vector<CoverCell> &residual() const { return residual_; }
    const std::vector<TangencyPoint> &cusp_points() const { return cusp_points_; }
    // an exact witness point outside all closed caps, if one is known
    std::optional<ExactPoint> witness() const { return witness_; }
    long cells_processed() const { return cells_processed_; }

  private:
    bool cell_covered(const CoverCell &cell) const;
    bool cell_outside_polygon(const CoverCell &cell) const;
    bool cell_near_cusp(const CoverCell &cell) const;
    bool point_outside_all_closed(const ExactPoint &p) const;
    bool point_in_target(const ExactPoint &p) const;
    void subdivide(const CoverCell &cell, std::vector<CoverCell> &out) const;
    void fill_doubles(CoverCell &cell) const;
    void detect_tangencies(size_t first_new_cap);
    double cell_diam(const CoverCell &cell) const;

    TargetKind kind_ = TargetKind::SpherePatch;
    int dim_ = 3;
    long fu_ = 1, fv_ = 1;
    bool initialized_ = false;
    bool unit_disk_cap_ = false;
    int max_depth_ = 14;
    double eps_cusp_ = 1e-4;
    long cells_processed_ = 0;

    std::vector<Cap> caps_;
    std::vector<Footprint> feet_;
    std::vector<CoverCell> residual_;
    std::vector<std::array<QuadExt, 2>> polygon_; // convex, CCW
    std::vector<TangencyPoint> cusp_points_;
    std::optional<ExactPoint> witness_;
};

// footprint of a wall on the upper-model boundary
Footprint footprint_of(const MoebiusMatrix &m, int cap_index, long fu, long fv);

} // namespace fundom
