#pragma once

#include "fundom/forms.hpp"
#include "fundom/hyperbolic.hpp"
#include "fundom/quadint.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace fundom {

enum class FamilyKind { QuatImquad, QuatGauss, QuatRat, Bianchi, Cong };

// Group element as a pair of integer coordinate 4-vectors:
//   quaternion families: u_t = x_t + y_t * omega
//   Bianchi:             entries (a,b,c,d) = x_t + y_t * omega
//   congruence:          gamma = 1 + n0 * ghat, ghat entries = x_t + y_t * omega
struct GroupElement {
    IntVec4 x, y;
    Int norm2; // ||gamma||^2

    bool operator==(const GroupElement &o) const { return x == o.x && y == o.y; }
};

int lex_compare(const GroupElement &a, const GroupElement &b);

struct CuspData {
    std::vector<GroupElement> translations;
    // fundamental cell of the translation lattice on the boundary:
    // dim 3: polygon vertices (re, im) CCW; dim 2: segment [cell[0][0], cell[1][0]]
    std::vector<std::array<QuadExt, 2>> cell;
};

class Family {
  public:
    static Family quat_imquad(long d);                   // H(-1,-1, Z[(1+sqrt(-d))/2]), d = 7 mod 8
    static Family quat_gauss(long a, long b);            // H(a,b, Z[i]), 0 < a < b
    static Family quat_rat(long a, long b);              // H(a,b, Z), 0 < a < b
    static Family bianchi(long d);                       // PSL2(O_d)
    static Family cong(long n0, const std::string &ring); // ring: "Z", "Zi", "Zsqrt-2"

    FamilyKind kind() const { return kind_; }
    int dimension() const { return dim_; }
    bool cocompact() const { return kind_ == FamilyKind::QuatImquad || kind_ == FamilyKind::QuatGauss || kind_ == FamilyKind::QuatRat; }
    long param_d() const { return d_; }
    long param_a() const { return a_; }
    long param_b() const { return b_; }
    long param_n0() const { return n0_; }
    const RingDescriptor &coord_ring() const { return ring_; }
    long field_u() const { return fu_; }
    long field_v() const { return fv_; }
    std::string name() const;

    // shells are indexed per family; shell_norm gives ||gamma||^2 on that shell
    Int min_shell() const;
    Int shell_norm(const Int &shell) const;
    // largest shell with shell_norm <= bound (may be < min_shell)
    Int shell_for_norm_bound(const Rat &bound) const;

    // complete, duplicate-free, lex-ordered, +/- normalized; every element
    // verified against the family's defining system
    std::vector<GroupElement> enumerate_shell(const Int &shell) const;

    std::vector<GroupElement> stabilizer() const; // of j (resp. i); empty if trivial
    CuspData cusp_data() const;                   // throws NotCusped if cocompact

    MoebiusMatrix embed(const GroupElement &g) const;
    Int norm_of(const GroupElement &g) const;
    bool satisfies_system(const GroupElement &g) const;
    GroupElement identity() const;
    bool is_identity_class(const GroupElement &g) const;

    // symmetries of the tessellation, as generator names:
    // "sigma", "tau", "sigma2", "phi", "sigma2tau"
    std::vector<std::string> symmetry_generators() const;
    GroupElement apply_symmetry(const std::string &gen, const GroupElement &g) const;
    bool minus_in_group() const;
    GroupElement negate(const GroupElement &g) const; // requires minus_in_group
    GroupElement normalized(GroupElement g) const;    // lex-min of {g, -g}
    GroupElement inverse(const GroupElement &g) const;
    GroupElement multiply(const GroupElement &g, const GroupElement &h) const;

    GroupElement make_element(IntVec4 x, IntVec4 y) const; // validates + caches norm

  private:
    Family() = default;
    QuadExt qe(const Rat &q) const { return QuadExt::rational(q, fu_, fv_); }
    QuadExt qe_root(const Rat &q, long m) const { return QuadExt::root_term(q, m, fu_, fv_); }
    ExactComplex entry_from_quadint(const QuadInt &z) const;

    std::vector<GroupElement> enum_imquad(const Int &shell) const;
    std::vector<GroupElement> enum_gauss(const Int &shell) const;
    std::vector<GroupElement> enum_rat(const Int &shell) const;
    std::vector<GroupElement> enum_bianchi(const Int &shell) const;
    std::vector<GroupElement> enum_cong_z(const Int &shell) const;
    std::vector<GroupElement> enum_cong_complex(const Int &shell) const;

    FamilyKind kind_ = FamilyKind::QuatRat;
    long d_ = 0, a_ = 0, b_ = 0, n0_ = 0;
    int dim_ = 3;
    RingDescriptor ring_;
    bool has_ring_ = false;
    long fu_ = 1, fv_ = 1;
};

} // namespace fundom
