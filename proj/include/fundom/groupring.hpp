#pragma once

#include "fundom/numeric.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fundom {

// Finite group given by its Cayley table (0-based internally).
class FiniteGroup {
  public:
    static FiniteGroup from_table(const std::vector<std::vector<int>> &mul,
                                  std::vector<std::string> names = {});
    // file format: first line |G|, then |G| rows of 1-based indices,
    // optionally one final line with |G| element names
    static FiniteGroup from_cayley_file(const std::string &path);
    std::string to_cayley_text() const;

    static FiniteGroup cyclic(int n);
    static FiniteGroup dihedral8();     // <a,b | a^4 = b^2 = 1, bab = a^-1>
    static FiniteGroup quaternion8();   // <a,b | a^4 = 1, a^2 = b^2, bab^-1 = a^-1>
    static FiniteGroup direct_product(const FiniteGroup &A, const FiniteGroup &B);

    int size() const { return n_; }
    int mult(int a, int b) const { return mul_[a][b]; }
    int inverse(int a) const { return inv_[a]; }
    int order_of(int a) const { return order_[a]; }
    int identity() const { return 0; }
    int conj(int x, int g) const { return mult(mult(inverse(g), x), g); } // x^g
    const std::string &name_of(int a) const { return names_[a]; }
    bool is_abelian() const;

    long euler_phi_order() const; // phi(|G|)

    // upper central series Z_1 subset Z_2 subset ...; empty if trivial centre
    const std::vector<std::vector<int>> &upper_central_series() const { return ucs_; }
    int nilpotency_class() const { return nilpotency_class_; } // -1 if not nilpotent

    std::vector<std::vector<int>> conjugacy_classes() const;
    std::vector<std::vector<int>> normal_subgroups() const; // sorted element lists
    FiniteGroup quotient(const std::vector<int> &N, std::vector<int> *coset_of = nullptr) const;

    struct Q8CnShape {
        int a, b, c; // images satisfying the Q8 x Cn presentation
        long n;      // odd order of c
    };
    // recognizes Q8 x C_n (n odd, n = 1 gives Q8 itself)
    std::optional<Q8CnShape> q8cn_shape() const;

  private:
    void finalize();
    int n_ = 0;
    std::vector<std::vector<int>> mul_;
    std::vector<std::string> names_;
    std::vector<int> inv_, order_;
    std::vector<std::vector<int>> ucs_;
    int nilpotency_class_ = -1;
};

// Sparse exact-rational element of Q G.
class GroupRingElement {
  public:
    GroupRingElement() = default;
    explicit GroupRingElement(const FiniteGroup *G) : G_(G) {}
    static GroupRingElement unit(const FiniteGroup *G) { return basis(G, G->identity()); }
    static GroupRingElement basis(const FiniteGroup *G, int g);
    static GroupRingElement hat(const FiniteGroup *G, int g); // 1 + g + ... + g^{o(g)-1}
    static GroupRingElement average(const FiniteGroup *G, const std::vector<int> &X); // X~

    const FiniteGroup *group() const { return G_; }
    const std::map<int, Rat> &coeffs() const { return c_; }
    Rat coeff(int g) const;
    void set(int g, const Rat &v);

    GroupRingElement operator+(const GroupRingElement &o) const;
    GroupRingElement operator-(const GroupRingElement &o) const;
    GroupRingElement operator*(const GroupRingElement &o) const;
    GroupRingElement operator*(const Rat &s) const;
    bool operator==(const GroupRingElement &o) const;

    GroupRingElement conj_by(int x) const; // x^{-1} (.) x
    Rat augmentation() const;
    bool is_integral() const;
    bool is_zero() const;
    bool is_central() const; // commutes with every group element

  private:
    void trim();
    const FiniteGroup *G_ = nullptr;
    std::map<int, Rat> c_;
};

// Bass unit (1+g+...+g^{i-1})^m + ((1-i^m)/o(g)) ghat with m = phi(|G|)
GroupRingElement bass_unit(const FiniteGroup &G, int g, long i);
// unipotent pair 1+(1-g)h ghat and 1+ghat h(1-g)
std::pair<GroupRingElement, GroupRingElement> bicyclic_units(const FiniteGroup &G, int g, int h);
// b_(n): iterated product of conjugates over the upper central series
GroupRingElement central_bass_power(const FiniteGroup &G, const GroupRingElement &b);
// determinant of the regular representation is +-1 and the inverse is integral
bool unit_check(const GroupRingElement &u);

struct Q8CnBlock {
    GroupRingElement e, E11, E22;
    long n = 0, p = 0, product_len = 0, twist = 0;
    bool valid = false;
    std::string reject_reason;
};
// Matrix-unit block for a normal subgroup N with G/N = Q8 x Cn; `product_len`
// and `twist` parametrize alpha = c^{(n/p) twist} prod_{k<len} (1 + b c^{(n/p)2^k}).
// The block is validated exactly (e central idempotent; E11, E22 orthogonal
// idempotents summing to e) and marked invalid otherwise.
Q8CnBlock q8cn_matrix_units(const FiniteGroup &G, const std::vector<int> &N, long p,
                            long product_len, long twist);
// u_{g,N} = 1 + m E11 g E22 with m = |N| 2n; integrality is asserted by the caller
GroupRingElement q8cn_unit(const FiniteGroup &G, const Q8CnBlock &blk, int g,
                           const std::vector<int> &N, bool prime_side = true);

// --- generator manifest ------------------------------------------------------

struct CongruenceRef {
    std::string quotient;   // D8, D16-, D16+, Dcal, D8xC3, Q8xC3, D+
    std::string ring;       // Z, Zi, Zsqrt-2, Zsqrt-3
    long level = 0;         // m
    std::vector<int> normal_subgroup;
};

struct GeneratorManifest {
    std::string group_name;
    int group_order = 0;
    int nilpotency_class = 0;
    std::vector<GroupRingElement> bass;     // central powers b_(n)
    std::vector<GroupRingElement> bicyclic; // nontrivial ones
    std::vector<CongruenceRef> congruence;  // item (iii): references to covering runs
    std::vector<GroupRingElement> q8cn;     // item (iv)
    std::vector<std::string> q8cn_params;   // chosen (n, p, len, twist) per block
};

struct ExceptionalRow {
    std::vector<int> normal_subgroup; // 0-based element indices
    std::string quotient;             // tag
    std::string ring;
    long level = 0;
    // optional matrix units for the M2(F) component, as coefficient tables
    std::map<std::string, GroupRingElement> matrix_units; // keys e, E11, E12, E21, E22
    bool m2hq = false;                                    // M2(H(Q)) component marker
};

GeneratorManifest assemble_generator_manifest(const FiniteGroup &G,
                                              const std::vector<ExceptionalRow> &config);

// embedding of a 2x2 congruence matrix 1 + m ghat through supplied matrix units:
// (1 - e) + sum (1 + m ghat)_{kl} E_kl  (entries of ghat are rational integers)
GroupRingElement embed_congruence_matrix(const FiniteGroup &G, const ExceptionalRow &row,
                                         const std::array<Rat, 4> &gamma_entries);

// the (O, m/|N|) table for the exceptional matrix components
std::optional<std::pair<std::string, long>> exceptional_component_table(const std::string &tag);

} // namespace fundom
