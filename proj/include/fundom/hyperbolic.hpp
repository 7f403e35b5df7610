#pragma once

#include "fundom/shadow.hpp"
#include "fundom/surd.hpp"

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace fundom {

// ---------------------------------------------------------------------------
// Quaternions over a field T (double or Shadow), basis 1, i, j, k.

template <typename T> struct Quat {
    T w{}, x{}, y{}, z{};

    Quat() = default;
    Quat(T w_, T x_, T y_, T z_) : w(w_), x(x_), y(y_), z(z_) {}

    Quat operator+(const Quat &o) const { return {w + o.w, x + o.x, y + o.y, z + o.z}; }
    Quat operator-(const Quat &o) const { return {w - o.w, x - o.x, y - o.y, z - o.z}; }
    Quat operator-() const { return {-w, -x, -y, -z}; }
    Quat operator*(const Quat &o) const {
        return {w * o.w - x * o.x - y * o.y - z * o.z,
                w * o.x + x * o.w + y * o.z - z * o.y,
                w * o.y - x * o.z + y * o.w + z * o.x,
                w * o.z + x * o.y - y * o.x + z * o.w};
    }
    Quat conj() const { return {w, -x, -y, -z}; }
    T norm_sq() const { return w * w + x * x + y * y + z * z; }
    Quat inverse() const {
        T n = norm_sq();
        Quat c = conj();
        return {c.w / n, c.x / n, c.y / n, c.z / n};
    }
};

using QuatS = Quat<Shadow>;
using QuatD = Quat<double>;

// ---------------------------------------------------------------------------
// Exact complex scalar over Q(sqrt(u), sqrt(v)).

struct ExactComplex {
    QuadExt re, im;

    ExactComplex() = default;
    ExactComplex(QuadExt r, QuadExt i) : re(std::move(r)), im(std::move(i)) {}

    ExactComplex operator+(const ExactComplex &o) const { return {re + o.re, im + o.im}; }
    ExactComplex operator-(const ExactComplex &o) const { return {re - o.re, im - o.im}; }
    ExactComplex operator-() const { return {-re, -im}; }
    ExactComplex operator*(const ExactComplex &o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    ExactComplex conj() const { return {re, -im}; }
    ExactComplex times_i() const { return {-im, re}; }
    QuadExt abs_sq() const { return re * re + im * im; }
    bool operator==(const ExactComplex &o) const { return re == o.re && im == o.im; }
    std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
};

// ---------------------------------------------------------------------------
// SL2(C) matrix with exact entries; all wall formulas are exact.

struct MoebiusMatrix {
    ExactComplex a, b, c, d;

    ExactComplex det() const { return a * d - b * c; }
    QuadExt norm_sq() const { return a.abs_sq() + b.abs_sq() + c.abs_sq() + d.abs_sq(); }
    QuadExt ac_sq() const { return a.abs_sq() + c.abs_sq(); } // |a|^2+|c|^2
    QuadExt bd_sq() const { return b.abs_sq() + d.abs_sq(); }
    ExactComplex mixed() const { return a.conj() * b + c.conj() * d; } // conj(a)b+conj(c)d
    MoebiusMatrix operator*(const MoebiusMatrix &o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    MoebiusMatrix inverse() const { return {d, -b, -c, a}; } // det = 1
    bool is_unitary() const; // norm_sq == 2
};

// ---------------------------------------------------------------------------
// Points of H^3 (z + r j, r > 0) and B^3 (|u| < 1), Shadow-backed.

enum class Model { Upper, Ball };

struct Point3 {
    Model model = Model::Upper;
    Shadow c0, c1, c2; // Upper: z = c0 + c1 i, r = c2 ; Ball: (c0, c1, c2)

    static Point3 upper(Shadow zx, Shadow zy, Shadow r) { return {Model::Upper, zx, zy, r}; }
    static Point3 ball(Shadow x, Shadow y, Shadow z) { return {Model::Ball, x, y, z}; }
    static Point3 j_point() { return upper(Shadow(0.0), Shadow(0.0), Shadow(1.0)); }
};

enum class Direction { ToBall, ToUpper };

// eta0(P) = (P - j)(-jP + 1)^{-1} and its inverse (1 + u j)^{-1}(u + j).
Point3 eta0(const Point3 &p, Direction dir);

// boundary extension of eta0: C -> S^2 and back
std::array<double, 3> eta0_boundary(std::complex<double> z);
std::complex<double> eta0_boundary_inv(const std::array<double, 3> &u);

// hyperbolic distance (both points in the same model)
Shadow hyper_dist(const Point3 &p, const Point3 &q);

// Psi(gamma) = conj(g) gamma g, returned as the quaternion pair (A, C); the
// matrix is ((A, C'), (C, A')).
struct PsiMatrix {
    QuatS A, C;
};
PsiMatrix psi(const MoebiusMatrix &m);

// apply an SB2(H) element (A, C) to a ball point u: (A u + C')(C u + A')^{-1}
QuatS sb2_apply(const PsiMatrix &f, const QuatS &u);
QuatS psi_inverse_of_zero(const MoebiusMatrix &m); // Psi(m^{-1})(0), exact formula

// ---------------------------------------------------------------------------
// Walls (bisectors). In the ball model every wall is a Euclidean sphere
// orthogonal to S^2: ||center||^2 = 1 + radius^2, and its ideal boundary is
// the circle {u in S^2 : <u, center> = 1}.

struct BallWall {
    std::array<QuadExt, 3> center;
    Rat r2; // radius^2, rational: 4 / (||gamma||^2 - 2)
    std::array<double, 3> cd;
    double rd = 0;

    void fill_doubles();
    std::string ball_coeff_str(int i, int k) const { return center[i].coeff(k).get_str(); }
    bool operator==(const BallWall &o) const {
        return r2 == o.r2 && center[0] == o.center[0] && center[1] == o.center[1] &&
               center[2] == o.center[2];
    }
};

struct UpperWall {
    bool is_plane = false;
    ExactComplex center_or_v; // sphere center, or plane normal v (Re(conj(v) z) + |v|^2/2 = 0)
    QuadExt r2;               // sphere radius^2 (unused for planes)
};

// requires ||gamma||^2 != 2
BallWall wall_ball(const MoebiusMatrix &m);
UpperWall wall_upper(const MoebiusMatrix &m);

struct PositionFlags {
    bool j_on = false, j_inside = false;
    bool minus_j_on = false, minus_j_inside = false;
    // 0 is never on any wall
};
PositionFlags position_predicates(const MoebiusMatrix &m);

// rho_gamma = 1 + R - ||P||, strictly decreasing in ||gamma||^2
Shadow rho_gamma(const MoebiusMatrix &m);
Shadow rho_gamma_from_norm(const Rat &norm_sq);

// ---------------------------------------------------------------------------
// The five symmetry operators (sigma, sigma^2, tau, delta, phi).

enum class Symmetry { Sigma, Sigma2, Tau, Delta, Phi };

MoebiusMatrix symmetry_apply(Symmetry s, const MoebiusMatrix &m);
MoebiusMatrix symmetry_apply_word(const std::vector<Symmetry> &word, const MoebiusMatrix &m);
std::string symmetry_name(Symmetry s);

} // namespace fundom
