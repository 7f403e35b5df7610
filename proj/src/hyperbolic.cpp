#include "fundom/hyperbolic.hpp"

#include <cmath>

namespace fundom {

bool MoebiusMatrix::is_unitary() const {
    QuadExt n = norm_sq();
    return n.is_rational() && n.rational_part() == 2;
}

Point3 eta0(const Point3 &p, Direction dir) {
    const QuatS j{Shadow(0.0), Shadow(0.0), Shadow(1.0), Shadow(0.0)};
    if (dir == Direction::ToBall) {
        if (p.model != Model::Upper) throw DescriptorError("eta0: expected upper-model point");
        QuatS P{p.c0, p.c1, p.c2, Shadow(0.0)};
        QuatS u = (P - j) * ((-(j * P)) + QuatS{Shadow(1.0), Shadow(0.0), Shadow(0.0), Shadow(0.0)}).inverse();
        return Point3::ball(u.w, u.x, u.y);
    }
    if (p.model != Model::Ball) throw DescriptorError("eta0: expected ball-model point");
    QuatS u{p.c0, p.c1, p.c2, Shadow(0.0)};
    QuatS one{Shadow(1.0), Shadow(0.0), Shadow(0.0), Shadow(0.0)};
    QuatS P = (one + u * j).inverse() * (u + j);
    return Point3::upper(P.w, P.x, P.y);
}

std::array<double, 3> eta0_boundary(std::complex<double> z) {
    double n = std::norm(z);
    double den = n + 1.0;
    return {2.0 * z.real() / den, 2.0 * z.imag() / den, (n - 1.0) / den};
}

std::complex<double> eta0_boundary_inv(const std::array<double, 3> &u) {
    double den = 1.0 - u[2];
    return {u[0] / den, u[1] / den};
}

Shadow hyper_dist(const Point3 &p, const Point3 &q) {
    if (p.model != q.model) throw DescriptorError("hyper_dist: model mismatch");
    Shadow one(1.0), two(2.0);
    if (p.model == Model::Upper) {
        Shadow dx = p.c0 - q.c0, dy = p.c1 - q.c1, dr = p.c2 - q.c2;
        Shadow d2 = dx * dx + dy * dy + dr * dr;
        Shadow ch = one + d2 / (two * p.c2 * q.c2);
        // acosh via log: ch + sqrt(ch^2-1)
        Shadow s = (ch * ch - one).sqrt();
        Shadow arg = ch + s;
        return Shadow(std::log(arg.to_double())); // log precision: double is enough downstream
    }
    Shadow dx = p.c0 - q.c0, dy = p.c1 - q.c1, dz = p.c2 - q.c2;
    Shadow d2 = dx * dx + dy * dy + dz * dz;
    Shadow np = one - (p.c0 * p.c0 + p.c1 * p.c1 + p.c2 * p.c2);
    Shadow nq = one - (q.c0 * q.c0 + q.c1 * q.c1 + q.c2 * q.c2);
    Shadow ch = one + two * d2 / (np * nq);
    Shadow s = (ch * ch - one).sqrt();
    return Shadow(std::log((ch + s).to_double()));
}

namespace {
QuatS quat_from_complex_pair(const ExactComplex &z, const ExactComplex &w) {
    // z + w j
    return {Shadow::from_approx(z.re.to_double()), Shadow::from_approx(z.im.to_double()),
            Shadow::from_approx(w.re.to_double()), Shadow::from_approx(w.im.to_double())};
}
} // namespace

PsiMatrix psi(const MoebiusMatrix &m) {
    // A = (a + conj(d))/2 + ((b - conj(c))/2) j , C = (c + conj(b))/2 + ((d - conj(a))/2) j
    ExactComplex half{QuadExt::rational(rat_of(1, 2), m.a.re.u(), m.a.re.v()), QuadExt::rational(Rat(0), m.a.re.u(), m.a.re.v())};
    ExactComplex A1 = half * (m.a + m.d.conj());
    ExactComplex A2 = half * (m.b - m.c.conj());
    ExactComplex C1 = half * (m.c + m.b.conj());
    ExactComplex C2 = half * (m.d - m.a.conj());
    return {quat_from_complex_pair(A1, A2), quat_from_complex_pair(C1, C2)};
}

QuatS sb2_apply(const PsiMatrix &f, const QuatS &u) {
    // f = ((A, C'), (C, A')) ; f(u) = (A u + C')(C u + A')^{-1}
    // q' = q0 - q1 i - q2 j + q3 k
    auto primed = [](const QuatS &q) { return QuatS{q.w, -q.x, -q.y, q.z}; };
    QuatS num = f.A * u + primed(f.C);
    QuatS den = f.C * u + primed(f.A);
    return num * den.inverse();
}

QuatS psi_inverse_of_zero(const MoebiusMatrix &m) {
    // Psi(m^{-1})(0) = (1/(2+||m||^2)) [ -2(conj(a)b+conj(c)d) + (|b|^2+|d|^2-|a|^2-|c|^2) j ]
    QuadExt n = m.norm_sq();
    QuadExt den = n + QuadExt::rational(Rat(2), n.u(), n.v());
    ExactComplex mix = m.mixed();
    QuadExt jpart = m.bd_sq() - m.ac_sq();
    QuadExt cx = (-(mix.re + mix.re)) / den;
    QuadExt cy = (-(mix.im + mix.im)) / den;
    QuadExt cz = jpart / den;
    return {Shadow::from_approx(cx.to_double()), Shadow::from_approx(cy.to_double()),
            Shadow::from_approx(cz.to_double()), Shadow(0.0)};
}

void BallWall::fill_doubles() {
    for (int i = 0; i < 3; i++) cd[i] = center[i].to_double();
    rd = std::sqrt(to_double(r2));
}

BallWall wall_ball(const MoebiusMatrix &m) {
    QuadExt n = m.norm_sq();
    if (!n.is_rational()) throw DescriptorError("wall_ball: matrix norm must be rational");
    Rat nr = n.rational_part();
    if (nr == 2) throw StabilizerElement("wall_ball: unitary element has no bisector");
    Rat den = nr - 2;
    ExactComplex mix = m.mixed();
    QuadExt jpart = m.bd_sq() - m.ac_sq();
    Rat invden = 1 / den;
    BallWall w;
    w.center[0] = (mix.re + mix.re) * (-invden);
    w.center[1] = (mix.im + mix.im) * (-invden);
    w.center[2] = jpart * invden;
    w.r2 = make_rat(4, 1) * invden;
    w.fill_doubles();
    return w;
}

UpperWall wall_upper(const MoebiusMatrix &m) {
    QuadExt n = m.norm_sq();
    if (n.is_rational() && n.rational_part() == 2)
        throw StabilizerElement("wall_upper: unitary element has no bisector");
    QuadExt ac = m.ac_sq();
    QuadExt one = QuadExt::rational(Rat(1), ac.u(), ac.v());
    ExactComplex mix = m.mixed();
    UpperWall w;
    if (ac == one) {
        w.is_plane = true;
        w.center_or_v = mix;
        return w;
    }
    QuadExt den = ac - one;
    w.is_plane = false;
    w.center_or_v = ExactComplex{(-mix.re) / den, (-mix.im) / den};
    QuadExt p2 = w.center_or_v.abs_sq();
    w.r2 = (one + p2) / ac;
    return w;
}

PositionFlags position_predicates(const MoebiusMatrix &m) {
    QuadExt ac = m.ac_sq(), bd = m.bd_sq();
    QuadExt one = QuadExt::rational(Rat(1), ac.u(), ac.v());
    PositionFlags f;
    int sa = (ac - one).sign();
    int sb = (bd - one).sign();
    f.j_on = sa == 0;
    f.j_inside = sa < 0;
    f.minus_j_on = sb == 0;
    f.minus_j_inside = sb < 0;
    return f;
}

Shadow rho_gamma_from_norm(const Rat &norm_sq) {
    if (norm_sq == 2) throw StabilizerElement("rho_gamma: unitary element");
    Shadow n{norm_sq};
    Shadow two(2.0), one(1.0);
    Shadow r = (Shadow(4.0) / (n - two)).sqrt();
    Shadow p = ((n + two) / (n - two)).sqrt();
    return one + r - p;
}

Shadow rho_gamma(const MoebiusMatrix &m) {
    QuadExt n = m.norm_sq();
    if (!n.is_rational()) throw DescriptorError("rho_gamma: matrix norm must be rational");
    return rho_gamma_from_norm(n.rational_part());
}

namespace {
MoebiusMatrix sigma_once(const MoebiusMatrix &m) {
    // conjugation by diag(sqrt(i), sqrt(-i)): b -> i b, c -> -i c
    return {m.a, m.b.times_i(), -(m.c.times_i()), m.d};
}
} // namespace

MoebiusMatrix symmetry_apply(Symmetry s, const MoebiusMatrix &m) {
    switch (s) {
    case Symmetry::Sigma: return sigma_once(m);
    case Symmetry::Sigma2: return sigma_once(sigma_once(m));
    case Symmetry::Tau: return {m.a.conj(), m.b.conj(), m.c.conj(), m.d.conj()};
    case Symmetry::Delta: return {m.d, -m.c, -m.b, m.a};
    case Symmetry::Phi: {
        MoebiusMatrix t = symmetry_apply(Symmetry::Tau, m);
        t = symmetry_apply(Symmetry::Delta, t);
        return symmetry_apply(Symmetry::Sigma2, t);
    }
    }
    return m;
}

MoebiusMatrix symmetry_apply_word(const std::vector<Symmetry> &word, const MoebiusMatrix &m) {
    MoebiusMatrix r = m;
    for (auto it = word.rbegin(); it != word.rend(); ++it) r = symmetry_apply(*it, r);
    return r;
}

std::string symmetry_name(Symmetry s) {
    switch (s) {
    case Symmetry::Sigma: return "sigma";
    case Symmetry::Sigma2: return "sigma2";
    case Symmetry::Tau: return "tau";
    case Symmetry::Delta: return "delta";
    case Symmetry::Phi: return "phi";
    }
    return "?";
}

} // namespace fundom
