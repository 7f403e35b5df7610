#include "fundom/surd.hpp"

#include <cmath>
#include <ostream>

namespace fundom {

namespace {
// sign of p + q*sqrt(m) with p, q rational, m >= 0 integer
int sign2(const Rat &p, const Rat &q, long m) {
    int sp = sgn(p), sq = sgn(q);
    if (m == 0) return sp;
    if (sq == 0) return sp;
    if (sp == 0) return sq;
    if (sp == sq) return sp;
    // compare p^2 vs q^2 m with opposite signs
    Rat lhs = p * p, rhs = q * q * Rat(m);
    int c = cmp(lhs, rhs);
    if (c == 0) return 0;
    // |p| > |q|sqrt(m) ? sign is sp : sign is sq
    return c > 0 ? sp : sq;
}
} // namespace

int sign_plus_root(const Rat &p, const Rat &q, const Rat &m) {
    int sp = sgn(p), sq = sgn(q);
    if (sgn(m) == 0 || sq == 0) return sp;
    if (sp == 0) return sq;
    if (sp == sq) return sp;
    Rat lhs = p * p, rhs = q * q * m;
    int c = cmp(lhs, rhs);
    if (c == 0) return 0;
    return c > 0 ? sp : sq;
}

QuadExt QuadExt::root_term(const Rat &q, long m, long u, long v) {
    QuadExt r(Rat(0), u, v);
    if (m == 1) r.c_[0] = q;
    else if (m == u) r.c_[1] = q;
    else if (m == v) r.c_[2] = q;
    else if (m == u * v) r.c_[3] = q;
    else throw DescriptorError("root_term: radicand not in field basis");
    r.normalize();
    return r;
}

void QuadExt::normalize() {
    if (u_ == 1) {
        c_[0] += c_[1];
        c_[1] = 0;
        c_[2] += c_[3];
        c_[3] = 0;
    }
    if (v_ == 1) {
        c_[0] += c_[2];
        c_[2] = 0;
        c_[1] += c_[3];
        c_[3] = 0;
    }
    if (u_ == v_ && u_ != 1) {
        // sqrt(u)sqrt(v) = u rational; fold sqrt(v) into sqrt(u) slot
        c_[1] += c_[2];
        c_[2] = 0;
        c_[0] += c_[3] * Rat(u_);
        c_[3] = 0;
    }
}

void QuadExt::check(const QuadExt &o) const {
    if (u_ != o.u_ || v_ != o.v_) throw DescriptorError("QuadExt field mismatch");
}

QuadExt QuadExt::operator+(const QuadExt &o) const {
    check(o);
    QuadExt r = *this;
    for (int i = 0; i < 4; i++) r.c_[i] += o.c_[i];
    return r;
}

QuadExt QuadExt::operator-(const QuadExt &o) const {
    check(o);
    QuadExt r = *this;
    for (int i = 0; i < 4; i++) r.c_[i] -= o.c_[i];
    return r;
}

QuadExt QuadExt::operator-() const {
    QuadExt r = *this;
    for (int i = 0; i < 4; i++) r.c_[i] = -r.c_[i];
    return r;
}

QuadExt QuadExt::operator*(const QuadExt &o) const {
    check(o);
    // basis: e0=1, e1=su, e2=sv, e3=su*sv
    const Rat U(u_), V(v_), UV(Rat(u_) * Rat(v_));
    QuadExt r(Rat(0), u_, v_);
    const auto &a = c_;
    const auto &b = o.c_;
    r.c_[0] = a[0] * b[0] + U * a[1] * b[1] + V * a[2] * b[2] + UV * a[3] * b[3];
    r.c_[1] = a[0] * b[1] + a[1] * b[0] + V * (a[2] * b[3] + a[3] * b[2]);
    r.c_[2] = a[0] * b[2] + a[2] * b[0] + U * (a[1] * b[3] + a[3] * b[1]);
    r.c_[3] = a[0] * b[3] + a[3] * b[0] + a[1] * b[2] + a[2] * b[1];
    return r;
}

QuadExt QuadExt::operator*(const Rat &q) const {
    QuadExt r = *this;
    for (int i = 0; i < 4; i++) r.c_[i] *= q;
    return r;
}

QuadExt QuadExt::operator/(const QuadExt &o) const {
    check(o);
    if (o.is_zero()) throw std::domain_error("QuadExt division by zero");
    // conjugate over sqrt(v): (A + B sv) -> (A - B sv), A,B in Q(su)
    QuadExt cv = o;
    cv.c_[2] = -cv.c_[2];
    cv.c_[3] = -cv.c_[3];
    QuadExt t = o * cv; // in Q(su): c2 = c3 = 0
    QuadExt cu = t;
    cu.c_[1] = -cu.c_[1];
    QuadExt nrm = t * cu; // rational
    Rat n = nrm.c_[0];
    QuadExt inv = cv * cu;
    for (int i = 0; i < 4; i++) inv.c_[i] /= n;
    return *this * inv;
}

bool QuadExt::operator==(const QuadExt &o) const {
    return u_ == o.u_ && v_ == o.v_ && c_ == o.c_;
}

int QuadExt::sign() const {
    // (c0 + c1 su) + (c2 + c3 su) sv = A + B sv
    int sB = sign2(c_[2], c_[3], u_);
    if (sB == 0 || v_ == 1) return sign2(c_[0], c_[1], u_);
    int sA = sign2(c_[0], c_[1], u_);
    if (sA == 0) return sB;
    if (sA == sB) return sA;
    // compare A^2 vs B^2 v in Q(su)
    // A^2 = c0^2 + c1^2 u + 2 c0 c1 su ; B^2 v = (c2^2 + c3^2 u + 2 c2 c3 su) v
    Rat p = c_[0] * c_[0] + c_[1] * c_[1] * Rat(u_) - Rat(v_) * (c_[2] * c_[2] + c_[3] * c_[3] * Rat(u_));
    Rat q = 2 * c_[0] * c_[1] - Rat(v_) * 2 * c_[2] * c_[3];
    int c = sign2(p, q, u_);
    if (c == 0) return 0;
    return c > 0 ? sA : sB;
}

double QuadExt::to_double() const {
    double su = std::sqrt((double)u_), sv = std::sqrt((double)v_);
    return fundom::to_double(c_[0]) + fundom::to_double(c_[1]) * su + fundom::to_double(c_[2]) * sv +
           fundom::to_double(c_[3]) * su * sv;
}

int QuadExt::key_compare(const QuadExt &a, const QuadExt &b) {
    for (int i = 0; i < 4; i++) {
        int c = cmp(a.c_[i], b.c_[i]);
        if (c != 0) return c;
    }
    return 0;
}

std::ostream &operator<<(std::ostream &os, const QuadExt &x) {
    os << x.coeff(0);
    if (x.coeff(1) != 0) os << "+" << x.coeff(1) << "*sqrt(" << x.u() << ")";
    if (x.coeff(2) != 0) os << "+" << x.coeff(2) << "*sqrt(" << x.v() << ")";
    if (x.coeff(3) != 0) os << "+" << x.coeff(3) << "*sqrt(" << x.u() * x.v() << ")";
    return os;
}

int sign_minus_sqrt(const QuadExt &x, const QuadExt &y) {
    if (y.sign() < 0) throw std::domain_error("sign_minus_sqrt: negative radicand");
    int sx = x.sign();
    if (y.is_zero()) return sx;
    if (sx <= 0) return -1; // y > 0 here
    return (x * x - y).sign();
}

} // namespace fundom
