#pragma once

#include "fundom/numeric.hpp"

#include <complex>
#include <iosfwd>
#include <vector>

namespace fundom {

enum class OmegaKind { Half, Root, Gauss }; // (1+sqrt(-d))/2, sqrt(-d), i

struct RingDescriptor {
    Int d = 1;
    OmegaKind kind = OmegaKind::Gauss;

    bool operator==(const RingDescriptor &o) const { return d == o.d && kind == o.kind; }

    static RingDescriptor half(const Int &d) { return {d, OmegaKind::Half}; }
    static RingDescriptor root(const Int &d) { return {d, OmegaKind::Root}; }
    static RingDescriptor gauss() { return {1, OmegaKind::Gauss}; }

    // omega^2 = s0 + s1*omega
    Rat omega_sq_const() const;
    Rat omega_sq_lin() const;
    // omega as a complex number
    std::complex<double> omega() const;
};

// Element x + y*omega of Z[omega].
struct QuadInt {
    Int x, y;
    RingDescriptor ring;

    QuadInt() : x(0), y(0) {}
    QuadInt(Int x_, Int y_, RingDescriptor r) : x(std::move(x_)), y(std::move(y_)), ring(r) {}

    bool is_zero() const { return x == 0 && y == 0; }
    bool operator==(const QuadInt &o) const { return x == o.x && y == o.y && ring == o.ring; }

    QuadInt operator+(const QuadInt &o) const;
    QuadInt operator-(const QuadInt &o) const;
    QuadInt operator-() const { return {-x, -y, ring}; }
    QuadInt operator*(const QuadInt &o) const;

    QuadInt conj() const;
    // conj(z)*z, always a rational integer for the rings used here
    Int norm() const;
    // z = re0 + im_sqrtd * sqrt(d) * i  (d = 1 for Gauss)
    void complex_parts(Rat &re0, Rat &im_sqrtd) const;

    std::complex<double> to_complex() const;
};

std::ostream &operator<<(std::ostream &os, const QuadInt &z);

// All z in the ring with norm exactly n (resp. at most n), ordered lex by (x, y).
std::vector<QuadInt> ring_elements_with_norm(const RingDescriptor &ring, const Int &n);
std::vector<QuadInt> ring_elements_norm_upto(const RingDescriptor &ring, const Int &n);

} // namespace fundom
