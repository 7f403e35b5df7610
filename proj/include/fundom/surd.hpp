#pragma once

#include "fundom/numeric.hpp"

#include <array>
#include <iosfwd>

namespace fundom {

// Exact element of Q(sqrt(u), sqrt(v)) stored as
//   c0 + c1*sqrt(u) + c2*sqrt(v) + c3*sqrt(u*v),
// with u, v nonnegative square-free-ish integers fixed per family (1 collapses
// a slot). All arithmetic, equality and sign decisions are exact.
class QuadExt {
  public:
    QuadExt() : u_(1), v_(1) {}
    QuadExt(Rat c0, long u, long v) : u_(u), v_(v) { c_[0] = std::move(c0); }
    QuadExt(std::array<Rat, 4> c, long u, long v) : c_(std::move(c)), u_(u), v_(v) { normalize(); }

    static QuadExt rational(Rat q, long u, long v) { return QuadExt(std::move(q), u, v); }
    // q * sqrt(m) where m must be one of {1, u, v, u*v}
    static QuadExt root_term(const Rat &q, long m, long u, long v);

    long u() const { return u_; }
    long v() const { return v_; }
    const Rat &coeff(int i) const { return c_[i]; }

    bool is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }
    bool is_rational() const { return c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }
    const Rat &rational_part() const { return c_[0]; }

    QuadExt operator+(const QuadExt &o) const;
    QuadExt operator-(const QuadExt &o) const;
    QuadExt operator-() const;
    QuadExt operator*(const QuadExt &o) const;
    QuadExt operator*(const Rat &q) const;
    QuadExt operator/(const QuadExt &o) const;
    bool operator==(const QuadExt &o) const;

    int sign() const; // exact
    bool operator<(const QuadExt &o) const { return (*this - o).sign() < 0; }
    bool operator<=(const QuadExt &o) const { return (*this - o).sign() <= 0; }

    double to_double() const;

    // total order usable as map key (lexicographic on coefficients)
    static int key_compare(const QuadExt &a, const QuadExt &b);

  private:
    void normalize(); // fold sqrt(1) slots into the rational part
    void check(const QuadExt &o) const;
    std::array<Rat, 4> c_{Rat(0), Rat(0), Rat(0), Rat(0)};
    long u_, v_;
};

std::ostream &operator<<(std::ostream &os, const QuadExt &x);

// sign of x - sqrt(y) for y >= 0 (exact)
int sign_minus_sqrt(const QuadExt &x, const QuadExt &y);

} // namespace fundom
