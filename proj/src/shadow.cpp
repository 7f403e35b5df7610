#include "fundom/shadow.hpp"

#include <cmath>
#include <limits>

namespace fundom {

double Shadow::ulp_of(double v) {
    if (v == 0.0) return 0.0;
    // 2^-128 relative, as an absolute bound
    return std::ldexp(std::fabs(v), -126);
}

void Shadow::bump() { err_ += ulp_of(value_.get_d()) + 1e-300; }

Shadow Shadow::from_approx(double v) {
    Shadow s;
    s.value_ = mpf_class(v, kPrecision);
    s.err_ = std::ldexp(std::fabs(v), -50) + 1e-300;
    return s;
}

Shadow Shadow::operator+(const Shadow &o) const {
    Shadow r(mpf_class(value_ + o.value_), err_ + o.err_);
    return r;
}

Shadow Shadow::operator-(const Shadow &o) const {
    Shadow r(mpf_class(value_ - o.value_), err_ + o.err_);
    return r;
}

Shadow Shadow::operator*(const Shadow &o) const {
    double a = std::fabs(value_.get_d()), b = std::fabs(o.value_.get_d());
    double e = a * o.err_ + b * err_ + err_ * o.err_;
    Shadow r(mpf_class(value_ * o.value_), e);
    return r;
}

Shadow Shadow::operator/(const Shadow &o) const {
    double b = std::fabs(o.value_.get_d());
    if (b <= o.err_) throw PrecisionError("shadow division by interval containing zero");
    double q = std::fabs(value_.get_d()) / b;
    double e = (err_ + q * o.err_) / (b - o.err_);
    Shadow r(mpf_class(value_ / o.value_), e);
    return r;
}

Shadow Shadow::sqrt() const {
    double v = value_.get_d();
    if (v < 0) {
        if (v + err_ < 0) throw PrecisionError("sqrt of negative shadow");
        return Shadow(mpf_class(0), std::sqrt(err_));
    }
    mpf_class s(0, kPrecision);
    mpf_sqrt(s.get_mpf_t(), value_.get_mpf_t());
    double sv = s.get_d();
    double e = sv > 0 ? err_ / (2 * sv) : std::sqrt(err_);
    // near zero the derivative bound degrades; widen
    if (v < err_) e = std::sqrt(err_) + e;
    return Shadow(s, e);
}

Shadow Shadow::abs() const {
    mpf_class a(0, kPrecision);
    mpf_abs(a.get_mpf_t(), value_.get_mpf_t());
    return Shadow(a, err_);
}

int Shadow::sign() const {
    int s = sign_or_unknown();
    if (s == 2) throw PrecisionError("shadow sign straddles zero");
    return s;
}

int Shadow::sign_or_unknown() const {
    int s = sgn(value_);
    if (s == 0) return err_ == 0.0 ? 0 : 2;
    double v = std::fabs(value_.get_d());
    if (v > err_) return s;
    return 2;
}

bool Shadow::encloses(const Rat &exact) const {
    mpf_class d(0, 2 * kPrecision);
    d = value_ - mpf_class(exact, 2 * kPrecision);
    mpf_abs(d.get_mpf_t(), d.get_mpf_t());
    return d.get_d() <= err_ * (1 + 1e-12) + 1e-300;
}

Shadow shadow_sqrt_rat(const Rat &r) { return Shadow(r).sqrt(); }

} // namespace fundom
