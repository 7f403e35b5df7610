#pragma once

#include "fundom/numeric.hpp"

namespace fundom {

// High-precision float with a tracked absolute error bound. The value is kept
// at 128 significand bits; every operation inflates the bound by the incurred
// rounding plus the propagated input errors. Comparisons whose intervals
// straddle zero raise PrecisionError.
class Shadow {
  public:
    Shadow() : value_(0, kPrecision), err_(0.0) {}
    Shadow(double v) : value_(v, kPrecision), err_(ulp_of(v)) {}
    explicit Shadow(const mpf_class &v, double err) : value_(v, kPrecision), err_(err) { bump(); }
    explicit Shadow(const Int &v) : value_(0, kPrecision), err_(0.0) {
        value_ = mpf_class(v, kPrecision);
        bump();
    }
    explicit Shadow(const Rat &v) : value_(0, kPrecision), err_(0.0) {
        value_ = mpf_class(v, kPrecision);
        bump();
    }

    static Shadow exactly(double v) {
        Shadow s;
        s.value_ = mpf_class(v, kPrecision);
        s.err_ = 0.0;
        return s;
    }

    // value already carries double rounding error
    static Shadow from_approx(double v);

    double to_double() const { return value_.get_d(); }
    double error_bound() const { return err_; }
    const mpf_class &value() const { return value_; }

    Shadow operator-() const { return Shadow(mpf_class(-value_), err_); }
    Shadow operator+(const Shadow &o) const;
    Shadow operator-(const Shadow &o) const;
    Shadow operator*(const Shadow &o) const;
    Shadow operator/(const Shadow &o) const;
    Shadow sqrt() const;
    Shadow abs() const;

    // sign with certified interval; throws PrecisionError on straddle.
    int sign() const;
    // sign that returns 0 when the interval straddles (for callers that
    // escalate to exact arithmetic themselves).
    int sign_or_unknown() const;

    bool operator<(const Shadow &o) const { return (*this - o).sign() < 0; }
    bool operator>(const Shadow &o) const { return (*this - o).sign() > 0; }

    // |value - exact| <= error for a represented exact rational
    bool encloses(const Rat &exact) const;

    static constexpr int kPrecision = 128;

  private:
    static double ulp_of(double v);
    void bump(); // add one ulp of the stored value to err_
    mpf_class value_;
    double err_;
};

Shadow shadow_sqrt_rat(const Rat &r);

} // namespace fundom
