#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace fundom {

using Int = mpz_class;
using Rat = mpq_class;

inline double to_double(const Int &x) { return x.get_d(); }
inline double to_double(const Rat &x) { return x.get_d(); }

inline Rat make_rat(const Int &num, const Int &den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat rat_of(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// floor(sqrt(n)) for n >= 0
inline Int isqrt(const Int &n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_square(const Int &n, Int &root) {
    if (n < 0) return false;
    root = isqrt(n);
    return root * root == n;
}

// sign of p + q*sqrt(m), m >= 0 rational
int sign_plus_root(const Rat &p, const Rat &q, const Rat &m);

struct DescriptorError : std::runtime_error {
    explicit DescriptorError(const std::string &w) : std::runtime_error(w) {}
};
struct PrecisionError : std::runtime_error {
    explicit PrecisionError(const std::string &w) : std::runtime_error(w) {}
};
struct StabilizerElement : std::runtime_error {
    explicit StabilizerElement(const std::string &w) : std::runtime_error(w) {}
};
struct FamilyError : std::runtime_error {
    explicit FamilyError(const std::string &w) : std::runtime_error(w) {}
};
struct NotCusped : std::runtime_error {
    explicit NotCusped(const std::string &w) : std::runtime_error(w) {}
};
struct UnsupportedComponent : std::runtime_error {
    explicit UnsupportedComponent(const std::string &w) : std::runtime_error(w) {}
};
struct EngineGuard : std::runtime_error {
    explicit EngineGuard(const std::string &w) : std::runtime_error(w) {}
};

} // namespace fundom
