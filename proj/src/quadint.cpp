#include "fundom/quadint.hpp"

#include <cmath>
#include <ostream>

namespace fundom {

Rat RingDescriptor::omega_sq_const() const {
    switch (kind) {
    case OmegaKind::Half: return make_rat(-(d + 1), 4);
    case OmegaKind::Root: return Rat(-d);
    case OmegaKind::Gauss: return Rat(-1);
    }
    return Rat(0);
}

Rat RingDescriptor::omega_sq_lin() const {
    return kind == OmegaKind::Half ? Rat(1) : Rat(0);
}

std::complex<double> RingDescriptor::omega() const {
    double sd = std::sqrt(to_double(d));
    switch (kind) {
    case OmegaKind::Half: return {0.5, 0.5 * sd};
    case OmegaKind::Root: return {0.0, sd};
    case OmegaKind::Gauss: return {0.0, 1.0};
    }
    return {};
}

QuadInt QuadInt::operator+(const QuadInt &o) const {
    if (!(ring == o.ring)) throw DescriptorError("ring mismatch in +");
    return {x + o.x, y + o.y, ring};
}

QuadInt QuadInt::operator-(const QuadInt &o) const {
    if (!(ring == o.ring)) throw DescriptorError("ring mismatch in -");
    return {x - o.x, y - o.y, ring};
}

QuadInt QuadInt::operator*(const QuadInt &o) const {
    if (!(ring == o.ring)) throw DescriptorError("ring mismatch in *");
    // (x1 + y1 w)(x2 + y2 w) = x1 x2 + (x1 y2 + y1 x2) w + y1 y2 w^2
    Int xx = x * o.x;
    Int xy = x * o.y + y * o.x;
    Int yy = y * o.y;
    if (ring.kind == OmegaKind::Half) {
        // w^2 = w - (d+1)/4
        Int c = (ring.d + 1) / 4;
        return {xx - yy * c, xy + yy, ring};
    }
    Int c = ring.kind == OmegaKind::Root ? ring.d : Int(1);
    return {xx - yy * c, xy, ring};
}

QuadInt QuadInt::conj() const {
    // Half: conj(w) = 1 - w; Root/Gauss: conj(w) = -w
    if (ring.kind == OmegaKind::Half) return {x + y, -y, ring};
    return {x, -y, ring};
}

Int QuadInt::norm() const {
    if (ring.kind == OmegaKind::Half) {
        // x^2 + xy + ((d+1)/4) y^2
        Int c = (ring.d + 1) / 4;
        return x * x + x * y + c * y * y;
    }
    Int c = ring.kind == OmegaKind::Root ? ring.d : Int(1);
    return x * x + c * y * y;
}

void QuadInt::complex_parts(Rat &re0, Rat &im_sqrtd) const {
    if (ring.kind == OmegaKind::Half) {
        re0 = Rat(x) + make_rat(y, 2);
        im_sqrtd = make_rat(y, 2);
    } else {
        re0 = Rat(x);
        im_sqrtd = Rat(y);
    }
}

std::complex<double> QuadInt::to_complex() const {
    return std::complex<double>(to_double(x), 0.0) +
           std::complex<double>(to_double(y), 0.0) * ring.omega();
}

std::ostream &operator<<(std::ostream &os, const QuadInt &z) {
    os << z.x;
    if (z.y != 0) {
        os << (z.y > 0 ? "+" : "") << z.y << "w";
    }
    return os;
}

std::vector<QuadInt> ring_elements_with_norm(const RingDescriptor &ring, const Int &n) {
    std::vector<QuadInt> out;
    if (n < 0) return out;
    for (const auto &z : ring_elements_norm_upto(ring, n))
        if (z.norm() == n) out.push_back(z);
    return out;
}

std::vector<QuadInt> ring_elements_norm_upto(const RingDescriptor &ring, const Int &n) {
    std::vector<QuadInt> out;
    if (n < 0) return out;
    // |x + y w|^2 <= n bounds y via the imaginary part.
    // Half: (d/4) y^2 <= n; Root: d y^2 <= n; Gauss: y^2 <= n.
    Int ymax;
    if (ring.kind == OmegaKind::Half)
        ymax = isqrt((4 * n) / ring.d);
    else if (ring.kind == OmegaKind::Root)
        ymax = isqrt(n / ring.d);
    else
        ymax = isqrt(n);
    for (Int yv = -ymax; yv <= ymax; ++yv) {
        // solve x range: norm as quadratic in x
        // Half: x^2 + x y + c y^2 <= n ; Root/Gauss: x^2 + c y^2 <= n
        if (ring.kind == OmegaKind::Half) {
            Int c = (ring.d + 1) / 4;
            // x^2 + yx + (c y^2 - n) <= 0 ; disc = y^2 - 4(c y^2 - n)
            Int disc = yv * yv - 4 * (c * yv * yv - n);
            if (disc < 0) continue;
            Int s = isqrt(disc);
            // floor/ceil of (-y +- s)/2
            Int lo = (-yv - s);
            Int hi = (-yv + s);
            // integer x with 2x in [lo, hi]
            Int xlo = lo / 2 - 2, xhi = hi / 2 + 2;
            for (Int xv = xlo; xv <= xhi; ++xv) {
                QuadInt z(xv, yv, ring);
                if (z.norm() <= n) out.push_back(z);
            }
        } else {
            Int c = ring.kind == OmegaKind::Root ? ring.d : Int(1);
            Int rem = n - c * yv * yv;
            if (rem < 0) continue;
            Int xmax = isqrt(rem);
            for (Int xv = -xmax; xv <= xmax; ++xv) out.emplace_back(xv, yv, ring);
        }
    }
    // lex order on (x, y)
    std::sort(out.begin(), out.end(), [](const QuadInt &a, const QuadInt &b) {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    });
    return out;
}

} // namespace fundom
