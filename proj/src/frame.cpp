#include "ddsim/frame.hpp"

#include <cmath>
#include <string>

#include "ddsim/error.hpp"

namespace ddsim {

namespace {

// a x + b y = g
struct Bezout {
    long g, x, y;
};

Bezout extended_gcd(long a, long b) {
    if (b == 0) return {a, 1, 0};
    const Bezout r = extended_gcd(b, a % b);
    return {r.g, r.y, r.x - (a / b) * r.y};
}

} // namespace

LatticeFrame line_frame(const Eigen::Vector2i& direction) {
    const long p = direction.x();
    const long q = direction.y();
    if (p == 0 && q == 0) throw InputError("line direction must be nonzero");
    Bezout e = extended_gcd(p, q);
    if (e.g < 0) e = {-e.g, -e.x, -e.y};
    if (e.g != 1)
        throw InputError("line direction (" + std::to_string(p) + "," + std::to_string(q) +
                         ") is not coprime; divide by " + std::to_string(e.g));
    // p b - q a = 1 with b = x, a = -y
    Eigen::Vector2i c(static_cast<int>(-e.y), static_cast<int>(e.x));
    const long s = c.x() * p + c.y() * q;
    const long d2 = p * p + q * q;
    const long m = static_cast<long>(std::floor(0.5 - static_cast<double>(s) / d2));
    c += static_cast<int>(m) * direction;
    return {direction, c};
}

} // namespace ddsim
