#include "sticktile/exact.hpp"

#include <array>
#include <cmath>
#include <numeric>

namespace sticktile::geom {

namespace {

using i128 = __int128;

long long checked_narrow(i128 v) {
    require(v <= INT64_MAX && v >= INT64_MIN, ErrorKind::unsupported,
            "exact arithmetic overflow");
    return static_cast<long long>(v);
}

Rat make(i128 num, i128 den) {
    require(den != 0, ErrorKind::malformed_input, "zero denominator");
    if (den < 0) {
        den = -den;
        num = -num;
    }
    i128 a = num < 0 ? -num : num, b = den;
    while (b) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    if (a == 0) a = 1;
    Rat r;
    r.num = checked_narrow(num / a);
    r.den = checked_narrow(den / a);
    return r;
}

}  // namespace

Rat::Rat(long long n, long long d) { *this = make(n, d); }

Rat Rat::operator+(const Rat& o) const {
    return make(i128(num) * o.den + i128(o.num) * den, i128(den) * o.den);
}
Rat Rat::operator-(const Rat& o) const {
    return make(i128(num) * o.den - i128(o.num) * den, i128(den) * o.den);
}
Rat Rat::operator*(const Rat& o) const { return make(i128(num) * o.num, i128(den) * o.den); }
Rat Rat::operator/(const Rat& o) const {
    require(o.num != 0, ErrorKind::malformed_input, "division by zero");
    return make(i128(num) * o.den, i128(den) * o.num);
}

int Ext::sign() const {
    int sa = a.sign(), sb = b.sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Compare a^2 with 3 b^2; signs differ so the larger magnitude wins.
    Rat lhs = a * a, rhs = Rat(3) * b * b;
    i128 cmp = i128(lhs.num) * rhs.den - i128(rhs.num) * lhs.den;
    if (cmp == 0) return 0;  // impossible for rational a, b unless both zero
    return (cmp > 0) ? sa : sb;
}

double Ext::to_double() const { return a.to_double() + b.to_double() * std::sqrt(3.0); }

bool PtLess::operator()(const Pt& p, const Pt& q) const {
    int s = (p.x - q.x).sign();
    if (s != 0) return s < 0;
    return (p.y - q.y).sign() < 0;
}

Ext cross(const Pt& o, const Pt& a, const Pt& b) {
    Ext ax = a.x - o.x, ay = a.y - o.y, bx = b.x - o.x, by = b.y - o.y;
    return ax * by - ay * bx;
}

Ext dot2(const Pt& a, const Pt& b) { return a.x * b.x + a.y * b.y; }

Pt rotate30(const Pt& p, int k) {
    k = ((k % 12) + 12) % 12;
    Pt out = p;
    const Ext c{Rat(0), Rat(1, 2)};  // cos 30 = sqrt(3)/2
    const Ext s{Rat(1, 2), Rat(0)};  // sin 30 = 1/2
    for (int i = 0; i < k; ++i) {
        Ext x = out.x * c - out.y * s;
        Ext y = out.x * s + out.y * c;
        out = {x, y};
    }
    return out;
}

namespace {

const std::array<Pt, 24>& direction_refs() {
    static const std::array<Pt, 24> refs = [] {
        std::array<Pt, 24> r;
        r[0] = {Ext(Rat(1)), Ext(Rat(0))};
        r[1] = {Ext(Rat(1)), Ext(Rat(2), Rat(-1))};  // slope tan 15 = 2 - sqrt 3
        for (int k = 2; k < 24; ++k) r[k] = rotate30(r[k - 2], 1);
        return r;
    }();
    return refs;
}

}  // namespace

int dir24(const Pt& vec) {
    require(!(vec.x.is_zero() && vec.y.is_zero()), ErrorKind::malformed_input,
            "zero vector has no direction");
    const auto& refs = direction_refs();
    Pt o{Ext(Rat(0)), Ext(Rat(0))};
    // Guess from floating point, confirm exactly.
    double angle = std::atan2(vec.y.to_double(), vec.x.to_double());
    int guess = static_cast<int>(std::llround(angle / (M_PI / 12.0)));
    guess = ((guess % 24) + 24) % 24;
    if (cross(o, refs[guess], vec).sign() == 0 && dot2(refs[guess], vec).sign() > 0) return guess;
    for (int k = 0; k < 24; ++k) {
        if (cross(o, refs[k], vec).sign() == 0 && dot2(refs[k], vec).sign() > 0) return k;
    }
    fail(ErrorKind::unsupported, "direction is not a multiple of 15 degrees");
}

int interior_angle_units(const Pt& prev, const Pt& v, const Pt& next) {
    int din = dir24(v - prev);
    int dout = dir24(next - v);
    int turn = ((dout - din) % 24 + 24) % 24;
    if (turn > 12) turn -= 24;  // (-12, 12]
    require(turn != 12 && turn != 0, ErrorKind::malformed_input,
            "degenerate polygon corner");
    return 12 - turn;  // interior angle in 15-degree units, in (0, 24)
}

bool point_on_segment(const Pt& p, const Pt& a, const Pt& b) {
    if (cross(a, b, p).sign() != 0) return false;
    return dot2(p - a, p - b).sign() <= 0;
}

bool segments_cross_properly(const Pt& a, const Pt& b, const Pt& c, const Pt& d) {
    int d1 = cross(a, b, c).sign();
    int d2 = cross(a, b, d).sign();
    if (d1 * d2 >= 0) return false;
    int d3 = cross(c, d, a).sign();
    int d4 = cross(c, d, b).sign();
    return d3 * d4 < 0;
}

}  // namespace sticktile::geom
