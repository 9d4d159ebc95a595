#pragma once

#include <cstdint>
#include <string>

#include "sticktile/common.hpp"

namespace sticktile::geom {

// Reduced fraction over 64-bit integers; intermediate products use 128 bits
// and overflow is a hard error rather than silent wraparound.
struct Rat {
    long long num = 0;
    long long den = 1;

    Rat() = default;
    Rat(long long n) : num(n), den(1) {}
    Rat(long long n, long long d);

    Rat operator+(const Rat& o) const;
    Rat operator-(const Rat& o) const;
    Rat operator*(const Rat& o) const;
    Rat operator/(const Rat& o) const;
    Rat operator-() const { return {-num, den}; }
    bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
    int sign() const { return num > 0 ? 1 : (num < 0 ? -1 : 0); }
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Element of Q(sqrt 3): a + b*sqrt(3). Exact sign and equality tests.
struct Ext {
    Rat a, b;

    Ext() = default;
    Ext(Rat ra) : a(ra) {}
    Ext(Rat ra, Rat rb) : a(ra), b(rb) {}
    static Ext sqrt3(Rat coeff = Rat(1)) { return Ext(Rat(0), coeff); }

    Ext operator+(const Ext& o) const { return {a + o.a, b + o.b}; }
    Ext operator-(const Ext& o) const { return {a - o.a, b - o.b}; }
    Ext operator*(const Ext& o) const {
        return {a * o.a + Rat(3) * (b * o.b), a * o.b + b * o.a};
    }
    Ext operator-() const { return {-a, -b}; }
    bool operator==(const Ext& o) const { return a == o.a && b == o.b; }
    bool is_zero() const { return a.num == 0 && b.num == 0; }
    int sign() const;
    double to_double() const;
};

struct Pt {
    Ext x, y;
    bool operator==(const Pt& o) const { return x == o.x && y == o.y; }
    Pt operator+(const Pt& o) const { return {x + o.x, y + o.y}; }
    Pt operator-(const Pt& o) const { return {x - o.x, y - o.y}; }
};

// Total order for map keys.
struct PtLess {
    bool operator()(const Pt& p, const Pt& q) const;
};

Ext cross(const Pt& o, const Pt& a, const Pt& b);  // (a-o) x (b-o)
Ext dot2(const Pt& a, const Pt& b);

// Rotation by k*30 degrees counterclockwise.
Pt rotate30(const Pt& p, int k);

// Segment directions in this geometry are multiples of 15 degrees; return
// the direction index in 0..23 or fail.
int dir24(const Pt& vec);

// Interior angle, in units of 15 degrees, at vertex v of a ccw polygon with
// neighbours prev and next.
int interior_angle_units(const Pt& prev, const Pt& v, const Pt& next);

bool point_on_segment(const Pt& p, const Pt& a, const Pt& b);  // includes endpoints
bool segments_cross_properly(const Pt& a, const Pt& b, const Pt& c, const Pt& d);

}  // namespace sticktile::geom
