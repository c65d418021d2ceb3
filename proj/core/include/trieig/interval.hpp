#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace trieig {

/// Closed real interval [lo, hi]. The scalar uncertainty unit of the library.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    Interval(double point) : lo(point), hi(point) {}
    Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
        if (!(lo <= hi)) throw std::invalid_argument("Interval: lo > hi");
    }

    double mid() const { return 0.5 * (lo + hi); }
    double rad() const { return 0.5 * (hi - lo); }
    double width() const { return hi - lo; }
    /// Largest absolute value over the interval.
    double mag() const { return std::max(std::fabs(lo), std::fabs(hi)); }
    bool is_point() const { return lo == hi; }

    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains(const Interval& other) const { return lo <= other.lo && other.hi <= hi; }
    bool intersects(const Interval& other) const { return lo <= other.hi && other.lo <= hi; }

    bool operator==(const Interval& other) const = default;
};

inline Interval operator-(const Interval& x) { return Interval(-x.hi, -x.lo); }

inline Interval operator+(const Interval& x, double s) { return Interval(x.lo + s, x.hi + s); }
inline Interval operator-(const Interval& x, double s) { return Interval(x.lo - s, x.hi - s); }

inline Interval hull(const Interval& a, const Interval& b) {
    return Interval(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

/// x moved n ulps toward +infinity.
inline double ulp_up(double x, int n = 1) {
    for (int i = 0; i < n; ++i) x = std::nextafter(x, std::numeric_limits<double>::infinity());
    return x;
}

/// x moved n ulps toward -infinity.
inline double ulp_down(double x, int n = 1) {
    for (int i = 0; i < n; ++i) x = std::nextafter(x, -std::numeric_limits<double>::infinity());
    return x;
}

/// Widen both endpoints away from the interior: first by `slack`, then by `ulps` ulps.
inline Interval widen_outward(const Interval& x, double slack, int ulps) {
    return Interval(ulp_down(x.lo - slack, ulps), ulp_up(x.hi + slack, ulps));
}

// Interval arithmetic with a one-ulp outward nudge per operation. Each IEEE
// double operation is accurate to half an ulp, so nudging both endpoints one
// ulp outward keeps the enclosure valid without switching rounding modes.

inline Interval enclose(double lo, double hi) { return Interval(ulp_down(lo), ulp_up(hi)); }

inline Interval iadd(const Interval& a, const Interval& b) { return enclose(a.lo + b.lo, a.hi + b.hi); }
inline Interval isub(const Interval& a, const Interval& b) { return enclose(a.lo - b.hi, a.hi - b.lo); }

inline Interval isquare(const Interval& a) {
    if (a.lo >= 0.0) return enclose(a.lo * a.lo, a.hi * a.hi);
    if (a.hi <= 0.0) return enclose(a.hi * a.hi, a.lo * a.lo);
    double m = a.mag();
    return Interval(0.0, ulp_up(m * m));
}

/// Quotient a / b for a divisor interval that excludes zero.
inline Interval idiv(const Interval& a, const Interval& b) {
    if (b.contains(0.0)) throw std::domain_error("idiv: divisor interval contains zero");
    const double c[4] = {a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi};
    return enclose(std::min({c[0], c[1], c[2], c[3]}), std::max({c[0], c[1], c[2], c[3]}));
}

}  // namespace trieig
