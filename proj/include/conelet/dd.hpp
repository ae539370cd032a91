#pragma once
// Double-double arithmetic: ~31 significant decimal digits from pairs of
// doubles. Used to polish polynomial roots and carry exact integer
// coefficients through moment sums without an external big-float dependency.
#include <cmath>

namespace conelet {

struct dd {
    double hi = 0.0, lo = 0.0;
    dd() = default;
    constexpr dd(double h) : hi(h), lo(0.0) {}
    constexpr dd(double h, double l) : hi(h), lo(l) {}
};

inline dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline dd quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline dd operator+(dd a, dd b) {
    dd s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline dd operator-(dd a) { return {-a.hi, -a.lo}; }
inline dd operator-(dd a, dd b) { return a + (-b); }

inline dd operator*(dd a, dd b) {
    dd p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline dd operator/(dd a, dd b) {
    double q1 = a.hi / b.hi;
    dd r = a - b * dd(q1);
    double q2 = r.hi / b.hi;
    r = r - b * dd(q2);
    double q3 = r.hi / b.hi;
    dd q = quick_two_sum(q1, q2);
    return q + dd(q3);
}

inline bool operator<(dd a, dd b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline bool operator>(dd a, dd b) { return b < a; }

inline dd dd_sqrt(dd a) {
    if (a.hi <= 0.0) return {0.0, 0.0};
    double x = 1.0 / std::sqrt(a.hi);
    double ax = a.hi * x;
    dd err = a - two_prod(ax, ax);
    return quick_two_sum(ax, err.hi * (x * 0.5));
}

inline dd dd_abs(dd a) { return a.hi < 0.0 ? -a : a; }

inline double to_double(dd a) { return a.hi + a.lo; }

// complex double-double, enough for Newton polishing of conjugate root pairs
struct cdd {
    dd re, im;
};

inline cdd operator+(cdd a, cdd b) { return {a.re + b.re, a.im + b.im}; }
inline cdd operator-(cdd a, cdd b) { return {a.re - b.re, a.im - b.im}; }
inline cdd operator*(cdd a, cdd b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline cdd operator/(cdd a, cdd b) {
    dd den = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}

inline dd cdd_abs2(cdd a) { return a.re * a.re + a.im * a.im; }

// principal square root
inline cdd cdd_sqrt(cdd z) {
    dd r = dd_sqrt(cdd_abs2(z));
    dd u2 = (r + z.re) * dd(0.5);
    if (u2.hi <= 0.0) {
        // purely negative real axis
        dd v = dd_sqrt(-z.re);
        return {dd(0.0), z.im.hi >= 0.0 ? v : -v};
    }
    dd u = dd_sqrt(u2);
    dd v = z.im / (u * dd(2.0));
    return {u, v};
}

} // namespace conelet
