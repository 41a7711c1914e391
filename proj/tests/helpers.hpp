// Shared helpers for the test suites: catalog lookup, point literals, random
// rational polytopes, and interval evaluations of the closed forms used as
// independent oracles.
#ifndef KSOL_TESTS_HELPERS_HPP
#define KSOL_TESTS_HELPERS_HPP

#include <random>

#include "ksol/catalog.hpp"
#include "ksol/expint.hpp"

namespace ksol::testing {

inline QVector pt(std::vector<long> c) {
    QVector v;
    for (long x : c) v.push_back(Rational(x));
    return v;
}

inline QVector ptq(std::vector<std::pair<long, long>> c) {
    QVector v;
    for (auto [n, d] : c) {
        Rational q(n, d);
        q.canonicalize();
        v.push_back(q);
    }
    return v;
}

inline const DivisorialPolytope& dp_of(const std::string& id) {
    const auto* e = find_entry(load_builtin(), id);
    if (!e) throw std::runtime_error("missing builtin " + id);
    return e->dp;
}

inline Rational rnd_rational(std::mt19937_64& rng, long lo, long hi, long maxden) {
    std::uniform_int_distribution<long> num(lo * maxden, hi * maxden);
    std::uniform_int_distribution<long> den(1, maxden);
    Rational q(num(rng), den(rng) * maxden / maxden);
    q = Rational(num(rng), den(rng));
    q.canonicalize();
    if (q < lo) q = Rational(lo);
    if (q > hi) q = Rational(hi);
    return q;
}

// Random full-dimensional polytope with <= max_pts vertices in [-5,5]^dim.
inline Polytope rnd_polytope(std::mt19937_64& rng, int dim, int max_pts) {
    std::uniform_int_distribution<int> npts(dim + 1, max_pts);
    while (true) {
        std::vector<QVector> pts;
        const int n = npts(rng);
        for (int i = 0; i < n; ++i) {
            QVector v;
            for (int j = 0; j < dim; ++j) v.push_back(rnd_rational(rng, -5, 5, 4));
            pts.push_back(std::move(v));
        }
        Polytope p = Polytope::from_vertices(std::move(pts));
        if (p.is_full_dimensional()) return p;
    }
}

// ---- interval closed-form helpers -----------------------------------------

inline IntervalScalar ival(long num, long den, Precision p) {
    Rational q(num, den);
    q.canonicalize();
    return IntervalScalar::from_rational(q, p);
}

// The one-variable closed forms printed for the running example and for the
// first threefold, evaluated in interval arithmetic. `x` is the interval for
// xi (or xi_2).
struct ClosedForms {
    Precision p;
    explicit ClosedForms(Precision prec) : p(prec) {}

    IntervalScalar c(long num, long den = 1) const { return ival(num, den, p); }
    IntervalScalar pow(const IntervalScalar& x, int k) const {
        IntervalScalar r = c(1);
        for (int i = 0; i < k; ++i) r = r * x;
        return r;
    }

    // f(xi) = -(3/4)(xi+2)e^{-xi} + (1/4)((3 xi - 2)e^{3 xi} + 8)
    IntervalScalar cubic_f(const IntervalScalar& x) const {
        return c(-3, 4) * (x + c(2)) * iexp(-x) +
               c(1, 4) * ((c(3) * x - c(2)) * iexp(c(3) * x) + c(8));
    }
    // vol-scaled DF of the cubic for y = inf and y = 1
    IntervalScalar cubic_df_inf(const IntervalScalar& x) const {
        const IntervalScalar d = c(16) * pow(x, 3);
        return ((c(4) * x - c(3)) * iexp(c(3) * x) + c(8) * x) / d + c(3) * iexp(-x) / d;
    }
    IntervalScalar cubic_df_one(const IntervalScalar& x) const {
        const IntervalScalar d = c(16) * pow(x, 3);
        return ((c(8) * x - c(5)) * iexp(c(3) * x) + c(4) * x + c(8)) / d -
               c(3) * iexp(-x) / d;
    }
    // threefold 2.30: g and the four vol-scaled DF forms in xi_2
    IntervalScalar t230_g(const IntervalScalar& x) const {
        return ((c(2) * pow(x, 3) - c(3) * x - c(3)) * iexp(c(4) * x) +
                c(12) * x * iexp(c(3) * x) + c(3) * x + c(3)) *
               iexp(c(-3) * x) / pow(x, 4);
    }
    IntervalScalar t230_h0(const IntervalScalar& x) const {
        return ((c(2) * pow(x, 3) - c(3) * x - c(3)) * iexp(c(4) * x) +
                c(3) * (c(3) * pow(x, 2) + c(2)) * iexp(c(3) * x) - c(3) * x - c(3)) *
               iexp(c(-3) * x) / (c(3) * pow(x, 4));
    }
    IntervalScalar t230_h1(const IntervalScalar& x) const {
        return ((c(8) * pow(x, 3) + c(6) * pow(x, 2) - c(3)) * iexp(c(4) * x) -
                c(12) * (c(3) * pow(x, 2) - c(3) * x + c(1)) * iexp(c(3) * x) + c(12) * x +
                c(15)) *
               iexp(c(-3) * x) / (c(6) * pow(x, 4));
    }
    IntervalScalar t230_hinf(const IntervalScalar& x) const {
        return -(c(2) * (c(2) * pow(x, 3) - c(3) * x - c(3)) * iexp(c(4) * x) -
                 c(3) * (c(3) * pow(x, 2) - c(12) * x + c(2)) * iexp(c(3) * x) + c(12) * x +
                 c(12)) *
               iexp(c(-3) * x) / (c(6) * pow(x, 4));
    }
    IntervalScalar t230_hgen(const IntervalScalar& x) const {
        return ((c(8) * pow(x, 3) + c(6) * pow(x, 2) - c(3)) * iexp(c(4) * x) -
                c(3) * (c(3) * pow(x, 2) - c(2)) * iexp(c(3) * x) - c(6) * x - c(3)) *
               iexp(c(-3) * x) / (c(6) * pow(x, 4));
    }
};

}  // namespace ksol::testing

#endif
