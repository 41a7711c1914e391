#include "doctest.h"
#include "helpers.hpp"
#include "ksol/expint.hpp"

using namespace ksol;
using namespace ksol::testing;

namespace {
const Precision p53(53);
const Precision p106(106);
}  // namespace

TEST_CASE("simplex_exp closed forms") {
    // unit n-simplex at xi = 0 encloses 1/n!
    for (int n = 1; n <= 3; ++n) {
        std::vector<QVector> verts(n + 1, QVector(n, Rational(0)));
        for (int i = 0; i < n; ++i) verts[i + 1][i] = 1;
        Simplex s(verts);
        Rational fact = 1;
        for (int k = 2; k <= n; ++k) fact *= k;
        auto zero = simplex_exp(s, IntervalVector::zeros(n, p53));
        CHECK(zero.contains(1 / fact));
    }

    // 1-simplex [1,3] at xi = 1/2: (e^{3/2} - e^{1/2}) / (1/2)
    Simplex seg({pt({1}), pt({3})});
    auto xi = IntervalVector::from_rationals({Rational(1, 2)}, p53);
    auto val = simplex_exp(seg, xi);
    auto expected = (iexp(ival(3, 2, p53)) - iexp(ival(1, 2, p53))) / ival(1, 2, p53);
    CHECK(val.overlaps(expected));
    CHECK(val.width_upper() < 1e-12);
}

TEST_CASE("divided difference continuity across the cluster threshold") {
    // two nodes at distance 1e-14, then perturbed by 1e-12: results overlap
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const Rational t0 = rnd_rational(rng, -2, 2, 9);
        const Rational gap(1, 100000000000000L);  // 1e-14
        const Rational bump(1, 1000000000000L);   // 1e-12
        auto n0 = IntervalScalar::from_rational(t0, p53);
        auto n1 = IntervalScalar::from_rational(t0 + gap, p53);
        auto n1b = IntervalScalar::from_rational(t0 + gap + bump, p53);
        auto third = IntervalScalar::from_rational(t0 + 1, p53);
        auto a = exp_divided_difference({n0, n1, third}, p53);
        auto b = exp_divided_difference({n0, n1b, third}, p53);
        const double tol = 1e-10 * (1 + std::fabs(a.midpoint_double()));
        CHECK(a.lower_double() <= b.upper_double() + tol);
        CHECK(b.lower_double() <= a.upper_double() + tol);
    }
}

TEST_CASE("weighted_exp identities") {
    Simplex s({pt({0, 0}), pt({2, 0}), pt({0, 2})});
    // xi = 0: each barycentric weight integrates to vol/(n+1)
    for (int i = 0; i < 3; ++i) {
        auto w = weighted_exp(s, IntervalVector::zeros(2, p53), i);
        CHECK(w.contains(Rational(2, 3)));
    }
    // summing <v, v_i> * weighted_exp reproduces integrate_linear_exp
    auto xi = IntervalVector::from_rationals({Rational(1, 3), Rational(-1, 2)}, p53);
    const QVector v{Rational(2), Rational(1)};
    IntervalScalar sum = IntervalScalar::exact_zero(p53);
    for (int i = 0; i < 3; ++i)
        sum += IntervalScalar::from_rational(dot(v, s.vertices[i]), p53) *
               weighted_exp(s, xi, i);
    auto tri = Polytope::from_vertices({pt({0, 0}), pt({2, 0}), pt({0, 2})});
    auto direct = integrate_linear_exp(tri, xi, v);
    CHECK(sum.overlaps(direct));

    // 1-simplex [0,1], xi = 1, weight at vertex 1: integral of u e^u = 1
    Simplex unit({pt({0}), pt({1})});
    auto one = weighted_exp(unit, IntervalVector::from_rationals({Rational(1)}, p53), 1);
    CHECK(one.contains(Rational(1)));
}

TEST_CASE("integrate_exp examples") {
    // cubic Delta_inf at xi = 0 encloses the volume 3/2
    auto delta = Polytope::from_vertices({pt({-1, 0}), ptq({{0, 1}, {-1, 2}}), pt({3, 1})});
    auto vol = integrate_exp(delta, IntervalVector::zeros(2, p53));
    CHECK(vol.contains(Rational(3, 2)));
    CHECK(vol.width_upper() <= std::ldexp(1.5, 4 - 53));

    // interval [0,1] at xi = 1 encloses e - 1
    auto seg = Polytope::from_vertices({pt({0}), pt({1})});
    auto v = integrate_exp(seg, IntervalVector::from_rationals({Rational(1)}, p53));
    auto em1 = iexp(ival(1, 1, p53)) - ival(1, 1, p53);
    CHECK(v.overlaps(em1));
}

TEST_CASE("integrate_linear_exp examples") {
    // cubic Delta_inf with xi in [-1.247,-1.246]: enclosure within the
    // published bracket [-0.012, -0.005]
    auto delta = Polytope::from_vertices({pt({-1, 0}), ptq({{0, 1}, {-1, 2}}), pt({3, 1})});
    std::vector<IntervalScalar> comps;
    comps.push_back(IntervalScalar::from_rationals(Rational(-1247, 1000),
                                                   Rational(-1246, 1000), p53));
    comps.push_back(IntervalScalar::exact_zero(p53));
    auto val = integrate_linear_exp(delta, IntervalVector(std::move(comps)),
                                    {Rational(0), Rational(1)});
    CHECK(val.sign() == Sign::Negative);
    CHECK(val.lower_double() >= -0.012);
    CHECK(val.upper_double() <= -0.005);

    // centrally symmetric polytope at xi = 0: exactly zero
    auto sym = Polytope::from_vertices({pt({-1, -1}), pt({1, -1}), pt({-1, 1}), pt({1, 1})});
    auto z = integrate_linear_exp(sym, IntervalVector::zeros(2, p53),
                                  {Rational(3), Rational(-2)});
    CHECK(z.is_exact_zero());
}

TEST_CASE("linearity in the direction argument") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        auto poly = rnd_polytope(rng, 2, 6);
        QVector xi_q{rnd_rational(rng, -2, 2, 5), rnd_rational(rng, -2, 2, 5)};
        auto xi = IntervalVector::from_rationals(xi_q, p53);
        QVector v{Rational(1), Rational(2)};
        QVector w{Rational(-1), Rational(1, 3)};
        QVector vw = v + w;
        auto a = integrate_linear_exp(poly, xi, v);
        auto b = integrate_linear_exp(poly, xi, w);
        auto c = integrate_linear_exp(poly, xi, vw);
        CHECK(c.overlaps(a + b));
    }
}

TEST_CASE("affine equivariance under unimodular maps") {
    std::mt19937_64 rng(29);
    // A = [[1,1],[0,1]], b = (1,-2):  int_{AP+b} e^{<xi,u>}
    //   = e^{<xi,b>} int_P e^{<A^T xi, u>}
    for (int trial = 0; trial < 10; ++trial) {
        auto poly = rnd_polytope(rng, 2, 6);
        QVector xi_q{rnd_rational(rng, -1, 1, 4), rnd_rational(rng, -1, 1, 4)};
        std::vector<QVector> mapped;
        for (const auto& u : poly.vertices())
            mapped.push_back({u[0] + u[1] + 1, u[1] - 2});
        auto image = Polytope::from_vertices(mapped);
        auto lhs = integrate_exp(image, IntervalVector::from_rationals(xi_q, p53));
        QVector atxi{xi_q[0], xi_q[0] + xi_q[1]};
        auto rhs =
            iexp(IntervalVector::from_rationals(xi_q, p53).dot({Rational(1), Rational(-2)})) *
            integrate_exp(poly, IntervalVector::from_rationals(atxi, p53));
        CHECK(lhs.overlaps(rhs));
    }
}

TEST_CASE("series oracle agreement on random instances") {
    std::mt19937_64 rng(101);
    int done = 0;
    while (done < 60) {
        const int dim = 1 + static_cast<int>(rng() % 3);
        auto poly = rnd_polytope(rng, dim, 8);
        QVector xi_q;
        for (int j = 0; j < dim; ++j) xi_q.push_back(rnd_rational(rng, -1, 1, 8));
        auto xi = IntervalVector::from_rationals(xi_q, p106);
        auto primary = integrate_exp(poly, xi);
        // oracle: division-free centered series per simplex at 212 bits
        auto xi_hi = IntervalVector::from_rationals(xi_q, Precision(212));
        IntervalScalar oracle = IntervalScalar::exact_zero(Precision(212));
        for (const auto& s : poly.triangulation()) {
            std::vector<IntervalScalar> nodes;
            for (const auto& v : s.vertices) nodes.push_back(xi_hi.dot(v));
            Rational fact = 1;
            for (size_t k = 2; k <= s.vertices.size() - 1; ++k) fact *= static_cast<long>(k);
            oracle += IntervalScalar::from_rational(fact * s.volume, Precision(212)) *
                      exp_divided_difference_series(nodes, Precision(212));
        }
        CHECK(primary.overlaps(oracle));
        const Rational mid = (oracle.lower_rational() + oracle.upper_rational()) / 2;
        CHECK(primary.contains(mid));
        const double rel =
            primary.width_upper() / std::max(1e-300, std::fabs(primary.midpoint_double()));
        CHECK(rel <= 1e-6);
        ++done;
    }
}

TEST_CASE("reflection invariance of the integral") {
    // integrating e^{<xi,u>} over -P at -xi equals the original integral
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        auto poly = rnd_polytope(rng, 3, 7);
        QVector xi_q{rnd_rational(rng, -1, 1, 3), rnd_rational(rng, -1, 1, 3),
                     rnd_rational(rng, -1, 1, 3)};
        std::vector<QVector> negated;
        for (const auto& u : poly.vertices()) negated.push_back(Rational(-1) * u);
        auto mirror = Polytope::from_vertices(negated);
        QVector neg_xi = Rational(-1) * xi_q;
        auto a = integrate_exp(poly, IntervalVector::from_rationals(xi_q, p53));
        auto b = integrate_exp(mirror, IntervalVector::from_rationals(neg_xi, p53));
        CHECK(a.overlaps(b));
    }
}
