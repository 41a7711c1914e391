#include <random>

#include "doctest.h"
#include "ksol/catalog.hpp"
#include "ksol/divisorial.hpp"

using namespace ksol;

namespace {

QVector pt(std::vector<long> c) {
    QVector v;
    for (long x : c) v.push_back(Rational(x));
    return v;
}

QVector ptq(std::vector<std::pair<long, long>> c) {
    QVector v;
    for (auto [n, d] : c) {
        Rational q(n, d);
        q.canonicalize();
        v.push_back(q);
    }
    return v;
}

const DivisorialPolytope& dp_of(const std::string& id) {
    const auto* e = find_entry(load_builtin(), id);
    REQUIRE(e != nullptr);
    return e->dp;
}

// The running example: box [-1,3], phi_0 = min{-u,0}, phi_inf = (u-3)/4,
// phi_1 = (u-1)/2.
DivisorialPolytope cubic() { return dp_of("dp/13"); }

}  // namespace

TEST_CASE("hull canonicalisation drops interior and collinear points") {
    auto p = Polytope::from_vertices({pt({0, 0}), pt({2, 0}), pt({0, 2}), pt({1, 0}),
                                      ptq({{1, 2}, {1, 2}})});
    CHECK(p.vertices().size() == 3);
    CHECK(p.volume() == 2);
}

TEST_CASE("H/V round trip is the identity on canonical vertices") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> coord(-5, 5);
    std::uniform_int_distribution<long> den(1, 3);
    std::uniform_int_distribution<int> npts(4, 8);
    for (int dim = 1; dim <= 3; ++dim) {
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<QVector> pts;
            for (int i = 0; i < npts(rng); ++i) {
                QVector v;
                for (int j = 0; j < dim; ++j) {
                    Rational q(coord(rng), den(rng));
                    q.canonicalize();
                    v.push_back(q);
                }
                pts.push_back(std::move(v));
            }
            auto p = Polytope::from_vertices(pts);
            if (!p.is_full_dimensional()) continue;
            auto q = Polytope::from_halfspaces(dim, p.halfspaces());
            CHECK(p == q);
        }
    }
}

TEST_CASE("triangulation conserves volume") {
    auto square = Polytope::from_vertices({pt({0, 0}), pt({1, 0}), pt({0, 1}), pt({1, 1})});
    CHECK(square.triangulation().size() == 2);
    CHECK(square.volume() == 1);

    auto triangle = Polytope::from_vertices({pt({0, 0}), pt({1, 0}), pt({0, 1})});
    CHECK(triangle.triangulation().size() == 1);

    std::mt19937_64 rng(23);
    std::uniform_int_distribution<long> coord(-4, 4);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<QVector> pts;
        for (int i = 0; i < 8; ++i) pts.push_back(pt({coord(rng), coord(rng), coord(rng)}));
        auto p = Polytope::from_vertices(pts);
        if (!p.is_full_dimensional()) continue;
        Rational total = 0;
        for (const auto& s : p.triangulation()) total += s.volume;
        CHECK(total == p.volume());
        // simplices use only polytope vertices
        for (const auto& s : p.triangulation())
            for (const auto& v : s.vertices)
                CHECK(std::find(p.vertices().begin(), p.vertices().end(), v) !=
                      p.vertices().end());
    }
}

TEST_CASE("validate accepts the running example and reports constructed violations") {
    auto dp = cubic();
    const auto rep = validate(dp);
    CHECK(rep.all_passed());
    // deg Phi = -2 at both endpoints, so condition (v) is void
    CHECK(rep.conditions[4].passed);

    // replace phi_1 by (u-1)/3: graph vertex at u=3 has value 2/3
    DivisorialPolytope bad = dp;
    bad.phi[2].second.pieces = {AffinePiece{Rational(-1, 3), {Rational(1, 3)}}};
    const auto rep2 = validate(bad);
    CHECK(!rep2.conditions[1].passed);
    REQUIRE(rep2.conditions[1].witness.has_value());
    CHECK((*rep2.conditions[1].witness)[0] == 3);

    // Table row 12: three affine pieces, all conditions pass
    CHECK(validate(dp_of("dp/12")).all_passed());
}

TEST_CASE("degree of the running example and the threefolds") {
    CHECK(degree(cubic()) == 3);
    CHECK(degree(dp_of("dp/2")) == 1);
    CHECK(degree(dp_of("3fold/2.30")) == 46);
    CHECK(degree(dp_of("3fold/3.23")) == 42);
}

TEST_CASE("special fiber polytopes match the published vertex lists") {
    // cubic, y = inf
    auto f = special_fiber(cubic(), DegenerationPoint::at(MarkedPoint::infinity()));
    auto expected = Polytope::from_vertices(
        {pt({-1, 0}), ptq({{0, 1}, {-1, 2}}), pt({3, 1})});
    CHECK(f.polytope == expected);

    // threefold 2.30, all four degenerations
    const auto& t230 = dp_of("3fold/2.30");
    auto d0 = special_fiber(t230, DegenerationPoint::at(MarkedPoint::zero()));
    CHECK(d0.polytope ==
          Polytope::from_vertices({pt({-3, 0, 1}), pt({-2, 1, 1}), pt({2, 1, -1}),
                                   pt({3, 0, -2}), pt({0, -3, 1}), pt({0, 1, 1})}));
    auto d1 = special_fiber(t230, DegenerationPoint::at(MarkedPoint::one()));
    CHECK(d1.polytope ==
          Polytope::from_vertices({pt({-3, 0, 1}), pt({-2, 1, 1}), pt({0, 1, 0}),
                                   pt({2, 1, 1}), pt({3, 0, 1}), pt({0, -3, -2})}));
    auto dinf = special_fiber(t230, DegenerationPoint::at(MarkedPoint::infinity()));
    CHECK(dinf.polytope ==
          Polytope::from_vertices({pt({-3, 0, -1}), pt({-2, 1, -1}), pt({2, 1, 1}),
                                   pt({3, 0, 2}), pt({0, -3, 2}), pt({0, 0, -1}),
                                   pt({0, 1, -1})}));
    auto dgen = special_fiber(t230, DegenerationPoint::generic());
    CHECK(dgen.polytope ==
          Polytope::from_vertices({ptq({{0, 1}, {0, 1}, {-1, 2}}), pt({3, 0, 1}),
                                   pt({2, 1, 1}), pt({0, 1, 0}), pt({-2, 1, 1}),
                                   pt({-3, 0, 1}), pt({0, -3, 1})}));

    // threefold 3.23, all four degenerations
    const auto& t323 = dp_of("3fold/3.23");
    CHECK(special_fiber(t323, DegenerationPoint::at(MarkedPoint::zero())).polytope ==
          Polytope::from_vertices({pt({-3, 0, 1}), pt({-2, 1, 1}), pt({0, 1, 0}),
                                   pt({0, 1, 1}), pt({1, 1, 0}), pt({2, 0, -1}),
                                   pt({2, -1, -1}), pt({0, -3, 1}), pt({1, 0, -1})}));
    CHECK(special_fiber(t323, DegenerationPoint::at(MarkedPoint::one())).polytope ==
          Polytope::from_vertices({pt({-3, 0, 1}), pt({-2, 1, 1}), pt({1, 1, 1}),
                                   pt({2, 0, 1}), pt({2, -1, 0}), pt({0, -3, -2}),
                                   pt({0, 1, 0})}));
    CHECK(special_fiber(t323, DegenerationPoint::at(MarkedPoint::infinity())).polytope ==
          Polytope::from_vertices({pt({-3, 0, -1}), pt({-2, 1, -1}), pt({0, 1, 0}),
                                   pt({1, 1, 0}), pt({2, 0, 1}), pt({2, -1, 2}),
                                   pt({0, -3, 2}), pt({0, 1, -1}), pt({0, 0, -1})}));
    CHECK(special_fiber(t323, DegenerationPoint::generic()).polytope ==
          Polytope::from_vertices({ptq({{0, 1}, {0, 1}, {-1, 2}}), pt({0, 1, 0}),
                                   pt({1, 0, 0}), pt({1, 1, 1}), pt({2, 0, 1}),
                                   pt({2, -1, 1}), pt({-2, 1, 1}), pt({-3, 0, 1}),
                                   pt({0, -3, 1})}));

    // destabilising fibers of the unstable surfaces
    CHECK(special_fiber(dp_of("dp/22"), DegenerationPoint::at(MarkedPoint::one())).polytope ==
          Polytope::from_vertices({pt({-1, 1}), pt({0, -1}), pt({2, -1})}));
    CHECK(special_fiber(dp_of("dp/28"), DegenerationPoint::at(MarkedPoint::one())).polytope ==
          Polytope::from_vertices({pt({-1, 1}), pt({0, -1}), pt({1, -1}), pt({1, 0})}));
    CHECK(special_fiber(dp_of("dp/31"), DegenerationPoint::at(MarkedPoint::one())).polytope ==
          Polytope::from_vertices({pt({-1, 1}), pt({0, -1}), pt({2, -1}), pt({1, 0})}));
    CHECK(special_fiber(dp_of("dp/33"), DegenerationPoint::at(MarkedPoint::one())).polytope ==
          Polytope::from_vertices({pt({-1, 1}), pt({0, -1}), pt({3, -1})}));
}

TEST_CASE("fiber height equals 2 + deg Phi and volume is degree/n!") {
    std::mt19937_64 rng(5);
    for (const char* id : {"dp/13", "dp/22", "3fold/2.30", "3fold/3.23"}) {
        const auto& dp = dp_of(id);
        const Rational expected_vol = [&]() -> Rational {
            Rational f = 1;
            for (int k = 2; k <= dp.dim() + 1; ++k) f *= k;
            return Rational(degree(dp) / f);
        }();
        std::vector<DegenerationPoint> ys;
        for (const auto& [p, f] : dp.phi) ys.push_back(DegenerationPoint::at(p));
        ys.push_back(DegenerationPoint::generic());
        for (const auto& y : ys) {
            const auto fib = special_fiber(dp, y);
            CHECK(fib.polytope.volume() == expected_vol);
            // fiber extent over random rational points of the box
            std::uniform_int_distribution<long> num(-12, 12);
            for (int t = 0; t < 100; ++t) {
                QVector u;
                for (int j = 0; j < dp.dim(); ++j) {
                    Rational q(num(rng), 7);
                    q.canonicalize();
                    u.push_back(q);
                }
                if (!dp.box.contains(u)) continue;
                // extent = (1 + Phi_y(u)) - (-1 - sum_{z != y} Phi_z(u))
                Rational top = 1, bottom = -1;
                for (const auto& [p, f] : dp.phi) {
                    if (!y.is_generic() && p == *y.y)
                        top += f.eval(u);
                    else
                        bottom -= f.eval(u);
                }
                CHECK(top - bottom == dp.deg_phi_bar(u));
            }
        }
    }
}

TEST_CASE("admissible points") {
    // cubic: phi values at 0 are (0, -3/4, -1/2)
    auto adm = admissible_points(cubic());
    REQUIRE(adm.size() == 2);
    CHECK(adm[0] == DegenerationPoint::at(MarkedPoint::infinity()));
    CHECK(adm[1] == DegenerationPoint::at(MarkedPoint::one()));

    // row 2 (E8): all three values non-integral, no admissible choice
    CHECK(admissible_points(dp_of("dp/2")).empty());

    // threefold 2.30: phi values at 0 are (0, 0, -1/2)
    auto adm230 = admissible_points(dp_of("3fold/2.30"));
    REQUIRE(adm230.size() == 4);
    CHECK(adm230[0] == DegenerationPoint::at(MarkedPoint::zero()));
    CHECK(adm230[1] == DegenerationPoint::at(MarkedPoint::infinity()));
    CHECK(adm230[2] == DegenerationPoint::at(MarkedPoint::one()));
    CHECK(adm230[3] == DegenerationPoint::generic());
}

TEST_CASE("symmetries and fixed subspaces") {
    // threefold 2.30: reflection along the vertical axis
    auto syms = symmetries(dp_of("3fold/2.30"));
    bool has_reflection = false;
    for (const auto& s : syms)
        if (s.matrix == std::vector<std::vector<long>>{{-1, 0}, {0, 1}}) has_reflection = true;
    CHECK(has_reflection);
    auto fs = fixed_subspace(syms, 2);
    REQUIRE(fs.size() == 1);
    CHECK(fs[0] == pt({0, 1}));

    // threefold 3.23: only the identity
    auto syms323 = symmetries(dp_of("3fold/3.23"));
    REQUIRE(syms323.size() == 1);
    CHECK(syms323[0].is_identity());
    CHECK(fixed_subspace(syms323, 2).size() == 2);

    // 1-D: row 25 has even deg Phi-bar (2 - 2|u|), so u -> -u is a symmetry
    auto syms25 = symmetries(dp_of("dp/25"));
    CHECK(syms25.size() == 2);
    CHECK(fixed_subspace(syms25, 1).empty());
    // row 12 has deg Phi-bar = (u+1)/2, not even: identity only
    CHECK(symmetries(dp_of("dp/12")).size() == 1);
    // the cubic has none beyond the identity
    auto syms13 = symmetries(cubic());
    CHECK(syms13.size() == 1);

    // exact check: every returned symmetry preserves deg Phi at subdivision
    // vertices
    for (const char* id : {"dp/12", "dp/25", "3fold/2.30"}) {
        for (const auto& s : symmetries(dp_of(id))) {
            for (const auto& sc : subdivision_cells(dp_of(id)))
                for (const auto& u : sc.cell.vertices())
                    CHECK(dp_of(id).deg_phi(u) == dp_of(id).deg_phi(s.apply(u)));
        }
    }
}

TEST_CASE("subdivision cells") {
    // cubic: cells [-1,0] and [0,3]
    auto cells = subdivision_cells(cubic());
    REQUIRE(cells.size() == 2);
    Rational total = 0;
    for (const auto& sc : cells) total += sc.cell.volume();
    CHECK(total == 4);

    // all phi affine: a single cell
    auto cells12 = subdivision_cells(dp_of("dp/12"));
    CHECK(cells12.size() == 1);

    // threefold 2.30: four cells cut by the axes
    auto cells230 = subdivision_cells(dp_of("3fold/2.30"));
    CHECK(cells230.size() == 4);
}

TEST_CASE("triangulation of the 2.30 degree cross-check polytope") {
    auto d0 = Polytope::from_vertices({pt({-3, 0, 1}), pt({-2, 1, 1}), pt({2, 1, -1}),
                                       pt({3, 0, -2}), pt({0, -3, 1}), pt({0, 1, 1})});
    CHECK(d0.volume() == rat(46, 6));
}

TEST_CASE("lattice points with budget") {
    auto f = special_fiber(cubic(), DegenerationPoint::at(MarkedPoint::infinity()));
    auto pts = f.polytope.lattice_points(1, 1000);
    CHECK(pts.size() == 4);
    auto pts2 = f.polytope.lattice_points(2, 1000);
    CHECK(pts2.size() == 10);
    CHECK_THROWS_AS(f.polytope.lattice_points(1000, 10), TooLarge);
}
