#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "ksol/classify.hpp"

using namespace ksol;
using namespace ksol::testing;

TEST_CASE("Cox presentation of the cubic") {
    auto pres = cox_ring(dp_of("dp/13"));
    // four T variables, no box-facet variables
    int tvars = 0, svars = 0;
    for (const auto& v : pres.variables) (v.is_box_facet ? svars : tvars)++;
    CHECK(tvars == 4);
    CHECK(svars == 0);
    CHECK(pres.relations.size() == 1);
    CHECK(pres.polynomial_text() == "T1*T2 + T3^4 + T4^2");
}

TEST_CASE("relation count is support size minus two") {
    CHECK(cox_ring(dp_of("dp/6")).relations.size() == 1);
    CHECK(cox_ring(dp_of("dp/27")).relations.size() == 2);   // four support points
    CHECK(cox_ring(dp_of("dp/18")).relations.size() == 2);
    // the Param point carries the coefficient slot
    auto pres = cox_ring(dp_of("dp/27"));
    CHECK(pres.relations[0].coeff.empty());
    CHECK(pres.relations[1].coeff == "c");
}

TEST_CASE("row 12: three variables with exponent 2") {
    auto pres = cox_ring(dp_of("dp/12"));
    int tvars = 0;
    for (const auto& v : pres.variables)
        if (!v.is_box_facet) {
            ++tvars;
            CHECK(v.exponent == 2);
        }
    CHECK(tvars == 3);
    CHECK(pres.polynomial_text() == "T1^2 + T2^2 + T3^2");
}

TEST_CASE("box-facet variables appear exactly when deg Phi is not -2 there") {
    // row 32: deg Phi(1) = -1, so the facet u = 1 contributes an S variable
    auto pres = cox_ring(dp_of("dp/32"));
    int svars = 0;
    for (const auto& v : pres.variables) svars += v.is_box_facet;
    CHECK(svars == 1);
    // the cubic has none
    auto pres13 = cox_ring(dp_of("dp/13"));
    for (const auto& v : pres13.variables) CHECK(!v.is_box_facet);
}

TEST_CASE("pairwise distinctness of (degree, canonical key) over the surfaces") {
    std::set<std::string> keys;
    for (const auto& e : load_builtin()) {
        if (e.id.rfind("dp/", 0) != 0) continue;
        const std::string key =
            to_string(degree(e.dp)) + "|" + cox_ring(e.dp).canonical_key();
        CHECK(keys.insert(key).second);
    }
    CHECK(keys.size() == 34);
}

TEST_CASE("match_catalog round-trips every surface and rejects perturbations") {
    const auto& cat = load_builtin();
    for (const auto& e : cat) {
        const auto* m = match_catalog(e.dp, cat);
        REQUIRE(m != nullptr);
        CHECK(m->id == e.id);
    }
    // the cubic data matches dp/13 and reports its catalog metadata
    const auto* m = match_catalog(dp_of("dp/13"), cat);
    REQUIRE(m != nullptr);
    CHECK(m->expected.singularity == "A5A1");
    CHECK(m->expected.rho == 1);

    // a valid variety outside the catalog: two-point support on [-1,1]
    DivisorialPolytope other;
    other.box = Polytope::from_vertices({pt({-1}), pt({1})});
    other.phi.emplace_back(MarkedPoint::zero(),
                           PLFunction{{AffinePiece::from_template({1}, 2)}});
    other.phi.emplace_back(MarkedPoint::infinity(),
                           PLFunction{{AffinePiece::from_template({-1}, 2)}});
    REQUIRE(validate(other).all_passed());
    CHECK(match_catalog(other, cat) == nullptr);
}
