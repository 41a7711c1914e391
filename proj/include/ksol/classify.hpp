// Cox ring presentations of the varieties encoded by divisorial polytopes,
// and catalog matching by (degree, canonical presentation).
#ifndef KSOL_CLASSIFY_HPP
#define KSOL_CLASSIFY_HPP

#include <string>
#include <vector>

#include "ksol/divisorial.hpp"

namespace ksol {

struct CatalogEntry;  // catalog.hpp

struct AmbiguousMatch : std::runtime_error {
    explicit AmbiguousMatch(const std::string& what) : std::runtime_error(what) {}
};

// Trinomial presentation: one generator T_F per graph facet of each Phi_y,
// one generator S_G per box facet with deg Phi not identically -2, and one
// relation T^{mu(0)} + c T^{mu(inf)} + T^{mu(y)} per support point y beyond
// the first two.
struct CoxPresentation {
    struct Variable {
        std::string name;       // T1.., then S1..
        MarkedPoint point;      // owning support point (T variables only)
        long exponent = 1;      // mu_F
        bool is_box_facet = false;
    };
    struct Relation {
        // indices into `points`: the three support points whose monomials
        // appear; coefficient label attached to the middle monomial
        int first = 0, second = 1, third = 2;
        std::string coeff;  // empty = 1
    };

    std::vector<Variable> variables;
    std::vector<MarkedPoint> points;                 // support, canonical order
    std::vector<std::vector<long>> point_exponents;  // per point, sorted mu list
    std::vector<Relation> relations;

    std::string monomial_text(int point_index) const;
    std::string polynomial_text() const;  // relations joined by "; "
    // Canonical key under variable permutation, relation reordering and
    // support relabeling: sorted exponent multisets plus box-facet count.
    std::string canonical_key() const;
};

CoxPresentation cox_ring(const DivisorialPolytope& dp);

// The unique catalog entry with matching exact degree and canonical Cox
// presentation; nullptr when none matches. Throws AmbiguousMatch when the
// match is not unique.
const CatalogEntry* match_catalog(const DivisorialPolytope& dp,
                                  const std::vector<CatalogEntry>& catalog);

}  // namespace ksol

#endif
