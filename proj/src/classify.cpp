#include "ksol/classify.hpp"

#include <algorithm>
#include <sstream>

#include "ksol/catalog.hpp"

namespace ksol {

std::string CoxPresentation::monomial_text(int point_index) const {
    std::ostringstream os;
    bool first = true;
    for (const auto& v : variables) {
        if (v.is_box_facet || !(v.point == points[point_index])) continue;
        if (!first) os << '*';
        os << v.name;
        if (v.exponent != 1) os << '^' << v.exponent;
        first = false;
    }
    return os.str();
}

std::string CoxPresentation::polynomial_text() const {
    std::ostringstream os;
    for (size_t r = 0; r < relations.size(); ++r) {
        if (r) os << "; ";
        const auto& rel = relations[r];
        os << monomial_text(rel.first) << " + ";
        if (!rel.coeff.empty()) os << rel.coeff << '*';
        os << monomial_text(rel.second) << " + " << monomial_text(rel.third);
    }
    return os.str();
}

std::string CoxPresentation::canonical_key() const {
    std::vector<std::string> parts;
    for (const auto& exps : point_exponents) {
        std::ostringstream os;
        os << '[';
        for (size_t i = 0; i < exps.size(); ++i) {
            if (i) os << ',';
            os << exps[i];
        }
        os << ']';
        parts.push_back(os.str());
    }
    std::sort(parts.begin(), parts.end());
    std::ostringstream key;
    for (const auto& p : parts) key << p;
    int box_vars = 0;
    for (const auto& v : variables) box_vars += v.is_box_facet;
    key << ";S=" << box_vars;
    return key.str();
}

CoxPresentation cox_ring(const DivisorialPolytope& dp) {
    const auto rep = validate(dp);
    if (!rep.all_passed()) throw InvalidData("cox_ring: validation failed\n" + rep.summary());
    CoxPresentation pres;
    int tcount = 0;
    for (const auto& [p, f] : dp.phi) {
        pres.points.push_back(p);
        std::vector<long> exps;
        for (const auto& [cell, piece] : f.active_cells(dp.box)) {
            const auto tf = piece.template_form();
            CoxPresentation::Variable v;
            v.name = "T" + std::to_string(++tcount);
            v.point = p;
            v.exponent = tf->mu;
            pres.variables.push_back(std::move(v));
            exps.push_back(tf->mu);
        }
        std::sort(exps.begin(), exps.end());
        pres.point_exponents.push_back(std::move(exps));
    }
    // box facets with deg Phi not identically -2
    const auto cells = subdivision_cells(dp);
    int scount = 0;
    for (const auto& h : dp.box.halfspaces()) {
        bool identically_m2 = true;
        for (const auto& sc : cells) {
            std::vector<Halfspace> eq{h, Halfspace{Rational(-1) * h.normal, -h.offset}};
            const Polytope face = sc.cell.intersect(eq);
            for (const auto& u : face.vertices())
                if (dp.deg_phi(u) != -2) identically_m2 = false;
        }
        if (identically_m2) continue;
        CoxPresentation::Variable v;
        v.name = "S" + std::to_string(++scount);
        v.is_box_facet = true;
        pres.variables.push_back(std::move(v));
    }
    // one relation per support point beyond the first two, coefficient slot
    // labelled by the point (the normalised third point gets coefficient 1)
    for (size_t j = 2; j < pres.points.size(); ++j) {
        CoxPresentation::Relation rel;
        rel.first = 0;
        rel.second = 1;
        rel.third = static_cast<int>(j);
        rel.coeff = pres.points[j].tag == MarkedPoint::Tag::Param ? pres.points[j].name() : "";
        pres.relations.push_back(rel);
    }
    return pres;
}

const CatalogEntry* match_catalog(const DivisorialPolytope& dp,
                                  const std::vector<CatalogEntry>& catalog) {
    const Rational deg = degree(dp);
    const std::string key = cox_ring(dp).canonical_key();
    const CatalogEntry* found = nullptr;
    for (const auto& e : catalog) {
        if (degree(e.dp) != deg) continue;
        if (cox_ring(e.dp).canonical_key() != key) continue;
        if (found)
            throw AmbiguousMatch("catalog entries " + found->id + " and " + e.id +
                                 " both match");
        found = &e;
    }
    return found;
}

}  // namespace ksol
