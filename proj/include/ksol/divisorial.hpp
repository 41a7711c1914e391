// Divisorial polytopes: a lattice base polytope together with one concave
// piecewise affine function per marked point of P^1, the validation conditions
// (i)-(v), the anticanonical degree, the special-fiber polytopes of the
// induced degenerations, admissibility, lattice symmetries and the common
// polyhedral subdivision.
#ifndef KSOL_DIVISORIAL_HPP
#define KSOL_DIVISORIAL_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ksol/polytope.hpp"

namespace ksol {

struct InvalidData : std::runtime_error {
    explicit InvalidData(const std::string& what) : std::runtime_error(what) {}
};

// A marked point of P^1. Canonical order 0 < inf < 1 < c-labels, matching the
// normalisation used by the Cox ring construction.
struct MarkedPoint {
    enum class Tag { Zero = 0, Infinity = 1, One = 2, Param = 3 };
    Tag tag = Tag::Zero;
    std::string label;  // only for Param

    static MarkedPoint zero() { return {Tag::Zero, ""}; }
    static MarkedPoint infinity() { return {Tag::Infinity, ""}; }
    static MarkedPoint one() { return {Tag::One, ""}; }
    static MarkedPoint param(std::string l) { return {Tag::Param, std::move(l)}; }

    std::string name() const;
    static std::optional<MarkedPoint> from_name(const std::string& s);

    auto operator<=>(const MarkedPoint&) const = default;
};

// One affine piece u -> a + <b, u>. A piece conforms to the required template
// (<v,u> - mu + 1)/mu exactly when mu := 1/(a+1) is a positive integer,
// v := mu*b is integral, and gcd(content(v), mu) = 1; the constant-zero piece
// is v = 0, mu = 1.
struct AffinePiece {
    Rational a;
    QVector b;

    static AffinePiece from_template(QVector v, long mu);
    Rational eval(const QVector& u) const { return a + dot(b, u); }

    struct TemplateForm {
        std::vector<long> v;
        long mu;
    };
    std::optional<TemplateForm> template_form() const;
    bool template_ok() const { return template_form().has_value(); }

    auto operator<=>(const AffinePiece&) const = default;
};

// Concave PL function: pointwise minimum of its affine pieces.
struct PLFunction {
    std::vector<AffinePiece> pieces;

    Rational eval(const QVector& u) const;
    // Full-dimensional cells of the subdivision of `domain` induced by the
    // pieces, paired with the piece active on each cell. Cells with empty or
    // lower-dimensional activity regions are dropped; canonical order.
    std::vector<std::pair<Polytope, AffinePiece>> active_cells(const Polytope& domain) const;

    auto operator<=>(const PLFunction&) const = default;
};

struct DivisorialPolytope {
    Polytope box;                                            // lattice polytope, 0 in box
    std::vector<std::pair<MarkedPoint, PLFunction>> phi;     // sorted by marked point

    int dim() const { return box.ambient_dim(); }
    const PLFunction* phi_at(const MarkedPoint& y) const;
    Rational deg_phi(const QVector& u) const;       // sum_y Phi_y(u)
    Rational deg_phi_bar(const QVector& u) const { return deg_phi(u) + 2; }
    void sort_phi();

    bool operator==(const DivisorialPolytope&) const = default;
};

// Either a marked point or the generic point of P^1 (Phi identically 0).
struct DegenerationPoint {
    std::optional<MarkedPoint> y;  // nullopt = generic

    static DegenerationPoint at(MarkedPoint p) { return {std::move(p)}; }
    static DegenerationPoint generic() { return {std::nullopt}; }
    bool is_generic() const { return !y.has_value(); }
    std::string name() const { return y ? y->name() : "generic"; }

    auto operator<=>(const DegenerationPoint&) const = default;
};

struct FiberPolytope {
    Polytope polytope;  // in M_R x R
    DegenerationPoint source;
};

struct ConditionResult {
    bool passed = true;
    std::string detail;
    std::optional<QVector> witness;
};

struct ValidationReport {
    ConditionResult structural;      // lattice box, 0 in box, nonempty pieces
    ConditionResult conditions[5];   // (i)..(v)
    bool origin_interior = false;
    std::vector<std::string> notes;  // e.g. non-integer facet offsets under (v)

    bool all_passed() const;
    std::string summary() const;
};

ValidationReport validate(const DivisorialPolytope& dp);

// Common refinement of all Phi_y subdivisions; on each cell every Phi_y is a
// single affine piece (order aligned with dp.phi).
struct SubdivisionCell {
    Polytope cell;
    std::vector<AffinePiece> piece_per_phi;
};
std::vector<SubdivisionCell> subdivision_cells(const DivisorialPolytope& dp);

// Anticanonical degree (-K_X)^n = n! * integral over box of (2 + deg Phi),
// n = dim box + 1, evaluated exactly in rational arithmetic.
Rational degree(const DivisorialPolytope& dp);

// The special-fiber polytope Delta_y in M_R x R: fibers
// [-1 - sum_{z != y} Phi_z(u), 1 + Phi_y(u)] over u in box.
FiberPolytope special_fiber(const DivisorialPolytope& dp, const DegenerationPoint& y);

// All admissible degeneration points: y such that at most one z != y in the
// support has Phi_z(0) non-integral (generic included under the same rule).
std::vector<DegenerationPoint> admissible_points(const DivisorialPolytope& dp);

// Integer matrix sigma (row-major, acting on M) with |det| = 1 permuting the
// vertices of box and preserving deg Phi.
struct Symmetry {
    std::vector<std::vector<long>> matrix;

    QVector apply(const QVector& u) const;        // sigma * u
    QVector apply_transpose(const QVector& x) const;  // sigma^T * x (action on N)
    bool is_identity() const;
};

std::vector<Symmetry> symmetries(const DivisorialPolytope& dp);

// Rational basis of the common fixed subspace of the transposed symmetries.
std::vector<QVector> fixed_subspace(const std::vector<Symmetry>& sigmas, int dim);

}  // namespace ksol

#endif
