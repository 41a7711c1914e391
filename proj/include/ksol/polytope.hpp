// Exact rational convex polytopes in ambient dimension <= 3: canonical
// V-representation, derived H-representation, deterministic triangulation,
// exact volumes/moments, and lattice point enumeration.
//
// All enumeration is brute force over small vertex/constraint sets (the
// polytopes in this project have at most ~12 vertices), with every predicate
// evaluated in exact rational arithmetic.
#ifndef KSOL_POLYTOPE_HPP
#define KSOL_POLYTOPE_HPP

#include <mutex>
#include <optional>
#include <vector>

#include "ksol/rational.hpp"

namespace ksol {

struct DegenerateInput : std::runtime_error {
    explicit DegenerateInput(const std::string& what) : std::runtime_error(what) {}
};

// Closed halfspace { x : <normal, x> <= offset } with primitive integer normal.
struct Halfspace {
    QVector normal;
    Rational offset;

    bool contains(const QVector& p) const { return dot(normal, p) <= offset; }
    bool on_boundary(const QVector& p) const { return dot(normal, p) == offset; }
    bool operator==(const Halfspace&) const = default;
};

// Scales so the normal is a primitive integer vector (offset scaled along).
Halfspace canonical_halfspace(QVector normal, Rational offset);

struct Simplex {
    std::vector<QVector> vertices;  // affinely independent, size = dim + 1
    Rational volume;                // |det(v_i - v_0)| / dim!
    explicit Simplex(std::vector<QVector> verts);
    QVector centroid() const;
};

// True iff p lies in the convex hull of pts (exact, Caratheodory enumeration).
bool in_convex_hull(const QVector& p, const std::vector<QVector>& pts);

// Dimension of the affine hull of a point set.
int affine_dimension(const std::vector<QVector>& pts);

class Polytope {
  public:
    Polytope() = default;
    Polytope(const Polytope& o);
    Polytope& operator=(const Polytope& o);

    // Canonicalizes: dedupes, drops non-extreme points, sorts lexicographically.
    static Polytope from_vertices(std::vector<QVector> pts);
    // Vertex-enumerates a *bounded* feasible region. The result may be empty
    // or lower-dimensional; callers check affine_dim().
    static Polytope from_halfspaces(int ambient_dim, const std::vector<Halfspace>& hs);

    const std::vector<QVector>& vertices() const { return vertices_; }
    int ambient_dim() const { return dim_; }
    int affine_dim() const;
    bool empty() const { return vertices_.empty(); }
    bool is_full_dimensional() const { return !empty() && affine_dim() == dim_; }

    // Facets of a full-dimensional polytope, canonical order.
    const std::vector<Halfspace>& halfspaces() const;
    // Vertex indices incident to halfspaces()[k], same order.
    std::vector<std::vector<int>> facet_vertex_sets() const;

    bool contains(const QVector& p) const;
    bool contains_origin_interior() const;

    // Deterministic triangulation of a full-dimensional polytope: fan from the
    // lexicographically smallest vertex over canonically ordered facets.
    const std::vector<Simplex>& triangulation() const;
    Rational volume() const;
    // Exact first moment: integral of x over the polytope (componentwise).
    QVector moment1() const;

    Polytope intersect(const std::vector<Halfspace>& extra) const;

    // All lattice points of scale * P. Throws TooLarge when the candidate
    // bounding box exceeds `budget` points.
    std::vector<std::vector<long>> lattice_points(long scale, long budget) const;

    bool operator==(const Polytope& o) const {
        return dim_ == o.dim_ && vertices_ == o.vertices_;
    }

  private:
    int dim_ = 0;
    std::vector<QVector> vertices_;  // canonical: extreme points, lex sorted

    mutable std::mutex cache_mu_;
    mutable std::optional<std::vector<Halfspace>> halfspaces_;
    mutable std::optional<std::vector<Simplex>> triangulation_;

    std::vector<Halfspace> compute_halfspaces() const;
    std::vector<Simplex> compute_triangulation() const;
};

struct TooLarge : std::runtime_error {
    explicit TooLarge(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ksol

#endif
