#include "ksol/polytope.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

namespace ksol {

Halfspace canonical_halfspace(QVector normal, Rational offset) {
    // common denominator, then divide by integer content
    mpz_class den = 1;
    for (const auto& x : normal) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den().get_mpz_t());
    Rational scale(den, 1);
    for (auto& x : normal) x *= scale;
    offset *= scale;
    mpz_class g = 0;
    for (const auto& x : normal) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num().get_mpz_t());
    if (g == 0) throw std::invalid_argument("zero normal");
    Rational inv(1, g);
    inv.canonicalize();
    for (auto& x : normal) x *= inv;
    offset *= inv;
    return Halfspace{std::move(normal), std::move(offset)};
}

Simplex::Simplex(std::vector<QVector> verts) : vertices(std::move(verts)) {
    const size_t d = vertices.empty() ? 0 : vertices[0].size();
    if (vertices.size() != d + 1) throw DegenerateInput("simplex needs dim+1 vertices");
    QMatrix m(d, QVector(d));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) m[i][j] = vertices[i + 1][j] - vertices[0][j];
    volume = determinant(std::move(m));
    if (volume < 0) volume = -volume;
    Rational fact = 1;
    for (size_t k = 2; k <= d; ++k) fact *= static_cast<long>(k);
    volume /= fact;
    if (volume == 0) throw DegenerateInput("degenerate simplex");
}

QVector Simplex::centroid() const {
    const size_t d = vertices[0].size();
    QVector c(d, Rational(0));
    for (const auto& v : vertices)
        for (size_t j = 0; j < d; ++j) c[j] += v[j];
    const Rational inv(1, static_cast<long>(vertices.size()));
    for (auto& x : c) x *= inv;
    return c;
}

int affine_dimension(const std::vector<QVector>& pts) {
    if (pts.empty()) return -1;
    if (pts.size() == 1) return 0;
    QMatrix rows;
    for (size_t i = 1; i < pts.size(); ++i) rows.push_back(pts[i] - pts[0]);
    return matrix_rank(std::move(rows));
}

// Tests p = sum lambda_i q_i with lambda >= 0, sum lambda = 1, over one subset.
static bool barycentric_feasible(const QVector& p, const std::vector<QVector>& sub) {
    const size_t d = p.size();
    const size_t k = sub.size();
    QMatrix a(d + 1, QVector(k));
    QVector b(d + 1);
    for (size_t i = 0; i < d; ++i) {
        for (size_t j = 0; j < k; ++j) a[i][j] = sub[j][i];
        b[i] = p[i];
    }
    for (size_t j = 0; j < k; ++j) a[d][j] = 1;
    b[d] = 1;
    auto lam = solve_linear(std::move(a), std::move(b));
    if (!lam) return false;
    for (const auto& l : *lam)
        if (l < 0) return false;
    return true;
}

bool in_convex_hull(const QVector& p, const std::vector<QVector>& pts) {
    const int adim = affine_dimension(pts);
    if (adim < 0) return false;
    const size_t max_k = static_cast<size_t>(adim) + 1;
    const size_t n = pts.size();
    // Caratheodory: p in conv(pts) iff p in conv of <= adim+1 of them.
    std::vector<size_t> idx;
    // iterate subsets of size 1..max_k
    for (size_t k = 1; k <= std::min(max_k, n); ++k) {
        std::vector<size_t> c(k);
        for (size_t i = 0; i < k; ++i) c[i] = i;
        while (true) {
            std::vector<QVector> sub;
            sub.reserve(k);
            for (size_t i : c) sub.push_back(pts[i]);
            if (barycentric_feasible(p, sub)) return true;
            // next combination
            size_t i = k;
            while (i-- > 0) {
                if (c[i] != i + n - k) {
                    ++c[i];
                    for (size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
                    break;
                }
                if (i == 0) goto next_k;
            }
        }
    next_k:;
    }
    return false;
}

Polytope::Polytope(const Polytope& o) : dim_(o.dim_), vertices_(o.vertices_) {}

Polytope& Polytope::operator=(const Polytope& o) {
    if (this != &o) {
        dim_ = o.dim_;
        vertices_ = o.vertices_;
        std::scoped_lock lk(cache_mu_);
        halfspaces_.reset();
        triangulation_.reset();
    }
    return *this;
}

Polytope Polytope::from_vertices(std::vector<QVector> pts) {
    Polytope p;
    if (pts.empty()) return p;
    p.dim_ = static_cast<int>(pts[0].size());
    for (const auto& v : pts)
        if (static_cast<int>(v.size()) != p.dim_)
            throw std::invalid_argument("mixed point dimensions");
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    // keep only extreme points
    std::vector<QVector> kept;
    for (size_t i = 0; i < pts.size(); ++i) {
        std::vector<QVector> others;
        others.reserve(pts.size() - 1);
        for (size_t j = 0; j < pts.size(); ++j)
            if (j != i) others.push_back(pts[j]);
        if (!in_convex_hull(pts[i], others)) kept.push_back(pts[i]);
    }
    p.vertices_ = std::move(kept);
    return p;
}

Polytope Polytope::from_halfspaces(int ambient_dim, const std::vector<Halfspace>& hs) {
    const int n = ambient_dim;
    const size_t m = hs.size();
    std::vector<QVector> found;
    std::vector<size_t> c(n);
    if (static_cast<size_t>(n) > m) return Polytope();
    for (int i = 0; i < n; ++i) c[i] = i;
    while (true) {
        QMatrix a(n, QVector(n));
        QVector b(n);
        for (int i = 0; i < n; ++i) {
            a[i] = hs[c[i]].normal;
            b[i] = hs[c[i]].offset;
        }
        if (auto x = solve_linear(std::move(a), std::move(b))) {
            bool feasible = true;
            for (const auto& h : hs) {
                if (!h.contains(*x)) {
                    feasible = false;
                    break;
                }
            }
            if (feasible) found.push_back(*x);
        }
        int i = n;
        bool done = true;
        while (i-- > 0) {
            if (c[i] != i + m - n) {
                ++c[i];
                for (int j = i + 1; j < n; ++j) c[j] = c[j - 1] + 1;
                done = false;
                break;
            }
        }
        if (done) break;
    }
    Polytope p = from_vertices(std::move(found));
    p.dim_ = n;
    return p;
}

int Polytope::affine_dim() const { return affine_dimension(vertices_); }

bool Polytope::contains(const QVector& p) const { return in_convex_hull(p, vertices_); }

bool Polytope::contains_origin_interior() const {
    const QVector origin(dim_, Rational(0));
    if (!is_full_dimensional()) return false;
    for (const auto& h : halfspaces())
        if (dot(h.normal, origin) >= h.offset) return false;
    return true;
}

const std::vector<Halfspace>& Polytope::halfspaces() const {
    {
        std::scoped_lock lk(cache_mu_);
        if (halfspaces_) return *halfspaces_;
    }
    auto hs = compute_halfspaces();
    std::scoped_lock lk(cache_mu_);
    if (!halfspaces_) halfspaces_ = std::move(hs);
    return *halfspaces_;
}

std::vector<Halfspace> Polytope::compute_halfspaces() const {
    if (!is_full_dimensional())
        throw DegenerateInput("H-representation requires a full-dimensional polytope");
    const int n = dim_;
    const size_t m = vertices_.size();
    std::vector<Halfspace> out;
    auto consider = [&](const std::vector<const QVector*>& pts) {
        // hyperplane through n affinely independent points
        QVector normal(n, Rational(0));
        if (n == 1) {
            normal[0] = 1;
        } else if (n == 2) {
            const QVector d = *pts[1] - *pts[0];
            if (is_zero(d)) return;
            normal[0] = d[1];
            normal[1] = -d[0];
        } else {  // n == 3: cross product
            const QVector u = *pts[1] - *pts[0];
            const QVector v = *pts[2] - *pts[0];
            normal[0] = u[1] * v[2] - u[2] * v[1];
            normal[1] = u[2] * v[0] - u[0] * v[2];
            normal[2] = u[0] * v[1] - u[1] * v[0];
            if (is_zero(normal)) return;
        }
        Rational offset = dot(normal, *pts[0]);
        bool any_above = false, any_below = false;
        for (const auto& w : vertices_) {
            const Rational s = dot(normal, w);
            if (s > offset) any_above = true;
            if (s < offset) any_below = true;
        }
        if (any_above && any_below) return;
        if (any_above) {
            for (auto& x : normal) x = -x;
            offset = -offset;
        }
        Halfspace h = canonical_halfspace(std::move(normal), std::move(offset));
        if (std::find(out.begin(), out.end(), h) == out.end()) out.push_back(std::move(h));
    };
    if (n == 1) {
        out.push_back(canonical_halfspace(QVector{Rational(-1)}, -vertices_.front()[0]));
        out.push_back(canonical_halfspace(QVector{Rational(1)}, vertices_.back()[0]));
        return out;
    }
    std::vector<size_t> c(n);
    for (int i = 0; i < n; ++i) c[i] = i;
    while (true) {
        std::vector<const QVector*> pts(n);
        for (int i = 0; i < n; ++i) pts[i] = &vertices_[c[i]];
        consider(pts);
        int i = n;
        bool done = true;
        while (i-- > 0) {
            if (c[i] != i + m - n) {
                ++c[i];
                for (int j = i + 1; j < n; ++j) c[j] = c[j - 1] + 1;
                done = false;
                break;
            }
        }
        if (done) break;
    }
    // canonical facet order for determinism
    std::sort(out.begin(), out.end(), [](const Halfspace& a, const Halfspace& b) {
        if (a.normal != b.normal) return lex_less(a.normal, b.normal);
        return a.offset < b.offset;
    });
    return out;
}

std::vector<std::vector<int>> Polytope::facet_vertex_sets() const {
    const auto& hs = halfspaces();
    std::vector<std::vector<int>> sets(hs.size());
    for (size_t k = 0; k < hs.size(); ++k)
        for (size_t i = 0; i < vertices_.size(); ++i)
            if (hs[k].on_boundary(vertices_[i])) sets[k].push_back(static_cast<int>(i));
    return sets;
}

const std::vector<Simplex>& Polytope::triangulation() const {
    {
        std::scoped_lock lk(cache_mu_);
        if (triangulation_) return *triangulation_;
    }
    auto tri = compute_triangulation();
    std::scoped_lock lk(cache_mu_);
    if (!triangulation_) triangulation_ = std::move(tri);
    return *triangulation_;
}

// Orders the vertices of a convex polygon (given by indices into `pts`,
// possibly embedded in R^3) along its boundary, starting from the
// lexicographically smallest vertex. `drop` is a coordinate to project away
// (-1 keeps all; used for polygons living in a plane of R^3).
static std::vector<int> polygon_cycle(const std::vector<QVector>& pts, std::vector<int> idx,
                                      int drop) {
    auto proj = [&](const QVector& v) {
        QVector r;
        for (size_t j = 0; j < v.size(); ++j)
            if (static_cast<int>(j) != drop) r.push_back(v[j]);
        return r;
    };
    // monotone-chain order on the projected points
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        return lex_less(proj(pts[a]), proj(pts[b]));
    });
    auto cross = [&](int o, int a, int b) -> Rational {
        const QVector po = proj(pts[o]), pa = proj(pts[a]), pb = proj(pts[b]);
        return Rational((pa[0] - po[0]) * (pb[1] - po[1]) - (pa[1] - po[1]) * (pb[0] - po[0]));
    };
    std::vector<int> lower, upper;
    for (int i : idx) {
        while (lower.size() >= 2 && cross(lower[lower.size() - 2], lower.back(), i) <= 0)
            lower.pop_back();
        lower.push_back(i);
    }
    for (auto it = idx.rbegin(); it != idx.rend(); ++it) {
        while (upper.size() >= 2 && cross(upper[upper.size() - 2], upper.back(), *it) <= 0)
            upper.pop_back();
        upper.push_back(*it);
    }
    lower.pop_back();
    upper.pop_back();
    lower.insert(lower.end(), upper.begin(), upper.end());
    return lower;  // counterclockwise cycle starting at lex-min
}

std::vector<Simplex> Polytope::compute_triangulation() const {
    if (!is_full_dimensional()) throw DegenerateInput("triangulation of non-full-dimensional polytope");
    const int n = dim_;
    std::vector<Simplex> out;
    if (vertices_.size() == static_cast<size_t>(n) + 1) {
        out.emplace_back(vertices_);
        return out;
    }
    if (n == 1) {
        out.emplace_back(std::vector<QVector>{vertices_.front(), vertices_.back()});
        return out;
    }
    if (n == 2) {
        std::vector<int> all(vertices_.size());
        for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
        const std::vector<int> cyc = polygon_cycle(vertices_, all, -1);
        for (size_t i = 1; i + 1 < cyc.size(); ++i)
            out.emplace_back(std::vector<QVector>{vertices_[cyc[0]], vertices_[cyc[i]],
                                                  vertices_[cyc[i + 1]]});
        return out;
    }
    // n == 3: fan from lex-min vertex (index 0 by canonical order) over the
    // facets that do not contain it; facets triangulated as polygons.
    const auto sets = facet_vertex_sets();
    const auto& hs = halfspaces();
    for (size_t k = 0; k < sets.size(); ++k) {
        if (std::find(sets[k].begin(), sets[k].end(), 0) != sets[k].end()) continue;
        // drop the coordinate with the largest |normal| component
        int drop = 0;
        Rational best = -1;
        for (int j = 0; j < 3; ++j) {
            Rational a = hs[k].normal[j] >= 0 ? hs[k].normal[j] : -hs[k].normal[j];
            if (a > best) {
                best = a;
                drop = j;
            }
        }
        const std::vector<int> cyc = polygon_cycle(vertices_, sets[k], drop);
        for (size_t i = 1; i + 1 < cyc.size(); ++i)
            out.emplace_back(std::vector<QVector>{vertices_[0], vertices_[cyc[0]],
                                                  vertices_[cyc[i]], vertices_[cyc[i + 1]]});
    }
    return out;
}

Rational Polytope::volume() const {
    Rational v = 0;
    for (const auto& s : triangulation()) v += s.volume;
    return v;
}

QVector Polytope::moment1() const {
    QVector m(dim_, Rational(0));
    for (const auto& s : triangulation()) {
        const QVector c = s.centroid();
        for (int j = 0; j < dim_; ++j) m[j] += s.volume * c[j];
    }
    return m;
}

Polytope Polytope::intersect(const std::vector<Halfspace>& extra) const {
    std::vector<Halfspace> hs = halfspaces();
    hs.insert(hs.end(), extra.begin(), extra.end());
    return from_halfspaces(dim_, hs);
}

std::vector<std::vector<long>> Polytope::lattice_points(long scale, long budget) const {
    const int n = dim_;
    // integer forms <a, x> <= b for scale * P
    struct IntForm {
        std::vector<long> a;
        long b;
    };
    std::vector<IntForm> forms;
    for (const auto& h : halfspaces()) {
        IntForm f;
        const Rational off = h.offset * scale;
        const long den = static_cast<long>(off.get_den().get_si());
        const Rational scaled_off = off * den;
        f.b = static_cast<long>(scaled_off.get_num().get_si());
        for (const auto& x : h.normal) f.a.push_back(x.get_num().get_si() * den);
        forms.push_back(std::move(f));
    }
    std::vector<long> lo(n), hi(n);
    for (int j = 0; j < n; ++j) {
        Rational mn = vertices_[0][j], mx = vertices_[0][j];
        for (const auto& v : vertices_) {
            mn = std::min(mn, v[j]);
            mx = std::max(mx, v[j]);
        }
        mn *= scale;
        mx *= scale;
        mpz_class fl, ce;
        mpz_fdiv_q(fl.get_mpz_t(), mn.get_num().get_mpz_t(), mn.get_den().get_mpz_t());
        mpz_cdiv_q(ce.get_mpz_t(), mx.get_num().get_mpz_t(), mx.get_den().get_mpz_t());
        lo[j] = fl.get_si();
        hi[j] = ce.get_si();
    }
    long count = 1;
    for (int j = 0; j < n; ++j) {
        count *= (hi[j] - lo[j] + 1);
        if (count > budget) throw TooLarge("lattice point budget exceeded");
    }
    std::vector<std::vector<long>> out;
    std::vector<long> x(lo);
    while (true) {
        bool inside = true;
        for (const auto& f : forms) {
            long s = 0;
            for (int j = 0; j < n; ++j) s += f.a[j] * x[j];
            if (s > f.b) {
                inside = false;
                break;
            }
        }
        if (inside) out.push_back(x);
        int j = n - 1;
        for (; j >= 0; --j) {
            if (x[j] < hi[j]) {
                ++x[j];
                break;
            }
            x[j] = lo[j];
        }
        if (j < 0) break;
    }
    return out;
}

}  // namespace ksol
