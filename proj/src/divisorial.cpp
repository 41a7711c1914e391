#include "ksol/divisorial.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ksol {

std::string MarkedPoint::name() const {
    switch (tag) {
        case Tag::Zero: return "0";
        case Tag::Infinity: return "inf";
        case Tag::One: return "1";
        case Tag::Param: return label;
    }
    return "?";
}

std::optional<MarkedPoint> MarkedPoint::from_name(const std::string& s) {
    if (s == "0") return zero();
    if (s == "inf") return infinity();
    if (s == "1") return one();
    if (s.empty() || s == "generic") return std::nullopt;
    return param(s);
}

AffinePiece AffinePiece::from_template(QVector v, long mu) {
    if (mu <= 0) throw std::invalid_argument("mu must be positive");
    AffinePiece p;
    p.a = Rational(1 - mu, mu);
    p.a.canonicalize();
    p.b.reserve(v.size());
    for (auto& x : v) {
        Rational c = x / mu;
        c.canonicalize();
        p.b.push_back(std::move(c));
    }
    return p;
}

std::optional<AffinePiece::TemplateForm> AffinePiece::template_form() const {
    // a = (1 - mu)/mu  =>  mu = 1/(a + 1)
    const Rational ap1 = a + 1;
    if (ap1 <= 0) return std::nullopt;
    if (ap1.get_num() != 1) return std::nullopt;
    const long mu = static_cast<long>(ap1.get_den().get_si());
    TemplateForm tf;
    tf.mu = mu;
    mpz_class content = mu;
    for (const auto& c : b) {
        const Rational v = c * mu;
        if (!is_integer(v)) return std::nullopt;
        tf.v.push_back(static_cast<long>(v.get_num().get_si()));
        mpz_class av = abs(v.get_num());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), av.get_mpz_t());
    }
    if (content != 1) return std::nullopt;  // joint primitivity of (v, mu)
    return tf;
}

Rational PLFunction::eval(const QVector& u) const {
    if (pieces.empty()) throw InvalidData("PL function with no pieces");
    Rational m = pieces[0].eval(u);
    for (size_t i = 1; i < pieces.size(); ++i) m = std::min(m, pieces[i].eval(u));
    return m;
}

std::vector<std::pair<Polytope, AffinePiece>> PLFunction::active_cells(
    const Polytope& domain) const {
    std::vector<std::pair<Polytope, AffinePiece>> out;
    for (size_t j = 0; j < pieces.size(); ++j) {
        // skip exact duplicates of an earlier piece
        bool dup = false;
        for (size_t k = 0; k < j && !dup; ++k) dup = pieces[k] == pieces[j];
        if (dup) continue;
        std::vector<Halfspace> hs;
        bool dominated = false;
        for (size_t k = 0; k < pieces.size(); ++k) {
            if (k == j) continue;
            const QVector dn = pieces[j].b - pieces[k].b;
            if (is_zero(dn)) {
                if (pieces[j].a > pieces[k].a) dominated = true;
                continue;
            }
            hs.push_back(canonical_halfspace(dn, pieces[k].a - pieces[j].a));
        }
        if (dominated) continue;
        Polytope cell = domain.intersect(hs);
        if (!cell.empty() && cell.affine_dim() == domain.ambient_dim())
            out.emplace_back(std::move(cell), pieces[j]);
    }
    return out;
}

const PLFunction* DivisorialPolytope::phi_at(const MarkedPoint& y) const {
    for (const auto& [p, f] : phi)
        if (p == y) return &f;
    return nullptr;
}

Rational DivisorialPolytope::deg_phi(const QVector& u) const {
    Rational s = 0;
    for (const auto& [p, f] : phi) s += f.eval(u);
    return s;
}

void DivisorialPolytope::sort_phi() {
    std::sort(phi.begin(), phi.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
}

bool ValidationReport::all_passed() const {
    if (!structural.passed) return false;
    for (const auto& c : conditions)
        if (!c.passed) return false;
    return true;
}

std::string ValidationReport::summary() const {
    std::ostringstream os;
    auto line = [&](const std::string& name, const ConditionResult& c) {
        os << name << ": " << (c.passed ? "pass" : "FAIL");
        if (!c.detail.empty()) os << "  (" << c.detail << ")";
        if (c.witness) os << "  witness " << to_string(*c.witness);
        os << '\n';
    };
    line("structural", structural);
    const char* names[5] = {"(i) piecewise affine", "(ii) integral graph vertices",
                            "(iii) deg > -2 on interior", "(iv) piece template",
                            "(v) facet lattice distance"};
    for (int i = 0; i < 5; ++i) line(names[i], conditions[i]);
    os << "origin: " << (origin_interior ? "interior" : "boundary/contained") << '\n';
    for (const auto& n : notes) os << "note: " << n << '\n';
    return os.str();
}

std::vector<SubdivisionCell> subdivision_cells(const DivisorialPolytope& dp) {
    std::vector<SubdivisionCell> cells;
    std::vector<std::vector<std::pair<Polytope, AffinePiece>>> per_y;
    for (const auto& [p, f] : dp.phi) per_y.push_back(f.active_cells(dp.box));
    // iterate the product of per-Phi cells, intersecting as we go
    std::vector<size_t> idx(per_y.size(), 0);
    if (per_y.empty()) {
        cells.push_back({dp.box, {}});
        return cells;
    }
    while (true) {
        Polytope cur = per_y[0][idx[0]].first;
        bool alive = true;
        for (size_t y = 1; y < per_y.size() && alive; ++y) {
            cur = cur.intersect(per_y[y][idx[y]].first.halfspaces());
            alive = !cur.empty() && cur.affine_dim() == dp.dim();
        }
        if (alive && cur.affine_dim() == dp.dim()) {
            SubdivisionCell sc;
            sc.cell = std::move(cur);
            for (size_t y = 0; y < per_y.size(); ++y)
                sc.piece_per_phi.push_back(per_y[y][idx[y]].second);
            cells.push_back(std::move(sc));
        }
        size_t y = per_y.size();
        bool done = true;
        while (y-- > 0) {
            if (++idx[y] < per_y[y].size()) {
                done = false;
                break;
            }
            idx[y] = 0;
        }
        if (done) break;
    }
    return cells;
}

ValidationReport validate(const DivisorialPolytope& dp) {
    ValidationReport rep;
    const int n = dp.dim();
    // structural: full-dimensional lattice box containing the origin,
    // nonempty piece lists, at most one Param point
    {
        std::ostringstream prob;
        if (dp.box.empty() || !dp.box.is_full_dimensional())
            prob << "box not full-dimensional; ";
        else {
            for (const auto& v : dp.box.vertices())
                for (const auto& x : v)
                    if (!is_integer(x)) {
                        prob << "box vertex " << to_string(v) << " not integral; ";
                        goto latticed;
                    }
        latticed:;
            const QVector origin(n, Rational(0));
            if (!dp.box.contains(origin)) prob << "origin not contained in box; ";
            rep.origin_interior = dp.box.contains_origin_interior();
        }
        if (dp.phi.empty()) prob << "no marked points; ";
        int params = 0;
        for (const auto& [p, f] : dp.phi) {
            if (f.pieces.empty()) prob << "phi." << p.name() << " has no pieces; ";
            if (p.tag == MarkedPoint::Tag::Param) ++params;
        }
        if (params > 1) prob << "more than one Param point; ";
        rep.structural.passed = prob.str().empty();
        rep.structural.detail = prob.str();
        if (!rep.structural.passed) return rep;
    }

    // (i) piecewise affine on a finite polyhedral subdivision: the active
    // cells of each Phi_y must tile the box (exact volume count)
    {
        const Rational box_vol = dp.box.volume();
        for (const auto& [p, f] : dp.phi) {
            Rational covered = 0;
            for (const auto& [cell, piece] : f.active_cells(dp.box)) covered += cell.volume();
            if (covered != box_vol) {
                rep.conditions[0].passed = false;
                rep.conditions[0].detail = "phi." + p.name() + " cells do not tile the box";
            }
        }
    }

    // (ii) integral graph vertices
    for (const auto& [p, f] : dp.phi) {
        for (const auto& [cell, piece] : f.active_cells(dp.box)) {
            for (const auto& u : cell.vertices()) {
                bool ok = is_integer(piece.eval(u));
                for (const auto& x : u) ok = ok && is_integer(x);
                if (!ok) {
                    rep.conditions[1].passed = false;
                    rep.conditions[1].detail =
                        "graph vertex of phi." + p.name() + " at value " +
                        to_string(piece.eval(u));
                    rep.conditions[1].witness = u;
                }
            }
        }
    }

    const auto cells = subdivision_cells(dp);

    // (iii) deg Phi > -2 on the interior: by concavity it suffices that
    // deg Phi >= -2 at every cell vertex and is not identically -2
    {
        bool any_above = false;
        for (const auto& sc : cells) {
            for (const auto& u : sc.cell.vertices()) {
                const Rational d = dp.deg_phi(u);
                if (d < -2) {
                    rep.conditions[2].passed = false;
                    rep.conditions[2].detail = "deg Phi = " + to_string(d) + " < -2";
                    rep.conditions[2].witness = u;
                }
                if (d > -2) any_above = true;
            }
        }
        if (rep.conditions[2].passed && !any_above) {
            rep.conditions[2].passed = false;
            rep.conditions[2].detail = "deg Phi identically -2";
        }
    }

    // (iv) piece template (<v,u> - mu + 1)/mu with (v, mu) jointly primitive
    for (const auto& [p, f] : dp.phi) {
        for (const auto& piece : f.pieces) {
            if (!piece.template_form()) {
                rep.conditions[3].passed = false;
                rep.conditions[3].detail =
                    "phi." + p.name() + " piece " + to_string(piece.a) + " + <" +
                    to_string(piece.b) + ", u> does not match the template";
            }
        }
    }

    // (v) facets of box where deg Phi is not identically -2 must be at
    // lattice distance 1 from the origin
    {
        const auto& hs = dp.box.halfspaces();
        for (const auto& h : hs) {
            bool identically_m2 = true;
            QVector above_witness;
            for (const auto& sc : cells) {
                std::vector<Halfspace> eq{h, Halfspace{Rational(-1) * h.normal, -h.offset}};
                Polytope face = sc.cell.intersect(eq);
                for (const auto& u : face.vertices()) {
                    if (dp.deg_phi(u) != -2) {
                        identically_m2 = false;
                        above_witness = u;
                    }
                }
            }
            if (identically_m2) continue;
            Rational dist = h.offset >= 0 ? h.offset : -h.offset;
            if (!is_integer(h.offset))
                rep.notes.push_back("facet " + to_string(h.normal) +
                                    " has non-integer offset " + to_string(h.offset));
            if (dist != 1) {
                rep.conditions[4].passed = false;
                rep.conditions[4].detail = "facet " + to_string(h.normal) +
                                           " has lattice distance " + to_string(dist);
                rep.conditions[4].witness = above_witness;
            }
        }
    }
    return rep;
}

Rational degree(const DivisorialPolytope& dp) {
    auto rep = validate(dp);
    if (!rep.all_passed()) throw InvalidData("degree: invalid divisorial polytope");
    Rational total = 0;
    for (const auto& sc : subdivision_cells(dp)) {
        // integrand 2 + sum of active pieces, affine on the cell
        Rational a = 2;
        QVector b(dp.dim(), Rational(0));
        for (const auto& piece : sc.piece_per_phi) {
            a += piece.a;
            b = b + piece.b;
        }
        for (const auto& s : sc.cell.triangulation()) {
            const QVector c = s.centroid();
            total += s.volume * (a + dot(b, c));
        }
    }
    Rational fact = 1;
    for (int k = 2; k <= dp.dim() + 1; ++k) fact *= k;
    return fact * total;
}

FiberPolytope special_fiber(const DivisorialPolytope& dp, const DegenerationPoint& y) {
    const int n = dp.dim();
    std::vector<Halfspace> hs;
    // lifted box constraints
    for (const auto& h : dp.box.halfspaces()) {
        QVector nn = h.normal;
        nn.push_back(Rational(0));
        hs.push_back(Halfspace{std::move(nn), h.offset});
    }
    // upper: a <= 1 + Phi_y(u), one halfspace per piece; generic has Phi = 0
    const PLFunction* fy = y.is_generic() ? nullptr : dp.phi_at(*y.y);
    if (!y.is_generic() && !fy) throw InvalidData("special_fiber: unknown marked point");
    if (fy) {
        for (const auto& piece : fy->pieces) {
            QVector nn = Rational(-1) * piece.b;
            nn.push_back(Rational(1));
            hs.push_back(canonical_halfspace(std::move(nn), piece.a + 1));
        }
    } else {
        QVector nn(n, Rational(0));
        nn.push_back(Rational(1));
        hs.push_back(Halfspace{std::move(nn), Rational(1)});
    }
    // lower: a >= -1 - sum_{z != y} Phi_z(u); the sum of minima becomes one
    // halfspace per choice of piece for each z
    std::vector<const PLFunction*> others;
    for (const auto& [p, f] : dp.phi)
        if (y.is_generic() || !(p == *y.y)) others.push_back(&f);
    std::vector<size_t> idx(others.size(), 0);
    while (true) {
        Rational acc_a = 0;
        QVector acc_b(n, Rational(0));
        for (size_t z = 0; z < others.size(); ++z) {
            const auto& piece = others[z]->pieces[idx[z]];
            acc_a += piece.a;
            acc_b = acc_b + piece.b;
        }
        // a >= -1 - acc_a - <acc_b, u>   <=>   <(-acc_b, -1), (u,a)> <= 1 + acc_a
        QVector nn = Rational(-1) * acc_b;
        nn.push_back(Rational(-1));
        hs.push_back(canonical_halfspace(std::move(nn), acc_a + 1));
        size_t z = others.size();
        bool done = true;
        while (z-- > 0) {
            if (++idx[z] < others[z]->pieces.size()) {
                done = false;
                break;
            }
            idx[z] = 0;
        }
        if (done || others.empty()) break;
    }
    FiberPolytope fp;
    fp.polytope = Polytope::from_halfspaces(n + 1, hs);
    fp.source = y;
    if (!fp.polytope.is_full_dimensional())
        throw DegenerateInput("special fiber is not full-dimensional");
    return fp;
}

std::vector<DegenerationPoint> admissible_points(const DivisorialPolytope& dp) {
    const QVector origin(dp.dim(), Rational(0));
    if (!dp.box.contains(origin)) throw InvalidData("admissible_points: origin not in box");
    std::vector<std::pair<MarkedPoint, bool>> nonint;
    for (const auto& [p, f] : dp.phi) nonint.emplace_back(p, !is_integer(f.eval(origin)));
    std::vector<DegenerationPoint> out;
    for (const auto& [p, ni] : nonint) {
        int others = 0;
        for (const auto& [q, nj] : nonint)
            if (!(q == p) && nj) ++others;
        if (others <= 1) out.push_back(DegenerationPoint::at(p));
    }
    int total = 0;
    for (const auto& [q, nj] : nonint)
        if (nj) ++total;
    if (total <= 1) out.push_back(DegenerationPoint::generic());
    return out;
}

QVector Symmetry::apply(const QVector& u) const {
    const size_t n = matrix.size();
    QVector r(n, Rational(0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) r[i] += Rational(matrix[i][j]) * u[j];
    return r;
}

QVector Symmetry::apply_transpose(const QVector& x) const {
    const size_t n = matrix.size();
    QVector r(n, Rational(0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) r[j] += Rational(matrix[i][j]) * x[i];
    return r;
}

bool Symmetry::is_identity() const {
    for (size_t i = 0; i < matrix.size(); ++i)
        for (size_t j = 0; j < matrix.size(); ++j)
            if (matrix[i][j] != (i == j ? 1 : 0)) return false;
    return true;
}

// deg(Phi o sigma) == deg Phi, checked exactly on the common refinement of
// the subdivision and its sigma-preimage.
static bool preserves_deg_phi(const DivisorialPolytope& dp, const Symmetry& sigma,
                              const std::vector<SubdivisionCell>& cells) {
    for (const auto& ci : cells) {
        for (const auto& cj : cells) {
            // sigma^{-1}(cj): <n, sigma u> <= c  <=>  <sigma^T n, u> <= c
            std::vector<Halfspace> pre;
            for (const auto& h : cj.cell.halfspaces())
                pre.push_back(canonical_halfspace(sigma.apply_transpose(h.normal), h.offset));
            Polytope r = ci.cell.intersect(pre);
            if (r.empty()) continue;
            for (const auto& u : r.vertices())
                if (dp.deg_phi(u) != dp.deg_phi(sigma.apply(u))) return false;
        }
    }
    return true;
}

std::vector<Symmetry> symmetries(const DivisorialPolytope& dp) {
    const int n = dp.dim();
    const auto& verts = dp.box.vertices();
    const auto cells = subdivision_cells(dp);
    std::vector<Symmetry> out;
    auto push_unique = [&](Symmetry s) {
        for (const auto& o : out)
            if (o.matrix == s.matrix) return;
        out.push_back(std::move(s));
    };
    auto try_matrix = [&](const QMatrix& m) {
        Symmetry s;
        s.matrix.assign(n, std::vector<long>(n, 0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (!is_integer(m[i][j])) return;
                s.matrix[i][j] = static_cast<long>(m[i][j].get_num().get_si());
            }
        QMatrix qm(n, QVector(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) qm[i][j] = m[i][j];
        const Rational det = determinant(qm);
        if (det != 1 && det != -1) return;
        // must permute the vertex set
        std::set<QVector> vs(verts.begin(), verts.end());
        for (const auto& v : verts)
            if (!vs.count(s.apply(v))) return;
        if (!preserves_deg_phi(dp, s, cells)) return;
        push_unique(std::move(s));
    };
    if (n == 1) {
        try_matrix({{Rational(1)}});
        try_matrix({{Rational(-1)}});
    } else if (n == 2) {
        // pick two linearly independent vertices; a linear map is determined
        // by their images
        int i1 = -1, i2 = -1;
        for (size_t i = 0; i < verts.size() && i1 < 0; ++i)
            if (!is_zero(verts[i])) i1 = static_cast<int>(i);
        for (size_t i = 0; i < verts.size() && i2 < 0; ++i) {
            if (static_cast<int>(i) == i1) continue;
            QMatrix t{{verts[i1][0], verts[i1][1]}, {verts[i][0], verts[i][1]}};
            if (determinant(t) != 0) i2 = static_cast<int>(i);
        }
        if (i1 < 0 || i2 < 0) throw DegenerateInput("box not full-dimensional");
        for (const auto& w1 : verts) {
            for (const auto& w2 : verts) {
                // solve sigma * v1 = w1, sigma * v2 = w2 row by row
                QMatrix vt{{verts[i1][0], verts[i1][1]}, {verts[i2][0], verts[i2][1]}};
                QMatrix m(2, QVector(2));
                bool ok = true;
                for (int r = 0; r < 2 && ok; ++r) {
                    auto row = solve_linear(vt, {w1[r], w2[r]});
                    if (!row) ok = false;
                    else m[r] = *row;
                }
                if (ok) try_matrix(m);
            }
        }
    } else {
        throw DegenerateInput("symmetry search implemented for dim <= 2");
    }
    std::sort(out.begin(), out.end(),
              [](const Symmetry& a, const Symmetry& b) { return a.matrix < b.matrix; });
    return out;
}

std::vector<QVector> fixed_subspace(const std::vector<Symmetry>& sigmas, int dim) {
    QMatrix rows;
    for (const auto& s : sigmas) {
        for (int j = 0; j < dim; ++j) {
            QVector row(dim, Rational(0));
            // (sigma^T - I) x = 0, row j
            for (int i = 0; i < dim; ++i) row[i] += Rational(s.matrix[i][j]);
            row[j] -= 1;
            rows.push_back(std::move(row));
        }
    }
    if (rows.empty()) rows.assign(1, QVector(dim, Rational(0)));
    auto basis = null_space(std::move(rows));
    // normalise each basis vector to a primitive integer vector with positive
    // leading entry
    for (auto& v : basis) {
        mpz_class den = 1;
        for (const auto& x : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den().get_mpz_t());
        for (auto& x : v) x *= Rational(den, 1);
        mpz_class g = 0;
        for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num().get_mpz_t());
        if (g != 0) {
            Rational inv(1, g);
            inv.canonicalize();
            for (auto& x : v) x *= inv;
        }
        for (const auto& x : v) {
            if (x != 0) {
                if (x < 0)
                    for (auto& y : v) y = -y;
                break;
            }
        }
    }
    std::sort(basis.begin(), basis.end(), lex_less);
    return basis;
}

}  // namespace ksol
