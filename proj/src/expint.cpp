#include "ksol/expint.hpp"

#include <algorithm>
#include <cmath>

namespace ksol {

namespace {

Rational factorial(int n) {
    Rational f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

// Truncated Taylor expansion of exp[nodes[i..j]] about the dyadic center of
// the node hull:
//   exp[t_0..t_d] = e^c * sum_m h_m(t - c) / (m + d)!
// with |tail| <= r^{M+1} e^r / ((M+1)! d!), r = max |t_k - c|.
IntervalScalar taylor_dd(const std::vector<IntervalScalar>& nodes, int lo, int hi, Precision p,
                         int terms) {
    const int d = hi - lo;
    IntervalScalar center = IntervalScalar::hull(nodes[lo], nodes[hi]);
    const Rational c = (center.lower_rational() + center.upper_rational()) / 2;
    const IntervalScalar cpt = IntervalScalar::from_rational(c, p);

    std::vector<IntervalScalar> shifted;
    shifted.reserve(d + 1);
    IntervalScalar radius = IntervalScalar::exact_zero(p);
    for (int k = lo; k <= hi; ++k) {
        shifted.push_back(nodes[k] - cpt);
        radius = IntervalScalar::hull(radius, shifted.back().abs_upper());
    }
    const IntervalScalar r_up = radius.abs_upper();

    // complete homogeneous symmetric sums h_0..h_M of the shifted nodes via
    // h_m(s_0..s_k) = h_m(s_0..s_{k-1}) + s_k h_{m-1}(s_0..s_k)
    const int M = terms;
    std::vector<IntervalScalar> h(M + 1, IntervalScalar::exact_zero(p));
    h[0] = IntervalScalar::from_rational(Rational(1), p);
    for (const auto& s : shifted)
        for (int m = 1; m <= M; ++m) h[m] += s * h[m - 1];

    IntervalScalar sum = IntervalScalar::exact_zero(p);
    for (int m = 0; m <= M; ++m)
        sum += h[m] * IntervalScalar::from_rational(1 / factorial(m + d), p);

    // certified tail bound
    IntervalScalar rem = iexp(r_up);
    for (int k = 0; k < M + 1; ++k) rem *= r_up;
    rem *= IntervalScalar::from_rational(1 / (factorial(M + 1) * factorial(d)), p);
    rem = IntervalScalar::hull(rem, -rem);

    return iexp(cpt) * (sum + rem);
}

}  // namespace

IntervalScalar exp_divided_difference(std::vector<IntervalScalar> nodes, Precision p,
                                      int taylor_terms) {
    if (nodes.empty()) throw std::invalid_argument("no nodes");
    std::sort(nodes.begin(), nodes.end(), [](const IntervalScalar& a, const IntervalScalar& b) {
        if (a.lower_double() != b.lower_double()) return a.lower_double() < b.lower_double();
        const Rational la = a.lower_rational(), lb = b.lower_rational();
        if (la != lb) return la < lb;
        return a.upper_rational() < b.upper_rational();
    });
    const int d = static_cast<int>(nodes.size()) - 1;
    double maxabs = 0;
    for (const auto& t : nodes) maxabs = std::max(maxabs, t.abs_upper().upper_double());
    const double tau = std::ldexp(1.0 + maxabs, -(p.bits / 2));

    // dd[i][j] = exp[nodes[i..j]], filled by span
    std::vector<std::vector<IntervalScalar>> dd(nodes.size(),
                                                std::vector<IntervalScalar>(nodes.size()));
    for (size_t i = 0; i < nodes.size(); ++i) dd[i][i] = iexp(nodes[i]);
    for (int span = 1; span <= d; ++span) {
        for (int i = 0; i + span <= d; ++i) {
            const int j = i + span;
            const IntervalScalar diff = nodes[j] - nodes[i];
            if (diff.contains_zero() || diff.upper_double() < tau)
                dd[i][j] = taylor_dd(nodes, i, j, p, taylor_terms);
            else
                dd[i][j] = (dd[i + 1][j] - dd[i][j - 1]) / diff;
        }
    }
    return dd[0][d];
}

IntervalScalar exp_divided_difference_series(const std::vector<IntervalScalar>& nodes,
                                             Precision p) {
    if (nodes.empty()) throw std::invalid_argument("no nodes");
    IntervalScalar hull = nodes[0];
    for (const auto& t : nodes) hull = IntervalScalar::hull(hull, t);
    const double r = 0.5 * hull.width_upper() + 1;
    const int terms = std::max(48, static_cast<int>(std::ceil(2.8 * r)) + 48);
    return taylor_dd(nodes, 0, static_cast<int>(nodes.size()) - 1, p, terms);
}

static std::vector<IntervalScalar> simplex_nodes(const Simplex& s, const IntervalVector& xi) {
    std::vector<IntervalScalar> nodes;
    nodes.reserve(s.vertices.size());
    for (const auto& v : s.vertices) nodes.push_back(xi.dot(v));
    return nodes;
}

IntervalScalar simplex_exp(const Simplex& s, const IntervalVector& xi) {
    const Precision p = xi.precision();
    const int n = static_cast<int>(s.vertices.size()) - 1;
    if (xi.all_exact_zero())
        return IntervalScalar::from_rational(s.volume, p);
    const IntervalScalar dd = exp_divided_difference(simplex_nodes(s, xi), p);
    return IntervalScalar::from_rational(factorial(n) * s.volume, p) * dd;
}

IntervalScalar weighted_exp(const Simplex& s, const IntervalVector& xi, int vertex_index) {
    const Precision p = xi.precision();
    const int n = static_cast<int>(s.vertices.size()) - 1;
    if (vertex_index < 0 || vertex_index > n) throw std::invalid_argument("bad vertex index");
    if (xi.all_exact_zero())
        return IntervalScalar::from_rational(s.volume / (n + 1), p);
    auto nodes = simplex_nodes(s, xi);
    nodes.push_back(nodes[vertex_index]);
    const IntervalScalar dd = exp_divided_difference(std::move(nodes), p);
    return IntervalScalar::from_rational(factorial(n) * s.volume, p) * dd;
}

IntervalScalar integrate_exp(const Polytope& poly, const IntervalVector& xi) {
    if (!poly.is_full_dimensional()) throw DegenerateInput("integrate_exp: degenerate polytope");
    const Precision p = xi.precision();
    if (xi.all_exact_zero()) return IntervalScalar::from_rational(poly.volume(), p);
    IntervalScalar total = IntervalScalar::exact_zero(p);
    for (const auto& s : poly.triangulation()) total += simplex_exp(s, xi);
    return total;
}

IntervalScalar integrate_linear_exp(const Polytope& poly, const IntervalVector& xi,
                                    const QVector& v) {
    if (!poly.is_full_dimensional())
        throw DegenerateInput("integrate_linear_exp: degenerate polytope");
    const Precision p = xi.precision();
    if (xi.all_exact_zero()) {
        // exact rational first moment
        Rational m = 0;
        for (const auto& s : poly.triangulation()) m += s.volume * dot(v, s.centroid());
        return IntervalScalar::from_rational(m, p);
    }
    IntervalScalar total = IntervalScalar::exact_zero(p);
    for (const auto& s : poly.triangulation()) {
        const int n = static_cast<int>(s.vertices.size()) - 1;
        auto base = simplex_nodes(s, xi);
        const IntervalScalar scale = IntervalScalar::from_rational(factorial(n) * s.volume, p);
        // <v,u> = sum_i lambda_i(u) <v, vertex_i>
        for (int i = 0; i <= n; ++i) {
            const Rational w = dot(v, s.vertices[i]);
            if (w == 0) continue;
            auto nodes = base;
            nodes.push_back(base[i]);
            total += IntervalScalar::from_rational(w, p) * scale *
                     exp_divided_difference(std::move(nodes), p);
        }
    }
    return total;
}

// ---------------------------------------------------------------------------
// double-precision hint path

double exp_dd_double(std::vector<double> nodes) {
    std::sort(nodes.begin(), nodes.end());
    const int d = static_cast<int>(nodes.size()) - 1;
    double maxabs = 0;
    for (double t : nodes) maxabs = std::max(maxabs, std::fabs(t));
    const double tau = 1e-7 * (1.0 + maxabs);
    auto taylor = [&](int lo, int hi) {
        const int dd = hi - lo;
        const double c = 0.5 * (nodes[lo] + nodes[hi]);
        const int M = 26;
        std::vector<double> h(M + 1, 0.0);
        h[0] = 1.0;
        for (int k = lo; k <= hi; ++k)
            for (int m = 1; m <= M; ++m) h[m] += (nodes[k] - c) * h[m - 1];
        double fact = 1;
        for (int k = 2; k <= dd; ++k) fact *= k;
        double sum = 0;
        for (int m = 0; m <= M; ++m) {
            sum += h[m] / fact;
            fact *= (m + dd + 1);
        }
        return std::exp(c) * sum;
    };
    std::vector<std::vector<double>> t(nodes.size(), std::vector<double>(nodes.size(), 0.0));
    for (size_t i = 0; i < nodes.size(); ++i) t[i][i] = std::exp(nodes[i]);
    for (int span = 1; span <= d; ++span) {
        for (int i = 0; i + span <= d; ++i) {
            const int j = i + span;
            const double diff = nodes[j] - nodes[i];
            t[i][j] = diff < tau ? taylor(i, j) : (t[i + 1][j] - t[i][j - 1]) / diff;
        }
    }
    return t[0][d];
}

static double dot_d(const std::vector<double>& xi, const QVector& v) {
    double s = 0;
    for (size_t i = 0; i < xi.size(); ++i) s += xi[i] * v[i].get_d();
    return s;
}

double integrate_exp_double(const Polytope& poly, const std::vector<double>& xi) {
    double total = 0;
    for (const auto& s : poly.triangulation()) {
        const int n = static_cast<int>(s.vertices.size()) - 1;
        std::vector<double> nodes;
        for (const auto& v : s.vertices) nodes.push_back(dot_d(xi, v));
        double fact = 1;
        for (int k = 2; k <= n; ++k) fact *= k;
        total += fact * s.volume.get_d() * exp_dd_double(std::move(nodes));
    }
    return total;
}

double integrate_linear_exp_double(const Polytope& poly, const std::vector<double>& xi,
                                   const QVector& v) {
    double total = 0;
    for (const auto& s : poly.triangulation()) {
        const int n = static_cast<int>(s.vertices.size()) - 1;
        std::vector<double> base;
        for (const auto& w : s.vertices) base.push_back(dot_d(xi, w));
        double fact = 1;
        for (int k = 2; k <= n; ++k) fact *= k;
        for (int i = 0; i <= n; ++i) {
            const double w = dot(v, s.vertices[i]).get_d();
            if (w == 0) continue;
            auto nodes = base;
            nodes.push_back(base[i]);
            total += w * fact * s.volume.get_d() * exp_dd_double(std::move(nodes));
        }
    }
    return total;
}

}  // namespace ksol
