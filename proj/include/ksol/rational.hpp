// Exact rational arithmetic helpers on top of GMP's mpq_class: small dense
// vectors/matrices, linear solves, dets, and strict text parsing (no floats).
#ifndef KSOL_RATIONAL_HPP
#define KSOL_RATIONAL_HPP

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ksol {

using Rational = mpq_class;
using QVector = std::vector<Rational>;   // also used as a point in M_R / N_R
using QMatrix = std::vector<QVector>;    // row major

inline Rational rat(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Rational dot(const QVector& a, const QVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    Rational s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline QVector operator+(const QVector& a, const QVector& b) {
    QVector r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline QVector operator-(const QVector& a, const QVector& b) {
    QVector r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline QVector operator*(const Rational& c, const QVector& a) {
    QVector r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

inline bool is_zero(const QVector& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

// Lexicographic order; used everywhere a canonical vertex order is needed.
inline bool lex_less(const QVector& a, const QVector& b) {
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return a.size() < b.size();
}

// Solves A x = b by fraction-preserving Gaussian elimination.
// A is m x n (m rows). Returns nullopt when the system is inconsistent or
// underdetermined (no unique solution on the pivoted columns).
std::optional<QVector> solve_linear(QMatrix a, QVector b);

// Determinant of a square rational matrix.
Rational determinant(QMatrix a);

// Row-reduces `a` in place and returns a basis of its null space {x : a x = 0}.
std::vector<QVector> null_space(QMatrix a);

// Rank of a rational matrix.
int matrix_rank(QMatrix a);

// Strict rational literal: optional sign, digits, optional "/digits".
// Rejects anything else (in particular '.', 'e' floating literals).
Rational parse_rational(const std::string& tok);

std::string to_string(const Rational& q);
std::string to_string(const QVector& v);  // "(a,b,...)"

}  // namespace ksol

#endif
