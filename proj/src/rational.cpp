#include "ksol/rational.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ksol {

std::optional<QVector> solve_linear(QMatrix a, QVector b) {
    const size_t m = a.size();
    const size_t n = m ? a[0].size() : 0;
    std::vector<int> pivot_col_of_row;
    size_t row = 0;
    for (size_t col = 0; col < n && row < m; ++col) {
        size_t pr = row;
        while (pr < m && a[pr][col] == 0) ++pr;
        if (pr == m) continue;
        std::swap(a[pr], a[row]);
        std::swap(b[pr], b[row]);
        const Rational inv = 1 / a[row][col];
        for (size_t j = col; j < n; ++j) a[row][j] *= inv;
        b[row] *= inv;
        for (size_t i = 0; i < m; ++i) {
            if (i == row || a[i][col] == 0) continue;
            const Rational f = a[i][col];
            for (size_t j = col; j < n; ++j) a[i][j] -= f * a[row][j];
            b[i] -= f * b[row];
        }
        pivot_col_of_row.push_back(static_cast<int>(col));
        ++row;
    }
    // consistency of the zero rows
    for (size_t i = row; i < m; ++i)
        if (b[i] != 0) return std::nullopt;
    if (pivot_col_of_row.size() != n) return std::nullopt;  // underdetermined
    QVector x(n, Rational(0));
    for (size_t i = 0; i < pivot_col_of_row.size(); ++i) x[pivot_col_of_row[i]] = b[i];
    return x;
}

Rational determinant(QMatrix a) {
    const size_t n = a.size();
    Rational det = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t pr = col;
        while (pr < n && a[pr][col] == 0) ++pr;
        if (pr == n) return Rational(0);
        if (pr != col) {
            std::swap(a[pr], a[col]);
            det = -det;
        }
        det *= a[col][col];
        const Rational inv = 1 / a[col][col];
        for (size_t i = col + 1; i < n; ++i) {
            if (a[i][col] == 0) continue;
            const Rational f = a[i][col] * inv;
            for (size_t j = col; j < n; ++j) a[i][j] -= f * a[col][j];
        }
    }
    return det;
}

std::vector<QVector> null_space(QMatrix a) {
    const size_t m = a.size();
    const size_t n = m ? a[0].size() : 0;
    std::vector<int> pivot_col_of_row;
    size_t row = 0;
    for (size_t col = 0; col < n && row < m; ++col) {
        size_t pr = row;
        while (pr < m && a[pr][col] == 0) ++pr;
        if (pr == m) continue;
        std::swap(a[pr], a[row]);
        const Rational inv = 1 / a[row][col];
        for (size_t j = col; j < n; ++j) a[row][j] *= inv;
        for (size_t i = 0; i < m; ++i) {
            if (i == row || a[i][col] == 0) continue;
            const Rational f = a[i][col];
            for (size_t j = col; j < n; ++j) a[i][j] -= f * a[row][j];
        }
        pivot_col_of_row.push_back(static_cast<int>(col));
        ++row;
    }
    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col_of_row) is_pivot[c] = true;
    std::vector<QVector> basis;
    for (size_t free_col = 0; free_col < n; ++free_col) {
        if (is_pivot[free_col]) continue;
        QVector v(n, Rational(0));
        v[free_col] = 1;
        for (size_t i = 0; i < pivot_col_of_row.size(); ++i)
            v[pivot_col_of_row[i]] = -a[i][free_col];
        basis.push_back(std::move(v));
    }
    return basis;
}

int matrix_rank(QMatrix a) {
    const size_t n = a.empty() ? 0 : a[0].size();
    return static_cast<int>(n - null_space(std::move(a)).size());
}

Rational parse_rational(const std::string& tok) {
    auto bad = [&]() -> std::runtime_error {
        return std::runtime_error("invalid rational literal '" + tok + "'");
    };
    if (tok.empty()) throw bad();
    size_t i = 0;
    if (tok[i] == '+' || tok[i] == '-') ++i;
    size_t digits = 0;
    while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) ++i, ++digits;
    if (digits == 0) throw bad();
    if (i < tok.size()) {
        if (tok[i] != '/') throw bad();  // rejects '.', 'e', anything floaty
        ++i;
        size_t den_digits = 0;
        while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) ++i, ++den_digits;
        if (den_digits == 0 || i != tok.size()) throw bad();
    }
    Rational q;
    if (q.set_str(tok, 10) != 0) throw bad();
    q.canonicalize();
    if (q.get_den() == 0) throw bad();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const QVector& v) {
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << v[i].get_str();
    }
    os << ')';
    return os.str();
}

}  // namespace ksol
