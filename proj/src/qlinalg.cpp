#include "coflat/qlinalg.hpp"

#include "coflat/errors.hpp"

namespace coflat {

QMatrix q_identity(int n) {
    QMatrix a(static_cast<std::size_t>(n), QVector(static_cast<std::size_t>(n), Rational(0)));
    for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Rational(1);
    return a;
}

QMatrix q_zero(int rows, int cols) {
    return QMatrix(static_cast<std::size_t>(rows), QVector(static_cast<std::size_t>(cols), Rational(0)));
}

QMatrix q_transpose(const QMatrix& a) {
    if (a.empty()) return {};
    QMatrix t(a[0].size(), QVector(a.size(), Rational(0)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
    return t;
}

QMatrix q_mul(const QMatrix& a, const QMatrix& b) {
    if (a.empty() || b.empty()) return {};
    if (a[0].size() != b.size()) throw DimensionError("matrix product shape mismatch");
    QMatrix c = q_zero(static_cast<int>(a.size()), static_cast<int>(b[0].size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (a[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

QVector q_mul_vec(const QMatrix& a, const QVector& v) {
    if (!a.empty() && a[0].size() != v.size()) throw DimensionError("matrix-vector shape mismatch");
    QVector out(a.size(), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
    return out;
}

QMatrix q_add(const QMatrix& a, const QMatrix& b) {
    if (a.size() != b.size() || (!a.empty() && a[0].size() != b[0].size()))
        throw DimensionError("matrix sum shape mismatch");
    QMatrix c = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) c[i][j] += b[i][j];
    return c;
}

QMatrix q_scaled(const QMatrix& a, const Rational& c) {
    QMatrix out = a;
    for (auto& row : out)
        for (auto& v : row) v *= c;
    return out;
}

bool q_is_zero(const QMatrix& a) {
    for (const auto& row : a)
        for (const auto& v : row)
            if (!v.is_zero()) return false;
    return true;
}

std::vector<int> q_rref(QMatrix& a) {
    std::vector<int> pivots;
    if (a.empty()) return pivots;
    const std::size_t rows = a.size(), cols = a[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        Rational inv = a[r][c].inv();
        for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            Rational f = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    return pivots;
}

int q_rank(QMatrix a) { return static_cast<int>(q_rref(a).size()); }

std::optional<QVector> q_solve(const QMatrix& a, const QVector& b) {
    if (a.size() != b.size()) throw DimensionError("solve shape mismatch");
    if (a.empty()) return QVector{};
    const std::size_t cols = a[0].size();
    QMatrix aug = a;
    for (std::size_t i = 0; i < a.size(); ++i) aug[i].push_back(b[i]);
    std::vector<int> pivots = q_rref(aug);
    // inconsistent iff a pivot lands in the augmented column
    for (int p : pivots)
        if (static_cast<std::size_t>(p) == cols) return std::nullopt;
    QVector x(cols, Rational(0));
    for (std::size_t r = 0; r < pivots.size(); ++r)
        x[static_cast<std::size_t>(pivots[r])] = aug[r][cols];
    return x;
}

std::vector<QVector> q_kernel(const QMatrix& a) {
    if (a.empty()) return {};
    const std::size_t cols = a[0].size();
    QMatrix m = a;
    std::vector<int> pivots = q_rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    std::vector<QVector> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        QVector v(cols, Rational(0));
        v[f] = Rational(1);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[static_cast<std::size_t>(pivots[r])] = -m[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<QMatrix> q_inverse(const QMatrix& a) {
    const std::size_t n = a.size();
    if (n == 0 || a[0].size() != n) throw DimensionError("inverse requires a square matrix");
    QMatrix aug = a;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i].push_back(Rational(i == j ? 1 : 0));
    }
    std::vector<int> pivots = q_rref(aug);
    if (pivots.size() != n) return std::nullopt;
    for (std::size_t r = 0; r < n; ++r)
        if (static_cast<std::size_t>(pivots[r]) != r) return std::nullopt;
    QMatrix inv(n, QVector(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

std::optional<QMatrix> q_left_inverse(const QMatrix& a) {
    QMatrix at = q_transpose(a);
    auto gram_inv = q_inverse(q_mul(at, a));
    if (!gram_inv) return std::nullopt;
    return q_mul(*gram_inv, at);
}

std::optional<QMatrix> q_weighted_left_inverse(const QMatrix& a, const QVector& diag_weights) {
    if (diag_weights.size() != a.size()) throw DimensionError("weight vector length mismatch");
    QMatrix wa = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (auto& v : wa[i]) v *= diag_weights[i];
    QMatrix atw = q_transpose(wa);
    auto gram_inv = q_inverse(q_mul(atw, a));
    if (!gram_inv) return std::nullopt;
    return q_mul(*gram_inv, atw);
}

} // namespace coflat
