#include "coflat/polylinalg.hpp"

#include "coflat/errors.hpp"

namespace coflat {

namespace {

bool monomial_divides(const Monomial& d, const Monomial& m) {
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] > m[i]) return false;
    return true;
}

Monomial monomial_quot(const Monomial& m, const Monomial& d) {
    Monomial q(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) q[i] = m[i] - d[i];
    return q;
}

} // namespace

std::optional<Polynomial> poly_divide_exact(const Polynomial& p, const Polynomial& d) {
    require_same_space(p.space(), d.space(), "poly divide");
    if (d.is_zero()) throw StructureError("polynomial division by zero");
    Polynomial q = Polynomial::zero(p.space());
    Polynomial r = p;
    const auto& lt_d = *d.terms().rbegin();
    while (!r.is_zero()) {
        const auto& lt_r = *r.terms().rbegin();
        if (!monomial_divides(lt_d.first, lt_r.first)) return std::nullopt;
        Polynomial t = Polynomial::term(p.space(), monomial_quot(lt_r.first, lt_d.first),
                                        lt_r.second / lt_d.second);
        q += t;
        r -= t * d;
    }
    return q;
}

PolyFrac::PolyFrac(VarSpacePtr space)
    : num(Polynomial::zero(space)), den(Polynomial::constant(space, Rational(1))) {}

PolyFrac::PolyFrac(Polynomial n, Polynomial d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw StructureError("rational function with zero denominator");
    normalize();
}

PolyFrac PolyFrac::of(Polynomial p) {
    auto space = p.space();
    return PolyFrac(std::move(p), Polynomial::constant(space, Rational(1)));
}

void PolyFrac::normalize() {
    if (num.is_zero()) {
        den = Polynomial::constant(num.space(), Rational(1));
        return;
    }
    if (auto q = poly_divide_exact(num, den)) {
        num = *q;
        den = Polynomial::constant(num.space(), Rational(1));
        return;
    }
    // monic denominator keeps repeated products from accumulating content
    Rational lead = den.terms().rbegin()->second;
    if (lead != Rational(1)) {
        Rational inv = lead.inv();
        num = num.scaled(inv);
        den = den.scaled(inv);
    }
}

bool PolyFrac::is_polynomial() const {
    return num.is_zero() || poly_divide_exact(num, den).has_value();
}

Polynomial PolyFrac::as_polynomial() const {
    if (num.is_zero()) return Polynomial::zero(num.space());
    auto q = poly_divide_exact(num, den);
    if (!q) throw StructureError("rational function " + str() + " is not polynomial");
    return *q;
}

PolyFrac PolyFrac::operator-() const {
    PolyFrac out = *this;
    out.num = -out.num;
    return out;
}

PolyFrac PolyFrac::operator+(const PolyFrac& o) const {
    return PolyFrac(num * o.den + o.num * den, den * o.den);
}

PolyFrac PolyFrac::operator-(const PolyFrac& o) const {
    return PolyFrac(num * o.den - o.num * den, den * o.den);
}

PolyFrac PolyFrac::operator*(const PolyFrac& o) const { return PolyFrac(num * o.num, den * o.den); }

PolyFrac PolyFrac::operator/(const PolyFrac& o) const {
    if (o.is_zero()) throw StructureError("rational function division by zero");
    return PolyFrac(num * o.den, den * o.num);
}

std::string PolyFrac::str() const {
    if (den.is_constant() && den.constant_term() == Rational(1)) return num.str();
    return "(" + num.str() + ")/(" + den.str() + ")";
}

Polynomial poly_det(PolyMatrix a) {
    const std::size_t n = a.size();
    if (n == 0) throw DimensionError("determinant of empty matrix");
    for (const auto& row : a)
        if (row.size() != n) throw DimensionError("determinant requires a square matrix");
    VarSpacePtr space = a[0][0].space();
    if (n == 1) return a[0][0];
    Polynomial prev = Polynomial::constant(space, Rational(1));
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k].is_zero()) {
            std::size_t p = k + 1;
            while (p < n && a[p][k].is_zero()) ++p;
            if (p == n) return Polynomial::zero(space);
            std::swap(a[p], a[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Polynomial v = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                auto q = poly_divide_exact(v, prev);
                if (!q) throw StructureError("Bareiss division failed; non-exact pivot");
                a[i][j] = *q;
            }
            a[i][k] = Polynomial::zero(space);
        }
        prev = a[k][k];
    }
    Polynomial det = a[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

namespace {

struct FracGauss {
    std::vector<std::vector<PolyFrac>> m;
    std::vector<int> pivots;

    // reduced echelon form over Q(x); returns pivot columns
    void run() {
        if (m.empty()) return;
        const std::size_t rows = m.size(), cols = m[0].size();
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols && r < rows; ++c) {
            std::size_t p = r;
            while (p < rows && m[p][c].is_zero()) ++p;
            if (p == rows) continue;
            std::swap(m[p], m[r]);
            PolyFrac inv = m[r][c];
            for (std::size_t j = c; j < cols; ++j) m[r][j] = m[r][j] / inv;
            for (std::size_t i = 0; i < rows; ++i) {
                if (i == r || m[i][c].is_zero()) continue;
                PolyFrac f = m[i][c];
                for (std::size_t j = c; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
            }
            pivots.push_back(static_cast<int>(c));
            ++r;
        }
    }
};

std::vector<std::vector<PolyFrac>> to_frac(const PolyMatrix& a) {
    std::vector<std::vector<PolyFrac>> m;
    m.reserve(a.size());
    for (const auto& row : a) {
        std::vector<PolyFrac> fr;
        fr.reserve(row.size());
        for (const auto& p : row) fr.push_back(PolyFrac::of(p));
        m.push_back(std::move(fr));
    }
    return m;
}

} // namespace

int poly_generic_rank(const PolyMatrix& a) {
    if (a.empty()) return 0;
    FracGauss g{to_frac(a), {}};
    g.run();
    return static_cast<int>(g.pivots.size());
}

std::vector<PolyVector> poly_kernel_cleared(const PolyMatrix& a) {
    if (a.empty()) return {};
    const std::size_t cols = a[0].size();
    VarSpacePtr space = a[0][0].space();
    FracGauss g{to_frac(a), {}};
    g.run();
    std::vector<bool> is_pivot(cols, false);
    for (int p : g.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    std::vector<PolyVector> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<PolyFrac> v(cols, PolyFrac(space));
        v[f] = PolyFrac::of(Polynomial::constant(space, Rational(1)));
        for (std::size_t r = 0; r < g.pivots.size(); ++r)
            v[static_cast<std::size_t>(g.pivots[r])] = -g.m[r][f];
        // clear denominators: multiply through by the product of them all
        Polynomial lcm = Polynomial::constant(space, Rational(1));
        for (const auto& fr : v)
            if (!fr.is_polynomial()) lcm = lcm * fr.den;
        PolyVector cleared;
        cleared.reserve(cols);
        for (const auto& fr : v) cleared.push_back((PolyFrac::of(lcm) * fr).as_polynomial());
        basis.push_back(std::move(cleared));
    }
    return basis;
}

std::optional<std::vector<PolyFrac>> polyfrac_solve(const PolyMatrix& a, const PolyVector& b) {
    if (a.size() != b.size()) throw DimensionError("solve shape mismatch");
    if (a.empty()) return std::vector<PolyFrac>{};
    const std::size_t cols = a[0].size();
    VarSpacePtr space = b.empty() ? a[0][0].space() : b[0].space();
    FracGauss g{to_frac(a), {}};
    for (std::size_t i = 0; i < b.size(); ++i) g.m[i].push_back(PolyFrac::of(b[i]));
    g.run();
    for (int p : g.pivots)
        if (static_cast<std::size_t>(p) == cols) return std::nullopt;
    std::vector<PolyFrac> x(cols, PolyFrac(space));
    for (std::size_t r = 0; r < g.pivots.size(); ++r)
        x[static_cast<std::size_t>(g.pivots[r])] = g.m[r][cols];
    return x;
}

PolyMatrix poly_matrix_from_q(const VarSpacePtr& space, const std::vector<std::vector<Rational>>& a) {
    PolyMatrix out;
    out.reserve(a.size());
    for (const auto& row : a) {
        PolyVector pr;
        pr.reserve(row.size());
        for (const auto& v : row) pr.push_back(Polynomial::constant(space, v));
        out.push_back(std::move(pr));
    }
    return out;
}

} // namespace coflat
