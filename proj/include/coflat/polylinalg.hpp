#pragma once

#include "coflat/polynomial.hpp"

#include <optional>
#include <vector>

namespace coflat {

using PolyMatrix = std::vector<std::vector<Polynomial>>;
using PolyVector = std::vector<Polynomial>;

/// Quotient q with p = q*d exactly, or nullopt when d does not divide p.
/// Single-divisor reduction in graded lex order; for a true multiple the
/// remainder cancels completely, so any stuck leading term proves
/// non-divisibility.
std::optional<Polynomial> poly_divide_exact(const Polynomial& p, const Polynomial& d);

/// Rational function num/den used during elimination over the fraction
/// field Q(x1..xn). Denominators are kept monic and reduced opportunistically
/// by exact division; no multivariate gcd is attempted.
struct PolyFrac {
    Polynomial num;
    Polynomial den;

    explicit PolyFrac(VarSpacePtr space);
    PolyFrac(Polynomial n, Polynomial d);
    static PolyFrac of(Polynomial p);

    bool is_zero() const { return num.is_zero(); }
    bool is_polynomial() const;
    /// The polynomial value; requires is_polynomial().
    Polynomial as_polynomial() const;

    PolyFrac operator-() const;
    PolyFrac operator+(const PolyFrac& o) const;
    PolyFrac operator-(const PolyFrac& o) const;
    PolyFrac operator*(const PolyFrac& o) const;
    PolyFrac operator/(const PolyFrac& o) const;

    std::string str() const;

private:
    void normalize();
};

/// Determinant by fraction-free Bareiss elimination; all interior divisions
/// are exact by the Sylvester identity.
Polynomial poly_det(PolyMatrix a);

/// Rank of a polynomial matrix over the rational function field, i.e. the
/// rank at a generic point.
int poly_generic_rank(const PolyMatrix& a);

/// Basis of the right kernel over Q(x), denominator-cleared so every basis
/// vector has polynomial entries.
std::vector<PolyVector> poly_kernel_cleared(const PolyMatrix& a);

/// One solution of A x = b over Q(x), if consistent at a generic point.
std::optional<std::vector<PolyFrac>> polyfrac_solve(const PolyMatrix& a, const PolyVector& b);

PolyMatrix poly_matrix_from_q(const VarSpacePtr& space, const std::vector<std::vector<Rational>>& a);

} // namespace coflat
