#pragma once

#include "coflat/rational.hpp"
#include "coflat/varspace.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace coflat {

/// Dense exponent vector, one slot per variable of the ambient space.
using Monomial = std::vector<std::uint32_t>;

unsigned monomial_degree(const Monomial& m);

/// Graded lexicographic order: total degree first, then exponent of the
/// earliest variable decides. Strict weak order suitable for std::map.
struct GradedLexLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Exact multivariate polynomial over Q in canonical form: terms keyed by
/// monomial in graded lex order, no zero coefficients stored.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational, GradedLexLess>;

    explicit Polynomial(VarSpacePtr space);

    static Polynomial zero(VarSpacePtr space) { return Polynomial(std::move(space)); }
    static Polynomial constant(VarSpacePtr space, const Rational& c);
    static Polynomial variable(VarSpacePtr space, int i);
    static Polynomial term(VarSpacePtr space, Monomial m, const Rational& c);

    /// Recursive-descent parse of the polynomial grammar: identifiers bound
    /// to the space, integer and a/b rational literals, + - *, ^ with a
    /// nonnegative integer exponent, parentheses. Whitespace insignificant.
    static Polynomial parse(VarSpacePtr space, const std::string& text);

    const VarSpacePtr& space() const { return space_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Total degree; -1 for the zero polynomial.
    int degree() const;
    Rational constant_term() const;
    Rational coeff(const Monomial& m) const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial operator*(const Polynomial& o) const;
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    Polynomial scaled(const Rational& c) const;
    Polynomial pow(unsigned e) const;

    friend bool operator==(const Polynomial& a, const Polynomial& b);
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    /// Partial derivative with respect to variable i.
    Polynomial diff(int i) const;

    /// Exact evaluation at a rational point.
    Rational eval(const std::vector<Rational>& point) const;

    /// Substitutes args[i] for variable i; all args share one target space.
    Polynomial subst(const std::vector<Polynomial>& args) const;

    /// Same polynomial on a larger space; var_map[i] is the new index of
    /// old variable i.
    Polynomial lifted(const VarSpacePtr& bigger, const std::vector<int>& var_map) const;

    /// Canonical rendering, leading term first: "3*x1^2*x2 - 2/5*x3 + 1".
    std::string str() const;

private:
    void add_term(const Monomial& m, const Rational& c);

    VarSpacePtr space_;
    TermMap terms_;

    friend class PolyParser;
};

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

} // namespace coflat
