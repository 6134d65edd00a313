#include "coflat/polynomial.hpp"

#include "coflat/errors.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace coflat {

// ---- VarSpace ----

VarSpacePtr VarSpace::make(std::vector<std::string> names) {
    for (std::size_t i = 0; i < names.size(); ++i)
        for (std::size_t j = i + 1; j < names.size(); ++j)
            if (names[i] == names[j])
                throw StructureError("duplicate variable name '" + names[i] + "'");
    return VarSpacePtr(new VarSpace(std::move(names)));
}

VarSpacePtr VarSpace::numbered(const std::string& prefix, int n) {
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) names.push_back(prefix + std::to_string(i));
    return make(std::move(names));
}

std::optional<int> VarSpace::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<int>(i);
    return std::nullopt;
}

VarSpacePtr VarSpace::extended(const std::vector<std::string>& extra) const {
    std::vector<std::string> names = names_;
    names.insert(names.end(), extra.begin(), extra.end());
    return make(std::move(names));
}

bool same_space(const VarSpacePtr& a, const VarSpacePtr& b) {
    if (a == b) return true;
    return a && b && a->names_ == b->names_;
}

void require_same_space(const VarSpacePtr& a, const VarSpacePtr& b, const char* op) {
    if (!same_space(a, b)) throw DimensionError(std::string(op) + ": operands on different variable spaces");
}

// ---- Monomial order ----

unsigned monomial_degree(const Monomial& m) {
    unsigned d = 0;
    for (auto e : m) d += e;
    return d;
}

bool GradedLexLess::operator()(const Monomial& a, const Monomial& b) const {
    unsigned da = monomial_degree(a), db = monomial_degree(b);
    if (da != db) return da < db;
    // same degree: lexicographic on exponents from the first variable
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// ---- Polynomial ----

Polynomial::Polynomial(VarSpacePtr space) : space_(std::move(space)) {
    if (!space_) throw DimensionError("polynomial requires a variable space");
}

Polynomial Polynomial::constant(VarSpacePtr space, const Rational& c) {
    Polynomial p(std::move(space));
    p.add_term(Monomial(static_cast<std::size_t>(p.space_->dim()), 0), c);
    return p;
}

Polynomial Polynomial::variable(VarSpacePtr space, int i) {
    Polynomial p(std::move(space));
    if (i < 0 || i >= p.space_->dim()) throw DimensionError("variable index out of range");
    Monomial m(static_cast<std::size_t>(p.space_->dim()), 0);
    m[static_cast<std::size_t>(i)] = 1;
    p.add_term(m, Rational(1));
    return p;
}

Polynomial Polynomial::term(VarSpacePtr space, Monomial m, const Rational& c) {
    Polynomial p(std::move(space));
    if (static_cast<int>(m.size()) != p.space_->dim())
        throw DimensionError("monomial length does not match space dimension");
    p.add_term(m, c);
    return p;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && monomial_degree(terms_.begin()->first) == 0);
}

int Polynomial::degree() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(monomial_degree(terms_.rbegin()->first));
}

Rational Polynomial::constant_term() const {
    return coeff(Monomial(static_cast<std::size_t>(space_->dim()), 0));
}

Rational Polynomial::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

Polynomial Polynomial::operator-() const {
    Polynomial out(space_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    require_same_space(space_, o.space_, "poly add");
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    require_same_space(space_, o.space_, "poly sub");
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    require_same_space(space_, o.space_, "poly mul");
    Polynomial out(space_);
    const std::size_t n = static_cast<std::size_t>(space_->dim());
    Monomial prod(n);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            for (std::size_t i = 0; i < n; ++i) prod[i] = ma[i] + mb[i];
            out.add_term(prod, ca * cb);
        }
    }
    return out;
}

Polynomial Polynomial::scaled(const Rational& c) const {
    Polynomial out(space_);
    if (c.is_zero()) return out;
    for (const auto& [m, v] : terms_) out.terms_.emplace(m, v * c);
    return out;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial out = Polynomial::constant(space_, Rational(1));
    Polynomial base = *this;
    while (e) {
        if (e & 1u) out = out * base;
        if (e >>= 1u) base = base * base;
    }
    return out;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
    if (!same_space(a.space_, b.space_)) return false;
    if (a.terms_.size() != b.terms_.size()) return false;
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    for (; ia != a.terms_.end(); ++ia, ++ib)
        if (ia->first != ib->first || ia->second != ib->second) return false;
    return true;
}

Polynomial Polynomial::diff(int i) const {
    if (i < 0 || i >= space_->dim()) throw DimensionError("diff index out of range");
    Polynomial out(space_);
    const std::size_t v = static_cast<std::size_t>(i);
    for (const auto& [m, c] : terms_) {
        if (m[v] == 0) continue;
        Monomial dm = m;
        dm[v] -= 1;
        out.add_term(dm, c * Rational(static_cast<long>(m[v])));
    }
    return out;
}

Rational Polynomial::eval(const std::vector<Rational>& point) const {
    if (static_cast<int>(point.size()) != space_->dim())
        throw DimensionError("eval point dimension mismatch");
    Rational out(0);
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i]) t *= point[i].pow(m[i]);
        out += t;
    }
    return out;
}

Polynomial Polynomial::subst(const std::vector<Polynomial>& args) const {
    if (static_cast<int>(args.size()) != space_->dim())
        throw DimensionError("subst argument count mismatch");
    if (args.empty()) throw DimensionError("subst on empty space");
    VarSpacePtr target = args.front().space();
    for (const auto& a : args) require_same_space(target, a.space(), "subst");
    // cache powers of each argument up to the degree actually used
    std::vector<std::vector<Polynomial>> pows(args.size());
    for (std::size_t i = 0; i < args.size(); ++i)
        pows[i].push_back(Polynomial::constant(target, Rational(1)));
    Polynomial out(target);
    for (const auto& [m, c] : terms_) {
        Polynomial t = Polynomial::constant(target, c);
        for (std::size_t i = 0; i < m.size(); ++i) {
            while (pows[i].size() <= m[i]) pows[i].push_back(pows[i].back() * args[i]);
            if (m[i]) t = t * pows[i][m[i]];
        }
        out += t;
    }
    return out;
}

Polynomial Polynomial::lifted(const VarSpacePtr& bigger, const std::vector<int>& var_map) const {
    if (static_cast<int>(var_map.size()) != space_->dim())
        throw DimensionError("lift map length mismatch");
    Polynomial out(bigger);
    const std::size_t nb = static_cast<std::size_t>(bigger->dim());
    for (const auto& [m, c] : terms_) {
        Monomial lm(nb, 0);
        for (std::size_t i = 0; i < m.size(); ++i) {
            int t = var_map[i];
            if (t < 0 || t >= bigger->dim()) throw DimensionError("lift map target out of range");
            lm[static_cast<std::size_t>(t)] += m[i];
        }
        out.add_term(lm, c);
    }
    return out;
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // leading (highest) term first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Monomial& m = it->first;
        const Rational& c = it->second;
        Rational a = c.abs();
        if (first) {
            if (c.sign() < 0) os << "-";
            first = false;
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        bool has_vars = monomial_degree(m) > 0;
        bool coeff_shown = !has_vars || a != Rational(1);
        if (coeff_shown) os << a.str();
        bool need_star = coeff_shown;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (need_star) os << "*";
            os << space_->name(static_cast<int>(i));
            if (m[i] > 1) os << "^" << m[i];
            need_star = true;
        }
        if (!has_vars && !coeff_shown) os << a.str();
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

} // namespace coflat
