#include "coflat/rational.hpp"

#include "coflat/errors.hpp"

#include <cctype>
#include <ostream>

namespace coflat {

Rational::Rational(long num, long den) {
    if (den == 0) throw StructureError("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw StructureError("rational division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::parse(const std::string& text) {
    std::size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    auto read_int = [&]() -> std::string {
        std::string out;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) out += text[i++];
        std::size_t digits = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            out += text[i++];
            ++digits;
        }
        if (digits == 0) throw ParseError("expected integer in rational literal", i);
        return out;
    };
    skip_ws();
    std::string num = read_int();
    skip_ws();
    std::string den;
    if (i < text.size() && text[i] == '/') {
        ++i;
        skip_ws();
        den = read_int();
        skip_ws();
    }
    if (i != text.size()) throw ParseError("trailing characters in rational literal", i);
    mpq_class v;
    if (den.empty()) {
        v = mpq_class(num);
    } else {
        v = mpq_class(num + "/" + den);
        if (v.get_den() == 0) throw StructureError("rational with zero denominator");
    }
    v.canonicalize();
    return Rational(std::move(v));
}

Rational Rational::pow(unsigned e) const {
    Rational out(1), base = *this;
    while (e) {
        if (e & 1u) out *= base;
        base *= base;
        e >>= 1u;
    }
    return out;
}

Rational Rational::inv() const {
    if (is_zero()) throw StructureError("inverse of zero");
    return Rational(mpq_class(1 / v_));
}

std::string Rational::str() const {
    return v_.get_den() == 1 ? v_.get_num().get_str() : v_.get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

} // namespace coflat
