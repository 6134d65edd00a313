#include "coflat/errors.hpp"
#include "coflat/polynomial.hpp"

#include <cctype>

namespace coflat {

namespace {

// Token-level grammar:
//   expr   := ['-'|'+'] termgroup (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ['^' UINT]
//   atom   := RATIONAL | IDENT | '(' expr ')'
//   RATIONAL := UINT ['/' UINT]   (sign handled at expr level)
// '/' is only a rational-literal separator, never an operator on variables.
struct Lexer {
    const std::string& s;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    std::string read_uint() {
        skip_ws();
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) throw ParseError("expected integer", start);
        return s.substr(start, i - start);
    }
    std::string read_ident() {
        skip_ws();
        std::size_t start = i;
        if (i >= s.size() || !(std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_'))
            throw ParseError("expected identifier", start);
        while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
        return s.substr(start, i - start);
    }
};

} // namespace

class PolyParser {
public:
    PolyParser(VarSpacePtr space, const std::string& text) : space_(std::move(space)), lex_{text} {}

    Polynomial run() {
        Polynomial p = expr();
        if (!lex_.eof()) throw ParseError("unexpected trailing input", lex_.i);
        return p;
    }

private:
    Polynomial expr() {
        int sign = 1;
        if (lex_.accept('-')) sign = -1;
        else lex_.accept('+');
        Polynomial acc = term();
        if (sign < 0) acc = -acc;
        for (;;) {
            if (lex_.accept('+')) acc += term();
            else if (lex_.accept('-')) acc -= term();
            else break;
        }
        return acc;
    }

    Polynomial term() {
        Polynomial acc = factor();
        while (lex_.accept('*')) acc = acc * factor();
        return acc;
    }

    Polynomial factor() {
        Polynomial base = atom();
        if (lex_.accept('^')) {
            std::size_t at = lex_.i;
            std::string e = lex_.read_uint();
            unsigned long v = 0;
            try {
                v = std::stoul(e);
            } catch (...) {
                throw ParseError("exponent out of range", at);
            }
            if (v > 64) throw ParseError("exponent too large", at);
            base = base.pow(static_cast<unsigned>(v));
        }
        return base;
    }

    Polynomial atom() {
        char c = lex_.peek();
        if (c == '(') {
            lex_.accept('(');
            Polynomial p = expr();
            if (!lex_.accept(')')) throw ParseError("expected ')'", lex_.i);
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = lex_.read_uint();
            if (lex_.accept('/')) {
                std::size_t at = lex_.i;
                std::string den = lex_.read_uint();
                if (Rational::parse(den).is_zero()) throw ParseError("zero denominator", at);
                return Polynomial::constant(space_, Rational::parse(num + "/" + den));
            }
            return Polynomial::constant(space_, Rational::parse(num));
        }
        std::size_t at = lex_.i;
        std::string name = lex_.read_ident();
        auto idx = space_->index_of(name);
        if (!idx) throw ParseError("unknown variable '" + name + "'", at);
        return Polynomial::variable(space_, *idx);
    }

    VarSpacePtr space_;
    Lexer lex_;
};

Polynomial Polynomial::parse(VarSpacePtr space, const std::string& text) {
    return PolyParser(std::move(space), text).run();
}

} // namespace coflat
