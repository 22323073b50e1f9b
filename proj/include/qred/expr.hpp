/*
  A small expression parser for site polynomials, used by tests and the model
  loader. Grammar:

      expr   := term (('+'|'-') term)*
      term   := factor ('*'? factor)*        (juxtaposition not allowed; '*' required)
      factor := atom ('^' uint)?
      atom   := rational | name | '(' expr ')' | '-' factor

  Rationals are written p or p/q; the reserved name "h" denotes the formal
  deformation parameter. Generator names come from the Site.
*/
#pragma once

#include "qred/sitepoly.hpp"

#include <cctype>
#include <stdexcept>
#include <string>

namespace qred {

class ExprParser {
  public:
    ExprParser(const Site& site, std::string text) : site_(site), text_(std::move(text)) {}

    SitePolynomial parse() {
        SitePolynomial p = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing input");
        return p;
    }

  private:
    SitePolynomial parse_expr() {
        SitePolynomial acc = parse_term();
        for (;;) {
            skip_ws();
            if (peek() == '+') {
                ++pos_;
                acc += parse_term();
            } else if (peek() == '-') {
                ++pos_;
                acc -= parse_term();
            } else {
                return acc;
            }
        }
    }

    SitePolynomial parse_term() {
        SitePolynomial acc = parse_factor();
        for (;;) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                acc *= parse_factor();
            } else {
                return acc;
            }
        }
    }

    SitePolynomial parse_factor() {
        SitePolynomial base = parse_atom();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            int e = parse_uint();
            SitePolynomial r = SitePolynomial::constant(site_.gens(), Scalar::one());
            for (int i = 0; i < e; ++i) r *= base;
            return r;
        }
        return base;
    }

    SitePolynomial parse_atom() {
        skip_ws();
        char c = peek();
        if (c == '-') {
            ++pos_;
            return -parse_factor();
        }
        if (c == '(') {
            ++pos_;
            SitePolynomial p = parse_expr();
            skip_ws();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long num = parse_uint();
            skip_ws();
            if (peek() == '/') {
                ++pos_;
                skip_ws();
                long den = parse_uint();
                if (den == 0) fail("zero denominator");
                return SitePolynomial::constant(site_.gens(), Scalar(rat(num, den)));
            }
            return SitePolynomial::constant(site_.gens(), Scalar(rat(num)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name = parse_name();
            if (name == "h")
                return SitePolynomial::constant(site_.gens(), Scalar::hbar());
            for (int g = 0; g < site_.gens(); ++g)
                if (site_.gen_name(g) == name)
                    return SitePolynomial::generator(site_.gens(), g);
            fail("unknown generator '" + name + "'");
        }
        fail("unexpected character");
        return SitePolynomial(site_.gens());  // unreachable
    }

    long parse_uint() {
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a number");
        long v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + (text_[pos_] - '0');
            ++pos_;
        }
        return v;
    }

    std::string parse_name() {
        std::string s;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            s += text_[pos_];
            ++pos_;
        }
        return s;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    [[noreturn]] void fail(const std::string& why) const {
        throw std::invalid_argument("parse error at position " + std::to_string(pos_) + ": " +
                                    why + " in \"" + text_ + "\"");
    }

    const Site& site_;
    std::string text_;
    std::size_t pos_ = 0;
};

inline SitePolynomial parse_poly(const Site& site, const std::string& text) {
    return ExprParser(site, text).parse();
}

}  // namespace qred
