#include "qhmod/parser.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace qhmod {

namespace {

constexpr std::int64_t kMaxExponent = 100000;

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    BiPoly run() {
        BiPoly r = expr();
        skip_ws();
        if (pos_ != s_.size()) throw ParseError(pos_, "end of input");
        return r;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    int peek() {
        skip_ws();
        return pos_ < s_.size() ? static_cast<unsigned char>(s_[pos_]) : -1;
    }
    bool eat(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool at_factor_start() {
        int c = peek();
        return c == '(' || c == 'i' || c == 'x' || c == 'y' || std::isdigit(c);
    }

    BiPoly expr() {
        bool neg = false;
        if (eat('-')) neg = true;
        else eat('+');
        BiPoly acc = term();
        if (neg) acc = -acc;
        while (true) {
            int c = peek();
            if (c == '+') {
                ++pos_;
                acc = acc + term();
            } else if (c == '-') {
                ++pos_;
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    BiPoly term() {
        BiPoly acc = factor();
        while (true) {
            if (eat('*')) {
                acc = acc * factor();
            } else if (at_factor_start()) {
                acc = acc * factor(); // implicit multiplication
            } else {
                return acc;
            }
        }
    }

    BiPoly factor() {
        BiPoly base = atom();
        if (eat('^')) {
            std::int64_t e = exponent();
            return base.pow(e);
        }
        return base;
    }

    BiPoly atom() {
        int c = peek();
        if (c == '(') {
            ++pos_;
            BiPoly inner = expr();
            if (!eat(')')) throw ParseError(pos_, "')'");
            return inner;
        }
        if (c == 'i') {
            ++pos_;
            return BiPoly::constant(ExactComplex(0, 1));
        }
        if (c == 'x') {
            ++pos_;
            return BiPoly::var_x();
        }
        if (c == 'y') {
            ++pos_;
            return BiPoly::var_y();
        }
        if (std::isdigit(c)) {
            Rational num(integer_literal(), 10);
            num.canonicalize();
            std::size_t save = pos_;
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == '/') {
                ++pos_;
                if (!std::isdigit(peek())) throw ParseError(pos_, "integer denominator");
                Rational den(integer_literal(), 10);
                den.canonicalize();
                if (den == 0) throw ParseError(pos_, "nonzero denominator");
                num /= den;
            } else {
                pos_ = save;
            }
            return BiPoly::constant(ExactComplex(num));
        }
        throw ParseError(pos_, "number, 'i', 'x', 'y', or '('");
    }

    // Nonnegative integer literal after '^'; parenthesized signed rationals are
    // accepted syntactically and rejected with the dedicated errors.
    std::int64_t exponent() {
        bool paren = eat('(');
        std::size_t at = pos_;
        bool neg = false;
        if (eat('-')) neg = true;
        else eat('+');
        if (!std::isdigit(peek())) throw ParseError(pos_, "integer exponent");
        at = pos_;
        Rational v(integer_literal(), 10);
        v.canonicalize();
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '/') {
            ++pos_;
            if (!std::isdigit(peek())) throw ParseError(pos_, "integer denominator");
            Rational den(integer_literal(), 10);
            den.canonicalize();
            if (den == 0) throw ParseError(pos_, "nonzero denominator");
            v /= den;
        }
        if (paren && !eat(')')) throw ParseError(pos_, "')'");
        if (neg && v != 0) throw NegativeExponentError(at);
        if (!is_integer(v)) throw NonIntegerExponentError(at);
        if (v > kMaxExponent) throw ParseError(at, "exponent within range");
        return static_cast<std::int64_t>(v.get_num().get_si());
    }

    std::string integer_literal() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) throw ParseError(pos_, "digit");
        return std::string(s_.substr(start, pos_ - start));
    }
};

std::string monomial_text(Exp2 e) {
    std::string s;
    if (e.i == 1) s += "x";
    else if (e.i > 1) s += "x^" + std::to_string(e.i);
    if (e.j >= 1) {
        if (!s.empty()) s += "*";
        s += (e.j == 1) ? "y" : "y^" + std::to_string(e.j);
    }
    return s;
}

// Body without the leading sign; `neg` reports whether a sign was extracted.
std::string term_body(const ExactComplex& c, Exp2 e, bool& neg) {
    std::string mono = monomial_text(e);
    neg = false;
    if (c.im == 0) {
        Rational r = c.re;
        if (r < 0) {
            neg = true;
            r = -r;
        }
        if (mono.empty()) return rational_str(r);
        if (r == 1) return mono;
        return rational_str(r) + "*" + mono;
    }
    if (c.re == 0) {
        Rational r = c.im;
        if (r < 0) {
            neg = true;
            r = -r;
        }
        std::string coeff = (r == 1) ? "i" : rational_str(r) + "*i";
        return mono.empty() ? coeff : coeff + "*" + mono;
    }
    // Mixed real and imaginary part: parenthesized, never carries an outer sign.
    std::string inner = rational_str(c.re);
    Rational a = abs(c.im);
    inner += (c.im > 0) ? "+" : "-";
    inner += (a == 1) ? "i" : rational_str(a) + "*i";
    std::string coeff = "(" + inner + ")";
    return mono.empty() ? coeff : coeff + "*" + mono;
}

} // namespace

BiPoly parse_poly(std::string_view src) { return Parser(src).run(); }

std::string format_poly(const BiPoly& f) {
    if (f.is_zero()) return "0";
    std::vector<std::pair<Exp2, ExactComplex>> terms(f.terms().begin(), f.terms().end());
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        std::int64_t da = a.first.i + a.first.j, db = b.first.i + b.first.j;
        if (da != db) return da > db;
        return a.first.i > b.first.i;
    });
    std::string out;
    bool first = true;
    for (auto& [e, c] : terms) {
        bool neg = false;
        std::string body = term_body(c, e, neg);
        if (first) {
            if (neg) out += "-";
            out += body;
            first = false;
        } else {
            out += neg ? " - " : " + ";
            out += body;
        }
    }
    return out;
}

} // namespace qhmod
