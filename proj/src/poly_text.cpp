#include "soscert/poly_text.hpp"

#include <cctype>
#include <sstream>

namespace soscert {

namespace {

// Recursive-descent parser over a flat character view.
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' uint)*
//   base   := number | variable | '(' expr ')'
//
// '/' only appears inside a rational literal (digits '/' digits), never as
// a general division operator.
class Parser {
  public:
    Parser(const std::string& text, int nvars) : s_(text), nvars_(nvars) {}

    Polynomial run() {
        skip_ws();
        if (eof()) return Polynomial(nvars_);  // empty text = zero polynomial
        Polynomial p = expr();
        skip_ws();
        if (!eof()) fail("unexpected trailing input");
        return p;
    }

  private:
    Polynomial expr() {
        bool neg = false;
        skip_ws();
        if (peek() == '+' || peek() == '-') neg = (get() == '-');
        Polynomial acc = term();
        if (neg) acc = -acc;
        for (;;) {
            skip_ws();
            char c = peek();
            if (c != '+' && c != '-') break;
            get();
            Polynomial t = term();
            acc = (c == '+') ? acc + t : acc - t;
        }
        return acc;
    }

    Polynomial term() {
        Polynomial acc = factor();
        for (;;) {
            skip_ws();
            if (peek() != '*') break;
            get();
            acc = acc * factor();
        }
        return acc;
    }

    Polynomial factor() {
        Polynomial base = atom();
        for (;;) {
            skip_ws();
            if (peek() != '^') break;
            get();
            skip_ws();
            if (peek() == '-') fail("negative exponent");
            if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent");
            unsigned long e = parse_uint();
            if (e > 4096) fail("exponent too large");
            base = pow_poly(base, e);
        }
        return base;
    }

    Polynomial atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            get();
            Polynomial p = expr();
            skip_ws();
            if (peek() != ')') fail("expected ')'");
            get();
            return p;
        }
        if (c == 'x') return variable();
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        fail("expected number, variable, or '('");
        return Polynomial(nvars_);  // unreachable
    }

    Polynomial variable() {
        get();  // 'x'
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected variable index after 'x'");
        unsigned long idx = parse_uint();
        if (idx < 1 || idx > static_cast<unsigned long>(nvars_))
            fail("variable index out of range (nvars = " + std::to_string(nvars_) + ")");
        Monomial m(static_cast<std::size_t>(nvars_));
        m.exps[idx - 1] = 1;
        return monomial_polynomial(nvars_, m);
    }

    Polynomial number() {
        std::string digits;
        while (std::isdigit(static_cast<unsigned char>(peek()))) digits.push_back(get());
        Rational value;
        bool fractional = false;
        if (peek() == '.') {
            get();
            std::string frac;
            while (std::isdigit(static_cast<unsigned char>(peek()))) frac.push_back(get());
            if (digits.empty() && frac.empty()) fail("malformed decimal literal");
            Int num(digits.empty() ? "0" : digits);
            Int den(1);
            for (char d : frac) {
                num = num * 10 + (d - '0');
                den *= 10;
            }
            value = Rational(num, den);
            fractional = true;
        } else {
            if (digits.empty()) fail("expected digits");
            value = Rational(Int(digits));
        }
        // scientific exponent: 1.5e-3
        if (peek() == 'e' || peek() == 'E') {
            std::size_t save = pos_;
            get();
            bool eneg = false;
            if (peek() == '+' || peek() == '-') eneg = (get() == '-');
            if (!std::isdigit(static_cast<unsigned char>(peek()))) {
                pos_ = save;  // not an exponent ("e" belongs to something else)
            } else {
                unsigned long e = parse_uint();
                if (e > 4096) fail("exponent too large");
                Int p10(1);
                for (unsigned long i = 0; i < e; ++i) p10 *= 10;
                if (eneg)
                    value /= Rational(p10);
                else
                    value *= Rational(p10);
            }
        } else if (!fractional && peek() == '/') {
            // rational literal p/q
            std::size_t save = pos_;
            get();
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                std::string den;
                while (std::isdigit(static_cast<unsigned char>(peek()))) den.push_back(get());
                Int d(den);
                if (d == 0) fail("zero denominator");
                value /= Rational(d);
            } else {
                pos_ = save;
            }
        }
        return constant_polynomial(nvars_, value);
    }

    static Polynomial pow_poly(const Polynomial& base, unsigned long e) {
        Polynomial acc = constant_polynomial(base.nvars(), 1);
        Polynomial sq = base;
        while (e) {
            if (e & 1) acc = acc * sq;
            e >>= 1;
            if (e) sq = sq * sq;
        }
        return acc;
    }

    unsigned long parse_uint() {
        unsigned long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + static_cast<unsigned long>(get() - '0');
            if (v > 100000000UL) fail("integer too large");
        }
        return v;
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eof() const { return pos_ >= s_.size(); }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    char get() { return s_[pos_++]; }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

    const std::string& s_;
    int nvars_;
    std::size_t pos_ = 0;
};

void append_monomial(std::string& out, const Monomial& m) {
    bool first = true;
    for (std::size_t i = 0; i < m.exps.size(); ++i) {
        if (!m.exps[i]) continue;
        if (!first) out += "*";
        first = false;
        out += "x" + std::to_string(i + 1);
        if (m.exps[i] > 1) out += "^" + std::to_string(m.exps[i]);
    }
}

}  // namespace

Polynomial parse_polynomial(const std::string& text, int nvars) {
    if (nvars < 0) throw std::invalid_argument("parse_polynomial: nvars must be >= 0");
    return Parser(text, nvars).run();
}

std::string print_polynomial(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto& [m, c] : p.terms()) {
        Rational a = rat_abs(c);
        if (first) {
            if (c < 0) out += "-";
            first = false;
        } else {
            out += (c < 0) ? " - " : " + ";
        }
        if (m.is_constant()) {
            out += rat_str(a);
        } else {
            if (a != 1) {
                out += rat_str(a);
                out += "*";
            }
            append_monomial(out, m);
        }
    }
    return out;
}

std::string print_polynomial(const FloatPolynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto& [m, c] : p.terms()) {
        bool neg = c.sign() < 0;
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        out += c.abs().str();
        if (!m.is_constant()) {
            out += "*";
            append_monomial(out, m);
        }
    }
    return out;
}

std::string print_monomial(const Monomial& m) {
    if (m.is_constant()) return "1";
    std::string out;
    append_monomial(out, m);
    return out;
}

int scan_max_variable_index(const std::string& text) {
    int best = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != 'x') continue;
        std::size_t j = i + 1;
        long v = 0;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])) && v < 1000000) {
            v = v * 10 + (text[j] - '0');
            ++j;
        }
        if (j > i + 1 && v > best) best = static_cast<int>(v);
    }
    return best;
}

}  // namespace soscert
