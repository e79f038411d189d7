#include "capax/polynomial.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>

namespace capax {

FloatPoly to_float(const ExactPoly& p)
{
    FloatPoly r;
    for (const auto& [m, c] : p.terms()) r.add_term(m, c.to_complex());
    return r;
}

ParseError::ParseError(Kind kind, std::size_t offset, const std::string& what)
    : std::runtime_error(what + " at byte " + std::to_string(offset)), m_kind(kind), m_offset(offset)
{
}

namespace {

struct Number {
    bool is_decimal = false;
    mpq_class q;
    double x = 0.0;
};

template <class Scalar>
Scalar from_number(const Number& n, std::size_t offset);

template <>
GaussRational from_number<GaussRational>(const Number& n, std::size_t offset)
{
    if (n.is_decimal) throw ParseError(ParseError::Kind::DecimalInExact, offset, "decimal literal in exact polynomial");
    return GaussRational(n.q);
}

template <>
cplx from_number<cplx>(const Number& n, std::size_t)
{
    return n.is_decimal ? cplx(n.x, 0.0) : cplx(n.q.get_d(), 0.0);
}

template <class Scalar>
class Parser {
public:
    explicit Parser(std::string_view s) : m_s(s) {}

    Polynomial<Scalar> parse()
    {
        auto p = expr();
        skip_ws();
        if (m_pos != m_s.size()) fail("unexpected character");
        return p;
    }

private:
    std::string_view m_s;
    std::size_t m_pos = 0;

    [[noreturn]] void fail(const std::string& msg, std::size_t at) const
    {
        throw ParseError(ParseError::Kind::Syntax, at, msg);
    }
    [[noreturn]] void fail(const std::string& msg) const { fail(msg, m_pos); }

    void skip_ws()
    {
        while (m_pos < m_s.size() && (m_s[m_pos] == ' ' || m_s[m_pos] == '\t' || m_s[m_pos] == '\n' || m_s[m_pos] == '\r'))
            ++m_pos;
    }
    bool peek(char c)
    {
        skip_ws();
        return m_pos < m_s.size() && m_s[m_pos] == c;
    }
    static bool is_digit(char c) { return c >= '0' && c <= '9'; }
    static bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }

    Polynomial<Scalar> expr()
    {
        bool neg = false;
        if (peek('-')) {
            ++m_pos;
            neg = true;
        } else if (peek('+')) {
            ++m_pos;
        }
        Polynomial<Scalar> acc = term();
        if (neg) acc = -acc;
        for (;;) {
            if (peek('+')) {
                ++m_pos;
                acc += term();
            } else if (peek('-')) {
                ++m_pos;
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    Polynomial<Scalar> term()
    {
        Polynomial<Scalar> acc = factor();
        while (peek('*')) {
            ++m_pos;
            acc = acc * factor();
        }
        return acc;
    }

    Polynomial<Scalar> factor()
    {
        Polynomial<Scalar> b = base();
        if (peek('^')) {
            ++m_pos;
            skip_ws();
            std::size_t start = m_pos;
            if (m_pos >= m_s.size() || !is_digit(m_s[m_pos]))
                throw ParseError(ParseError::Kind::BadExponent, start, "exponent not a non-negative integer literal");
            while (m_pos < m_s.size() && is_digit(m_s[m_pos])) ++m_pos;
            if (m_pos < m_s.size() && (m_s[m_pos] == '.' || m_s[m_pos] == '/' || is_alpha(m_s[m_pos])))
                throw ParseError(ParseError::Kind::BadExponent, start, "exponent not a non-negative integer literal");
            std::string digits(m_s.substr(start, m_pos - start));
            if (digits.size() > 4 || std::stoi(digits) > kDegreeCap)
                throw ParseError(ParseError::Kind::BadExponent, start, "exponent exceeds degree cap");
            return pow(b, static_cast<unsigned>(std::stoi(digits)));
        }
        return b;
    }

    Polynomial<Scalar> base()
    {
        skip_ws();
        if (m_pos >= m_s.size()) fail("unexpected end of input");
        char c = m_s[m_pos];
        if (c == '(') {
            ++m_pos;
            auto p = expr();
            if (!peek(')')) fail("expected ')'");
            ++m_pos;
            return p;
        }
        if (is_digit(c) || c == '.') {
            std::size_t start = m_pos;
            return Polynomial<Scalar>(from_number<Scalar>(number(), start));
        }
        if (is_alpha(c)) {
            std::size_t start = m_pos;
            while (m_pos < m_s.size() && (is_alpha(m_s[m_pos]) || is_digit(m_s[m_pos]))) ++m_pos;
            std::string_view name = m_s.substr(start, m_pos - start);
            if (name == "w1") return Polynomial<Scalar>::var(0);
            if (name == "w2") return Polynomial<Scalar>::var(1);
            if (name == "z1") return Polynomial<Scalar>::var(2);
            if (name == "z2") return Polynomial<Scalar>::var(3);
            if (name == "i") return Polynomial<Scalar>(imag_unit());
            throw ParseError(ParseError::Kind::UnknownVariable, start, "unknown variable '" + std::string(name) + "'");
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    static Scalar imag_unit();

    std::string digits()
    {
        std::size_t start = m_pos;
        while (m_pos < m_s.size() && is_digit(m_s[m_pos])) ++m_pos;
        return std::string(m_s.substr(start, m_pos - start));
    }

    Number number()
    {
        std::size_t start = m_pos;
        std::string int_part = digits();
        Number n;
        bool decimal = false;
        if (m_pos < m_s.size() && m_s[m_pos] == '.') {
            decimal = true;
            ++m_pos;
            digits();
        }
        if (m_pos < m_s.size() && (m_s[m_pos] == 'e' || m_s[m_pos] == 'E')) {
            std::size_t save = m_pos;
            ++m_pos;
            if (m_pos < m_s.size() && (m_s[m_pos] == '+' || m_s[m_pos] == '-')) ++m_pos;
            if (m_pos < m_s.size() && is_digit(m_s[m_pos])) {
                digits();
                decimal = true;
            } else {
                m_pos = save;
            }
        }
        std::string text(m_s.substr(start, m_pos - start));
        if (text == ".") fail("malformed number", start);
        if (decimal) {
            n.is_decimal = true;
            n.x = std::strtod(text.c_str(), nullptr);
            if (!std::isfinite(n.x)) fail("decimal literal out of range", start);
            return n;
        }
        n.q = mpq_class(mpz_class(int_part));
        skip_ws();
        if (m_pos < m_s.size() && m_s[m_pos] == '/') {
            ++m_pos;
            skip_ws();
            std::size_t dstart = m_pos;
            std::string den = digits();
            if (den.empty()) fail("expected integer denominator");
            mpz_class dz(den);
            if (dz == 0) throw ParseError(ParseError::Kind::DivisionByZero, dstart, "zero denominator");
            n.q = mpq_class(mpz_class(int_part), dz);
            n.q.canonicalize();
        }
        return n;
    }
};

template <>
GaussRational Parser<GaussRational>::imag_unit()
{
    return GaussRational::i();
}
template <>
cplx Parser<cplx>::imag_unit()
{
    return cplx(0.0, 1.0);
}

// Coefficient text and whether it should be written with a leading minus.
std::pair<std::string, bool> coeff_text(const GaussRational& c)
{
    if (c.im == 0) {
        if (c.re < 0) return {mpq_class(-c.re).get_str(), true};
        return {c.re.get_str(), false};
    }
    if (c.re == 0 && c.im < 0) return {to_string(GaussRational(0, -c.im)), true};
    return {to_string(c), false};
}

std::pair<std::string, bool> coeff_text(const cplx& c)
{
    if (c.imag() == 0.0) {
        if (std::signbit(c.real())) return {format_double(-c.real()), true};
        return {format_double(c.real()), false};
    }
    auto imag_text = [](double v) { return v == 1.0 ? std::string("i") : format_double(v) + "*i"; };
    if (c.real() == 0.0) {
        if (c.imag() < 0) return {imag_text(-c.imag()), true};
        return {imag_text(c.imag()), false};
    }
    std::string s = "(" + format_double(c.real());
    if (c.imag() < 0)
        s += " - " + imag_text(-c.imag());
    else
        s += " + " + imag_text(c.imag());
    return {s + ")", false};
}

template <class Scalar>
std::string print_impl(const Polynomial<Scalar>& p)
{
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        auto [ctext, neg] = coeff_text(it->second);
        std::string body;
        if (it->first.is_one())
            body = ctext;
        else if (ctext == "1")
            body = to_string(it->first);
        else
            body = ctext + "*" + to_string(it->first);
        if (first)
            out += neg ? "-" + body : body;
        else
            out += (neg ? " - " : " + ") + body;
        first = false;
    }
    return out;
}

cplx ipow(cplx x, int k)
{
    cplx r = 1.0;
    while (k) {
        if (k & 1) r *= x;
        k >>= 1;
        if (k) x *= x;
    }
    return r;
}

struct HornerTerm {
    Monomial m;
    cplx c;
};

cplx horner(const HornerTerm* begin, const HornerTerm* end, int slot, const std::array<cplx, 4>& x)
{
    if (slot == 4) return begin->c;
    cplx acc = 0.0;
    int prev = begin->m.e[slot];
    const HornerTerm* it = begin;
    while (it != end) {
        int k = it->m.e[slot];
        const HornerTerm* grp = it;
        while (it != end && it->m.e[slot] == k) ++it;
        acc = acc * ipow(x[slot], prev - k) + horner(grp, it, slot + 1, x);
        prev = k;
    }
    return acc * ipow(x[slot], prev);
}

}  // namespace

std::string format_double(double x)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

ExactPoly parse_exact(std::string_view text) { return Parser<GaussRational>(text).parse(); }

FloatPoly parse_float(std::string_view text)
{
    auto p = Parser<cplx>(text).parse();
    for (const auto& [m, c] : p.terms())
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw ParseError(ParseError::Kind::Syntax, 0, "non-finite coefficient");
    return p;
}

std::string print(const ExactPoly& p) { return print_impl(p); }
std::string print(const FloatPoly& p) { return print_impl(p); }

cplx evaluate(const FloatPoly& p, const std::array<cplx, 4>& point)
{
    if (p.is_zero()) return 0.0;
    std::vector<HornerTerm> t;
    t.reserve(p.size());
    for (const auto& [m, c] : p.terms()) t.push_back({m, c});
    std::sort(t.begin(), t.end(), [](const HornerTerm& a, const HornerTerm& b) { return a.m.e > b.m.e; });
    cplx v = horner(t.data(), t.data() + t.size(), 0, point);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw EvaluationOverflow("polynomial evaluation overflow");
    return v;
}

GaussRational evaluate(const ExactPoly& p, const std::array<GaussRational, 4>& point)
{
    GaussRational acc;
    for (const auto& [m, c] : p.terms()) {
        GaussRational t = c;
        for (int s = 0; s < 4; ++s)
            if (m.e[s]) t *= pow(point[s], static_cast<unsigned>(m.e[s]));
        acc += t;
    }
    return acc;
}

}  // namespace capax
