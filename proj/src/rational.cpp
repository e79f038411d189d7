#include "capax/rational.hpp"

#include <stdexcept>

namespace capax {

GaussInt divexact(const GaussInt& a, const GaussInt& b)
{
    if (b.is_zero()) throw std::domain_error("division by zero Gaussian integer");
    GaussInt num = a * b.conj();
    mpz_class n = b.norm();
    GaussInt q;
    mpz_divexact(q.re.get_mpz_t(), num.re.get_mpz_t(), n.get_mpz_t());
    mpz_divexact(q.im.get_mpz_t(), num.im.get_mpz_t(), n.get_mpz_t());
    return q;
}

GaussRational operator/(const GaussRational& a, const GaussRational& b)
{
    if (b.is_zero()) throw std::domain_error("division by zero");
    if (b.im == 0) return {a.re / b.re, a.im / b.re};
    mpq_class n = b.norm();
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

GaussRational pow(const GaussRational& a, unsigned e)
{
    GaussRational r(1), base = a;
    while (e) {
        if (e & 1u) r *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return r;
}

std::string to_string(const GaussRational& a)
{
    if (a.im == 0) return a.re.get_str();
    std::string ims = (a.im == 1) ? "i" : (a.im == -1 ? "-i" : a.im.get_str() + "*i");
    if (a.re == 0) return ims;
    std::string s = "(" + a.re.get_str();
    if (a.im < 0) {
        mpq_class m = -a.im;
        s += " - " + (m == 1 ? std::string("i") : m.get_str() + "*i");
    } else {
        s += " + " + (a.im == 1 ? std::string("i") : a.im.get_str() + "*i");
    }
    return s + ")";
}

mpz_class denominator_lcm(const GaussRational& a)
{
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), a.re.get_den_mpz_t(), a.im.get_den_mpz_t());
    return l;
}

}  // namespace capax
