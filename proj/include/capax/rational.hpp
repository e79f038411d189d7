#pragma once

// Gaussian rationals and Gaussian integers over GMP.

#include <complex>
#include <ostream>
#include <string>

#include <Eigen/Core>
#include <gmpxx.h>

namespace capax {

struct GaussInt {
    mpz_class re, im;

    GaussInt() : re(0), im(0) {}
    GaussInt(long r) : re(r), im(0) {}
    GaussInt(mpz_class r, mpz_class i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    mpz_class norm() const { return re * re + im * im; }
    GaussInt conj() const { return GaussInt(re, -im); }

    friend GaussInt operator+(const GaussInt& a, const GaussInt& b) { return {a.re + b.re, a.im + b.im}; }
    friend GaussInt operator-(const GaussInt& a, const GaussInt& b) { return {a.re - b.re, a.im - b.im}; }
    friend GaussInt operator-(const GaussInt& a) { return {-a.re, -a.im}; }
    friend GaussInt operator*(const GaussInt& a, const GaussInt& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const GaussInt& a, const GaussInt& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GaussInt& a, const GaussInt& b) { return !(a == b); }
};

// a / b where b is known to divide a exactly.
GaussInt divexact(const GaussInt& a, const GaussInt& b);

struct GaussRational {
    mpq_class re, im;

    GaussRational() : re(0), im(0) {}
    GaussRational(long r) : re(r), im(0) {}
    GaussRational(int r) : re(r), im(0) {}
    GaussRational(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {}
    explicit GaussRational(const GaussInt& z) : re(z.re), im(z.im) {}

    static GaussRational i() { return {0, 1}; }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }
    GaussRational conj() const { return {re, -im}; }
    mpq_class norm() const { return re * re + im * im; }
    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

    GaussRational& operator+=(const GaussRational& b) { re += b.re; im += b.im; return *this; }
    GaussRational& operator-=(const GaussRational& b) { re -= b.re; im -= b.im; return *this; }
    GaussRational& operator*=(const GaussRational& b) { *this = *this * b; return *this; }
    GaussRational& operator/=(const GaussRational& b) { *this = *this / b; return *this; }

    friend GaussRational operator+(const GaussRational& a, const GaussRational& b) { return {a.re + b.re, a.im + b.im}; }
    friend GaussRational operator-(const GaussRational& a, const GaussRational& b) { return {a.re - b.re, a.im - b.im}; }
    friend GaussRational operator-(const GaussRational& a) { return {-a.re, -a.im}; }
    friend GaussRational operator*(const GaussRational& a, const GaussRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussRational operator/(const GaussRational& a, const GaussRational& b);
    friend bool operator==(const GaussRational& a, const GaussRational& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }
};

GaussRational pow(const GaussRational& a, unsigned e);

// "3", "-1/2", "(1/2 + 3*i)", "2*i"
std::string to_string(const GaussRational& a);

inline std::ostream& operator<<(std::ostream& os, const GaussRational& a) { return os << to_string(a); }

// Smallest positive integer D with D*a a Gaussian integer.
mpz_class denominator_lcm(const GaussRational& a);

}  // namespace capax

namespace Eigen {

template <>
struct NumTraits<capax::GaussRational> : GenericNumTraits<capax::GaussRational> {
    typedef capax::GaussRational Real;
    typedef capax::GaussRational NonInteger;
    typedef capax::GaussRational Nested;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 4,
        AddCost = 16,
        MulCost = 32
    };
    static constexpr int digits10() { return 0; }
};

template <>
struct NumTraits<capax::GaussInt> : GenericNumTraits<capax::GaussInt> {
    typedef capax::GaussInt Real;
    typedef capax::GaussInt NonInteger;
    typedef capax::GaussInt Nested;
    enum {
        IsComplex = 0,
        IsInteger = 1,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 4,
        AddCost = 16,
        MulCost = 32
    };
    static constexpr int digits10() { return 0; }
};

}  // namespace Eigen
