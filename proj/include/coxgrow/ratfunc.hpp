#pragma once

#include <utility>
#include <vector>

#include "coxgrow/polynomial.hpp"

namespace coxgrow {

// Reduced fraction of integer polynomials. Canonical form: denominator
// nonzero with positive leading coefficient, gcd(num, den) = 1 in Q[t],
// and gcd(content(num), content(den)) = 1. For the fractions produced by
// the growth machinery the denominator is primitive, as its content is 1.
class RationalFunction {
  public:
    RationalFunction() : num_(), den_(IntPolynomial::constant(1)) {}
    explicit RationalFunction(IntPolynomial num)
        : num_(std::move(num)), den_(IntPolynomial::constant(1)) {}
    RationalFunction(IntPolynomial num, IntPolynomial den)
        : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw domain_error("rational function with zero denominator");
        reduce();
    }
    static RationalFunction constant(long v) {
        return RationalFunction(IntPolynomial::constant(BigInt(v)));
    }

    const IntPolynomial& num() const { return num_; }
    const IntPolynomial& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0 && den_.leading() == 1; }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) {
        return !(a == b);
    }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw domain_error("division by the zero function");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend RationalFunction operator-(const RationalFunction& a) {
        RationalFunction r = a;
        r.num_ = -r.num_;
        return r;
    }
    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }

    BigRational eval(const BigRational& x) const {
        BigRational d = den_.eval(x);
        if (d == 0) throw domain_error("pole of rational function");
        return num_.eval(x) / d;
    }

  private:
    IntPolynomial num_, den_;

    void reduce() {
        if (num_.is_zero()) {
            den_ = IntPolynomial::constant(1);
            return;
        }
        IntPolynomial g = IntPolynomial::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = IntPolynomial::exact_divide(num_, g);
            den_ = IntPolynomial::exact_divide(den_, g);
        }
        BigInt cn = num_.content(), cd = den_.content(), k;
        mpz_gcd(k.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
        if (k > 1) {
            num_ = divide_content(num_, k);
            den_ = divide_content(den_, k);
        }
        if (sign_of(den_.leading()) < 0) {
            num_ = -num_;
            den_ = -den_;
        }
    }

    static IntPolynomial divide_content(const IntPolynomial& p, const BigInt& k) {
        std::vector<BigInt> c = p.coeffs();
        for (auto& x : c) x /= k;
        return IntPolynomial(std::move(c));
    }
};

// First n+1 Taylor coefficients of f at t = 0, by the recurrence the
// denominator induces. Requires den(0) != 0.
inline std::vector<BigRational> series_coefficients(const RationalFunction& f, int n) {
    if (f.den().constant_term() == 0)
        throw domain_error("no power-series expansion: denominator vanishes at 0");
    const BigRational d0{f.den().constant_term()};
    std::vector<BigRational> out;
    out.reserve(n + 1);
    for (int k = 0; k <= n; ++k) {
        BigRational acc{f.num().coeff(k)};
        int top = std::min(k, f.den().degree());
        for (int j = 1; j <= top; ++j) acc -= BigRational(f.den().coeff(j)) * out[k - j];
        out.push_back(acc / d0);
    }
    return out;
}

}  // namespace coxgrow
