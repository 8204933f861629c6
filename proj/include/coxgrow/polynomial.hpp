#pragma once

#include <algorithm>
#include <initializer_list>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "coxgrow/rational.hpp"

namespace coxgrow {

class IntPolynomial;

// Result of fraction-free division: scale * p = quotient * d + remainder,
// with scale = lc(d)^(deg p - deg d + 1) and deg remainder < deg d.
struct PseudoDivision;

// Dense univariate polynomial over Z. Coefficients are stored in ascending
// degree order with no trailing zeros; the zero polynomial has an empty
// coefficient vector and degree -1.
class IntPolynomial {
  public:
    IntPolynomial() = default;
    IntPolynomial(std::initializer_list<long> coeffs) {
        for (long c : coeffs) c_.emplace_back(c);
        normalize();
    }
    IntPolynomial(std::initializer_list<BigInt> coeffs) : c_(coeffs) { normalize(); }
    explicit IntPolynomial(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) {
        normalize();
    }
    static IntPolynomial constant(BigInt v) {
        IntPolynomial p;
        p.c_.push_back(std::move(v));
        p.normalize();
        return p;
    }
    static IntPolynomial monomial(BigInt coeff, int deg) {
        IntPolynomial p;
        if (coeff != 0) {
            p.c_.assign(deg + 1, BigInt(0));
            p.c_[deg] = std::move(coeff);
        }
        return p;
    }
    // 1 + t + ... + t^{d-1}
    static IntPolynomial all_ones(int d) {
        IntPolynomial p;
        p.c_.assign(d, BigInt(1));
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<BigInt>& coeffs() const { return c_; }
    BigInt coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : BigInt(0);
    }
    const BigInt& leading() const {
        static const BigInt zero(0);
        return c_.empty() ? zero : c_.back();
    }
    BigInt constant_term() const { return coeff(0); }

    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
        return a.c_ == b.c_;
    }
    friend bool operator!=(const IntPolynomial& a, const IntPolynomial& b) {
        return !(a == b);
    }

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
        IntPolynomial r;
        r.c_.resize(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.coeff(i) + b.coeff(i);
        r.normalize();
        return r;
    }
    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
        IntPolynomial r;
        r.c_.resize(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.coeff(i) - b.coeff(i);
        r.normalize();
        return r;
    }
    friend IntPolynomial operator-(const IntPolynomial& a) {
        IntPolynomial r = a;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        IntPolynomial r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, BigInt(0));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        }
        r.normalize();
        return r;
    }
    friend IntPolynomial operator*(const BigInt& s, const IntPolynomial& a) {
        if (s == 0) return {};
        IntPolynomial r = a;
        for (auto& x : r.c_) x *= s;
        return r;
    }
    IntPolynomial& operator+=(const IntPolynomial& o) { return *this = *this + o; }
    IntPolynomial& operator-=(const IntPolynomial& o) { return *this = *this - o; }
    IntPolynomial& operator*=(const IntPolynomial& o) { return *this = *this * o; }

    IntPolynomial pow(unsigned e) const {
        IntPolynomial r = constant(1), base = *this;
        while (e) {
            if (e & 1) r *= base;
            base = (e >>= 1) ? base * base : base;
        }
        return r;
    }

    IntPolynomial derivative() const {
        IntPolynomial r;
        if (c_.size() <= 1) return r;
        r.c_.resize(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = BigInt(i) * c_[i];
        r.normalize();
        return r;
    }

    BigInt eval_int(const BigInt& x) const {
        BigInt acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    BigRational eval(const BigRational& x) const {
        if (is_zero()) return BigRational(0);
        // homogeneous evaluation: p(a/b) = sum c_i a^i b^{n-i} / b^n
        const BigInt a = x.get_num(), b = x.get_den();
        BigInt acc(0), bp(1);
        std::vector<BigInt> bpow(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) {
            bpow[c_.size() - 1 - i] = bp;
            bp *= b;
        }
        BigInt ap(1);
        for (size_t i = 0; i < c_.size(); ++i) {
            acc += c_[i] * ap * bpow[i];
            ap *= a;
        }
        return make_rational(acc, big_pow(b, static_cast<unsigned long>(degree())));
    }

    // Sign of p(x) without constructing the rational value.
    int sign_at(const BigRational& x) const {
        if (is_zero()) return 0;
        const BigInt a = x.get_num(), b = x.get_den();
        BigInt acc(0), ap(1);
        std::vector<BigInt> bpow(c_.size());
        BigInt bp(1);
        for (size_t i = 0; i < c_.size(); ++i) {
            bpow[c_.size() - 1 - i] = bp;
            bp *= b;
        }
        for (size_t i = 0; i < c_.size(); ++i) {
            acc += c_[i] * ap * bpow[i];
            ap *= a;
        }
        return sign_of(acc);
    }

    // sign of p at +inf / -inf
    int sign_at_pos_inf() const { return sign_of(leading()); }
    int sign_at_neg_inf() const {
        int s = sign_of(leading());
        return (degree() % 2 == 0) ? s : -s;
    }

    // Content: gcd of coefficients, always >= 0.
    BigInt content() const {
        BigInt g(0);
        for (const auto& x : c_) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
            if (g == 1) break;
        }
        return g;
    }
    // p / content(p); keeps the sign of the leading coefficient.
    IntPolynomial primitive_part() const {
        if (is_zero()) return {};
        BigInt g = content();
        IntPolynomial r = *this;
        if (g != 1)
            for (auto& x : r.c_) x /= g;
        return r;
    }

    // t^deg * p(1/t): the coefficient-reversed polynomial. Requires p(0) != 0.
    IntPolynomial reciprocal() const {
        if (is_zero() || c_.front() == 0)
            throw domain_error("reciprocal_poly requires nonzero constant term");
        IntPolynomial r = *this;
        std::reverse(r.c_.begin(), r.c_.end());
        return r;
    }

    static PseudoDivision pseudo_divrem(const IntPolynomial& p, const IntPolynomial& d);

    // Exact division; throws if d does not divide p over Q.
    static IntPolynomial exact_divide(const IntPolynomial& p, const IntPolynomial& d) {
        IntPolynomial q;
        if (!try_exact_divide(p, d, q)) throw domain_error("polynomial division is not exact");
        return q;
    }
    // Divisibility in Q[t] (contents ignored).
    static bool divides(const IntPolynomial& d, const IntPolynomial& p);
    static bool try_exact_divide(const IntPolynomial& p, const IntPolynomial& d,
                                 IntPolynomial& q_out) {
        if (d.is_zero()) throw domain_error("division by the zero polynomial");
        if (p.is_zero()) {
            q_out = {};
            return true;
        }
        if (p.degree() < d.degree()) return false;
        // synthetic division over Q, exactness checked on the fly
        std::vector<BigRational> r(p.c_.begin(), p.c_.end());
        const BigInt& lc = d.leading();
        std::vector<BigRational> q(p.degree() - d.degree() + 1);
        for (int k = p.degree(); k >= d.degree(); --k) {
            BigRational top = r[k] / BigRational(lc);
            q[k - d.degree()] = top;
            if (top != 0)
                for (int i = 0; i <= d.degree(); ++i) r[k - d.degree() + i] -= top * BigRational(d.c_[i]);
        }
        for (int i = 0; i < d.degree(); ++i)
            if (r[i] != 0) return false;
        std::vector<BigInt> qi(q.size());
        for (size_t i = 0; i < q.size(); ++i) {
            if (q[i].get_den() != 1) return false;
            qi[i] = q[i].get_num();
        }
        q_out = IntPolynomial(std::move(qi));
        return true;
    }

    // Primitive gcd with positive leading coefficient (primitive PRS).
    static IntPolynomial gcd(IntPolynomial a, IntPolynomial b);

    IntPolynomial squarefree_part() const {
        if (is_zero()) throw domain_error("squarefree part of zero polynomial");
        if (degree() == 0) return constant(1);
        IntPolynomial g = gcd(*this, derivative());
        if (g.degree() == 0) return primitive_part();
        return exact_divide(primitive_part(), g).primitive_part();
    }

    // Human readable "c0 + c1*t + ... + ck*t^k" form.
    std::string to_string() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            BigInt a = c_[i];
            if (first) {
                if (a < 0) os << "-";
            } else {
                os << (a < 0 ? " - " : " + ");
            }
            BigInt m = abs(a);
            if (i == 0)
                os << m.get_str();
            else {
                if (m != 1) os << m.get_str() << "*";
                os << "t";
                if (i > 1) os << "^" << i;
            }
            first = false;
        }
        return os.str();
    }

    // sum of c_i * t^e_i from a degree -> coefficient map
    static IntPolynomial from_terms(const std::map<int, BigInt>& terms) {
        IntPolynomial p;
        int d = terms.empty() ? -1 : terms.rbegin()->first;
        p.c_.assign(d + 1, BigInt(0));
        for (const auto& [e, c] : terms) p.c_[e] = c;
        p.normalize();
        return p;
    }

  private:
    std::vector<BigInt> c_;

    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    static IntPolynomial normalize_gcd(IntPolynomial g) {
        g = g.primitive_part();
        if (sign_of(g.leading()) < 0)
            for (auto& x : g.c_) x = -x;
        return g;
    }
    friend class RationalFunction;
};

struct PseudoDivision {
    IntPolynomial quotient;
    IntPolynomial remainder;
    BigInt scale;  // lc(d)^(deg p - deg d + 1)
};

inline PseudoDivision IntPolynomial::pseudo_divrem(const IntPolynomial& p,
                                                   const IntPolynomial& d) {
    if (d.is_zero()) throw domain_error("division by the zero polynomial");
    PseudoDivision out;
    if (p.degree() < d.degree()) {
        out.quotient = {};
        out.remainder = p;
        out.scale = 1;
        return out;
    }
    const BigInt lc = d.leading();
    const int m = d.degree();
    const int steps = p.degree() - m + 1;
    std::vector<BigInt> r = p.c_;
    std::vector<BigInt> q(steps, BigInt(0));
    for (int j = steps - 1; j >= 0; --j) {
        const BigInt top = r[m + j];  // coefficient to cancel, pre-scaling
        for (auto& x : q) x *= lc;
        q[j] += top;
        for (auto& x : r) x *= lc;
        if (top != 0)
            for (int i = 0; i <= m; ++i) r[i + j] -= top * d.c_[i];
    }
    r.resize(m);
    out.quotient = IntPolynomial(std::move(q));
    out.remainder = IntPolynomial(std::move(r));
    out.scale = big_pow(lc, steps);
    return out;
}

inline bool IntPolynomial::divides(const IntPolynomial& d, const IntPolynomial& p) {
    if (d.is_zero()) return p.is_zero();
    if (p.is_zero()) return true;
    return pseudo_divrem(p.primitive_part(), d.primitive_part()).remainder.is_zero();
}

inline IntPolynomial IntPolynomial::gcd(IntPolynomial a, IntPolynomial b) {
    if (a.is_zero()) return normalize_gcd(b);
    if (b.is_zero()) return normalize_gcd(a);
    a = a.primitive_part();
    b = b.primitive_part();
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        IntPolynomial r = pseudo_divrem(a, b).remainder.primitive_part();
        a = std::move(b);
        b = std::move(r);
    }
    return normalize_gcd(a);
}

// t^n - 1
inline IntPolynomial t_pow_minus_one(int n) {
    IntPolynomial p = IntPolynomial::monomial(BigInt(1), n);
    return p - IntPolynomial::constant(BigInt(1));
}

// n-th cyclotomic polynomial, by exact division of t^n - 1 by the lower ones.
// Cached; these are the irreducible factors of the finite-type Poincare
// polynomials, so only small n ever occur.
inline const IntPolynomial& cyclotomic(int n) {
    static std::vector<IntPolynomial> cache{IntPolynomial{}};  // index 0 unused
    if (n <= 0) throw domain_error("cyclotomic index must be positive");
    for (int k = static_cast<int>(cache.size()); k <= n; ++k) {
        IntPolynomial q = t_pow_minus_one(k);
        for (int d = 1; d < k; ++d)
            if (k % d == 0) q = IntPolynomial::exact_divide(q, cache[d]);
        cache.push_back(q);
    }
    return cache[n];
}

}  // namespace coxgrow
