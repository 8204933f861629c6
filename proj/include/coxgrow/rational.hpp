#pragma once

#include <gmpxx.h>

#include <string>

#include "coxgrow/errors.hpp"

namespace coxgrow {

// Exact arbitrary-precision integers and rationals, backed by GMP.
// BigRational values are kept canonical: denominator > 0, fraction reduced.
using BigInt = mpz_class;
using BigRational = mpq_class;

inline BigInt big_pow(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline int sign_of(const BigInt& x) { return sgn(x); }
inline int sign_of(const BigRational& x) { return sgn(x); }

inline BigRational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw domain_error("rational with zero denominator");
    BigRational q(num, den);
    q.canonicalize();
    return q;
}

// Parses "num", "num/den" or a plain decimal like "1.25" (exact).
inline BigRational parse_rational(const std::string& text) {
    auto bad = [&] { throw parse_error("invalid rational: '" + text + "'"); };
    if (text.empty()) bad();
    auto slash = text.find('/');
    auto dot = text.find('.');
    try {
        if (slash != std::string::npos) {
            BigInt n(text.substr(0, slash));
            BigInt d(text.substr(slash + 1));
            return make_rational(n, d);
        }
        if (dot != std::string::npos) {
            std::string digits = text.substr(0, dot) + text.substr(dot + 1);
            unsigned long places = text.size() - dot - 1;
            if (digits.empty() || digits == "-" || digits == "+") bad();
            return make_rational(BigInt(digits), big_pow(BigInt(10), places));
        }
        return BigRational(BigInt(text));
    } catch (const std::invalid_argument&) {
        bad();
    }
    return {};  // unreachable
}

inline std::string to_string(const BigRational& q) {
    return q.get_num().get_str() +
           (q.get_den() == 1 ? std::string() : "/" + q.get_den().get_str());
}

// Decimal expansion with the given number of fractional digits, truncated
// toward zero. Used only for human-readable reporting.
inline std::string decimal_string(const BigRational& q, int digits) {
    BigInt scaled = (q.get_num() * big_pow(BigInt(10), digits)) / q.get_den();
    bool neg = scaled < 0;
    std::string s = BigInt(abs(scaled)).get_str();
    if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
    return (neg ? "-" : "") + s;
}

}  // namespace coxgrow
