#pragma once

#include <cstdint>
#include <vector>

#include "coxgrow/polynomial.hpp"

namespace coxgrow {

// Dense polynomial arithmetic over F_p (p an odd-or-2 prime < 2^31) and the
// distinct-degree irreducibility test. Only used to produce irreducibility
// evidence; a single prime where the reduction is irreducible certifies
// irreducibility over Q.
namespace modp {

using Fp = std::uint64_t;
using Poly = std::vector<Fp>;  // ascending, may have trailing zeros until trimmed

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Fp mulmod(Fp a, Fp b, Fp p) {
    return static_cast<Fp>((static_cast<unsigned __int128>(a) * b) % p);
}

inline Fp powmod(Fp a, Fp e, Fp p) {
    Fp r = 1 % p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

inline Fp invmod(Fp a, Fp p) { return powmod(a % p, p - 2, p); }

inline Poly mul(const Poly& a, const Poly& b, Fp p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + static_cast<unsigned __int128>(a[i]) * b[j]) % p;
    }
    trim(r);
    return r;
}

inline Poly rem(Poly a, const Poly& m, Fp p) {
    trim(a);
    const size_t dm = m.size() - 1;
    const Fp inv_lead = invmod(m.back(), p);
    while (a.size() > dm) {
        Fp c = mulmod(a.back(), inv_lead, p);
        size_t shift = a.size() - 1 - dm;
        if (c != 0)
            for (size_t i = 0; i <= dm; ++i)
                a[shift + i] = (a[shift + i] + p - mulmod(c, m[i], p)) % p;
        a.pop_back();
        trim(a);
        if (a.size() <= dm) break;
    }
    trim(a);
    return a;
}

inline Poly mulmod_poly(const Poly& a, const Poly& b, const Poly& m, Fp p) {
    return rem(mul(a, b, p), m, p);
}

inline Poly powmod_poly(Poly base, Fp e, const Poly& m, Fp p) {
    Poly r{1};
    base = rem(std::move(base), m, p);
    while (e) {
        if (e & 1) r = mulmod_poly(r, base, m, p);
        base = mulmod_poly(base, base, m, p);
        e >>= 1;
    }
    return r;
}

inline Poly gcd(Poly a, Poly b, Fp p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) {
        Fp inv = invmod(a.back(), p);
        for (auto& x : a) x = mulmod(x, inv, p);
    }
    return a;
}

inline Poly derivative(const Poly& a, Fp p) {
    Poly r;
    for (size_t i = 1; i < a.size(); ++i) r.push_back(mulmod(a[i], i % p, p));
    trim(r);
    return r;
}

}  // namespace modp

// True iff p mod prime is irreducible over F_prime, decided by progressive
// distinct-degree factorization: gcd(f, t^{prime^d} - t) is nontrivial for the
// smallest d such that f has an irreducible factor of degree d.
inline bool irreducible_mod_p(const IntPolynomial& p, long prime) {
    if (prime < 2) throw domain_error("irreducible_mod_p: modulus must be a prime >= 2");
    if (p.is_zero()) throw domain_error("irreducible_mod_p: zero polynomial");
    BigInt lead_mod = p.leading() % prime;
    if (lead_mod == 0)
        throw domain_error("irreducible_mod_p: prime divides the leading coefficient");

    const modp::Fp q = static_cast<modp::Fp>(prime);
    modp::Poly f(p.degree() + 1);
    for (int i = 0; i <= p.degree(); ++i) {
        BigInt c = p.coeff(i) % prime;
        if (c < 0) c += prime;
        f[i] = c.get_ui();
    }
    modp::trim(f);
    const size_t n = f.size() - 1;
    if (n == 0) return false;
    if (n == 1) return true;

    // square-free test: gcd(f, f') must be constant (f' == 0 means a p-th power)
    modp::Poly fp = modp::derivative(f, q);
    if (fp.empty()) return false;
    if (modp::gcd(f, fp, q).size() > 1) return false;

    modp::Poly h{0, 1};  // t
    for (size_t d = 1; d <= n / 2; ++d) {
        h = modp::powmod_poly(std::move(h), q, f, q);  // h = t^{q^d} mod f
        modp::Poly diff = h;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + q - 1) % q;  // h - t
        modp::trim(diff);
        if (!diff.empty() && modp::gcd(f, diff, q).size() > 1) return false;
        if (diff.empty()) return false;  // t^{q^d} == t: all factors have degree <= d
    }
    return true;
}

}  // namespace coxgrow
