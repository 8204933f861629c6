#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "coxgrow/polynomial.hpp"

namespace coxgrow {

// ---------------------------------------------------------------------------
// Generalized Sturm chains.
//
// sturm_chain(f, g) produces s0 = f, s1 = g, s_{k+1} = -rem(s_{k-1}, s_k),
// where each term is replaced by a positive scalar multiple (primitive part,
// pseudo-remainder sign-corrected). Positive scaling preserves all the sign
// counts the chain is used for.
// ---------------------------------------------------------------------------

inline std::vector<IntPolynomial> sturm_chain(IntPolynomial f, IntPolynomial g) {
    std::vector<IntPolynomial> chain;
    chain.push_back(std::move(f));
    if (g.is_zero()) return chain;
    chain.push_back(std::move(g));
    while (!chain.back().is_zero() && chain.back().degree() > 0) {
        const IntPolynomial& a = chain[chain.size() - 2];
        const IntPolynomial& b = chain.back();
        auto pd = IntPolynomial::pseudo_divrem(a, b);
        IntPolynomial r = pd.remainder;
        if (r.is_zero()) break;
        if (sign_of(pd.scale) < 0) r = -r;  // make r a positive multiple of rem(a,b)
        r = r.primitive_part();
        chain.push_back(-r);
    }
    return chain;
}

inline std::vector<IntPolynomial> sturm_chain(const IntPolynomial& f) {
    return sturm_chain(f, f.derivative());
}

namespace detail {

inline int count_variations(const std::vector<int>& signs) {
    int v = 0, prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

}  // namespace detail

inline int variations_at(const std::vector<IntPolynomial>& chain, const BigRational& x) {
    std::vector<int> signs;
    signs.reserve(chain.size());
    for (const auto& p : chain) signs.push_back(p.sign_at(x));
    return detail::count_variations(signs);
}

inline int variations_at_pos_inf(const std::vector<IntPolynomial>& chain) {
    std::vector<int> signs;
    for (const auto& p : chain) signs.push_back(p.sign_at_pos_inf());
    return detail::count_variations(signs);
}

inline int variations_at_neg_inf(const std::vector<IntPolynomial>& chain) {
    std::vector<int> signs;
    for (const auto& p : chain) signs.push_back(p.sign_at_neg_inf());
    return detail::count_variations(signs);
}

// Number of distinct real roots of the (square-free) chain polynomial in (a, b].
inline int sturm_count(const std::vector<IntPolynomial>& chain, const BigRational& a,
                       const BigRational& b) {
    return variations_at(chain, a) - variations_at(chain, b);
}

inline int count_real_roots(const IntPolynomial& p) {
    auto chain = sturm_chain(p.squarefree_part());
    return variations_at_neg_inf(chain) - variations_at_pos_inf(chain);
}

// Cauchy index of g/f over the whole real line.
inline int cauchy_index(const IntPolynomial& f, const IntPolynomial& g) {
    if (g.is_zero() || f.is_zero()) return 0;
    auto chain = sturm_chain(f, g);
    return variations_at_neg_inf(chain) - variations_at_pos_inf(chain);
}

// ---------------------------------------------------------------------------
// Isolating intervals.
// ---------------------------------------------------------------------------

// Rational bracket [lo, hi] certified to contain exactly one real root of
// poly (which is kept square-free). Either the signs at the endpoints differ
// or lo == hi is an exact root.
struct IsolatingInterval {
    IntPolynomial poly;
    BigRational lo, hi;

    bool is_exact() const { return lo == hi; }
    BigRational width() const { return hi - lo; }
    BigRational midpoint() const { return (lo + hi) / 2; }
};

namespace detail {

inline void isolate_rec(const IntPolynomial& f, const std::vector<IntPolynomial>& chain,
                        const BigRational& a, const BigRational& b,
                        std::vector<IsolatingInterval>& out) {
    int n = sturm_count(chain, a, b);
    if (n == 0) return;
    if (n == 1) {
        if (f.sign_at(b) == 0) {
            out.push_back({f, b, b});
            return;
        }
        BigRational lo = a, hi = b;
        while (f.sign_at(lo) == 0 || f.sign_at(lo) == f.sign_at(hi)) {
            // the root of f at lo itself is excluded from (a, b]; shrink past it
            BigRational m = (lo + hi) / 2;
            int sm = f.sign_at(m);
            if (sm == 0) {
                out.push_back({f, m, m});
                return;
            }
            if (sturm_count(chain, m, hi) == 1)
                lo = m;
            else
                hi = m;
        }
        out.push_back({f, lo, hi});
        return;
    }
    BigRational m = (a + b) / 2;
    isolate_rec(f, chain, a, m, out);
    isolate_rec(f, chain, m, b, out);
}

}  // namespace detail

// Disjoint isolating intervals, one per distinct real root of the square-free
// part of p in (lo, hi], sorted in ascending order.
inline std::vector<IsolatingInterval> isolate_real_roots(const IntPolynomial& p,
                                                         const BigRational& lo,
                                                         const BigRational& hi) {
    if (p.is_zero()) throw domain_error("cannot isolate roots of the zero polynomial");
    if (!(lo < hi)) throw domain_error("isolate_real_roots requires lo < hi");
    IntPolynomial f = p.squarefree_part();
    if (f.degree() < 1) return {};
    auto chain = sturm_chain(f);
    std::vector<IsolatingInterval> out;
    detail::isolate_rec(f, chain, lo, hi, out);
    return out;
}

// Shrinks the bracket to width <= eps by sign-preserving bisection.
inline IsolatingInterval refine(IsolatingInterval iv, const BigRational& eps) {
    if (iv.is_exact()) return iv;
    int slo = iv.poly.sign_at(iv.lo);
    int shi = iv.poly.sign_at(iv.hi);
    if (slo == 0) return {iv.poly, iv.lo, iv.lo};
    if (shi == 0) return {iv.poly, iv.hi, iv.hi};
    while (iv.width() > eps) {
        BigRational m = iv.midpoint();
        int sm = iv.poly.sign_at(m);
        if (sm == 0) return {iv.poly, m, m};
        if (sm == slo)
            iv.lo = m;
        else
            iv.hi = m;
    }
    return iv;
}

// Re-checks the certificate of an interval independently of how it was made:
// exactly one distinct real root in [lo, hi], and a sign change or exact root.
inline bool check_isolating_certificate(const IsolatingInterval& iv) {
    IntPolynomial f = iv.poly.squarefree_part();
    if (iv.is_exact()) return f.sign_at(iv.lo) == 0;
    auto chain = sturm_chain(f);
    int slo = f.sign_at(iv.lo), shi = f.sign_at(iv.hi);
    int inside = sturm_count(chain, iv.lo, iv.hi);  // roots in (lo, hi]
    if (slo == 0) return false;                     // open at the left root
    return inside == 1 && (shi == 0 || slo != shi);
}

// ---------------------------------------------------------------------------
// Root counting in a disk |z| < radius (exact).
//
// The scaled polynomial g(z) = p(radius*z) is transported by the Cayley map
// z = (1+w)/(1-w), which takes the open unit disk to the left half-plane.
// Left-half-plane roots of Q(w) = (1-w)^n g((1+w)/(1-w)) are then counted by
// the Routh-Hurwitz criterion in its Cauchy-index form, evaluated with exact
// generalized Sturm chains.
// ---------------------------------------------------------------------------

// Signals that a root lies on the circle |z| = radius (or the test cannot
// certify either way there).
struct boundary_root_error : domain_error {
    using domain_error::domain_error;
};

inline int count_roots_in_disk(const IntPolynomial& p, const BigRational& radius) {
    if (p.is_zero()) throw domain_error("count_roots_in_disk: zero polynomial");
    if (radius <= 0) throw domain_error("count_roots_in_disk: radius must be positive");
    const int n = p.degree();
    if (n == 0) return 0;

    // g(z) = b^n p((a/b) z), integer coefficients
    const BigInt a = radius.get_num(), b = radius.get_den();
    std::vector<BigInt> gc(n + 1);
    BigInt ap(1);
    for (int i = 0; i <= n; ++i) {
        gc[i] = p.coeff(i) * ap * big_pow(b, n - i);
        ap *= a;
    }
    IntPolynomial g{std::move(gc)};
    g = g.primitive_part();

    if (g.eval_int(BigInt(1)) == 0 || g.eval_int(BigInt(-1)) == 0)
        throw boundary_root_error("root of modulus exactly equal to the radius");

    // Q(w) = sum_k g_k (1+w)^k (1-w)^{n-k}
    IntPolynomial one_plus{1, 1}, one_minus{1, -1};
    std::vector<IntPolynomial> plus_pow(n + 1), minus_pow(n + 1);
    plus_pow[0] = minus_pow[0] = IntPolynomial::constant(1);
    for (int i = 1; i <= n; ++i) {
        plus_pow[i] = plus_pow[i - 1] * one_plus;
        minus_pow[i] = minus_pow[i - 1] * one_minus;
    }
    IntPolynomial Q;
    for (int k = 0; k <= n; ++k) {
        BigInt ck = g.coeff(k);
        if (ck != 0) Q += ck * (plus_pow[k] * minus_pow[n - k]);
    }
    if (Q.degree() != n) throw domain_error("internal: Cayley transform degree drop");

    // Q(iy) = U(y) + i V(y)
    std::vector<BigInt> uc(n + 1, BigInt(0)), vc(n + 1, BigInt(0));
    for (int k = 0; k <= n; ++k) {
        BigInt c = Q.coeff(k);
        switch (k % 4) {
            case 0: uc[k] = c; break;
            case 1: vc[k] = c; break;
            case 2: uc[k] = -c; break;
            case 3: vc[k] = -c; break;
        }
    }
    IntPolynomial U{std::move(uc)}, V{std::move(vc)};

    if (V.is_zero()) {
        // Q even: roots come in +/- pairs, so LHP and RHP counts agree.
        if (count_real_roots(U) > 0)
            throw boundary_root_error("root of modulus exactly equal to the radius");
        return n / 2;
    }

    IntPolynomial d = IntPolynomial::gcd(U, V);
    if (d.degree() > 0 && count_real_roots(d) > 0)
        throw boundary_root_error("root of modulus exactly equal to the radius");

    // #LHP - #RHP from the Cauchy index (parity fixes which ratio is proper)
    int diff = (n % 2 == 1) ? cauchy_index(V, U) : -cauchy_index(U, V);
    if ((n + diff) % 2 != 0 || diff < -n || diff > n)
        throw boundary_root_error("inconclusive index count at this radius");
    return (n + diff) / 2;
}

}  // namespace coxgrow
