#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coxgrow/classify.hpp"
#include "coxgrow/modp.hpp"
#include "coxgrow/ratfunc.hpp"
#include "coxgrow/roots.hpp"

namespace coxgrow {

// Degrees of the polynomial invariants per irreducible spherical type.
// The table is validated in the test suite against the BFS oracle (group
// orders up to 1152) and by p(1) = |W| for the rest.
inline std::vector<int> degrees_of(const IrreducibleType& t) {
    switch (t.family) {
        case TypeFamily::A: {
            std::vector<int> d;
            for (int k = 2; k <= t.n + 1; ++k) d.push_back(k);
            return d;
        }
        case TypeFamily::B: {
            std::vector<int> d;
            for (int k = 2; k <= 2 * t.n; k += 2) d.push_back(k);
            return d;
        }
        case TypeFamily::D: {
            std::vector<int> d;
            for (int k = 2; k <= 2 * t.n - 2; k += 2) d.push_back(k);
            d.push_back(t.n);
            std::sort(d.begin(), d.end());
            return d;
        }
        case TypeFamily::E:
            if (t.n == 6) return {2, 5, 6, 8, 9, 12};
            if (t.n == 7) return {2, 6, 8, 10, 12, 14, 18};
            return {2, 8, 12, 14, 18, 20, 24, 30};
        case TypeFamily::F:
            return {2, 6, 8, 12};
        case TypeFamily::H:
            return t.n == 3 ? std::vector<int>{2, 6, 10} : std::vector<int>{2, 12, 20, 30};
        case TypeFamily::I2:
            return {2, t.n};
        default:
            throw domain_error("degrees are defined for spherical types only; got " + t.name());
    }
}

// Poincare polynomial of a finite type: prod over degrees d of (1+t+...+t^{d-1}).
inline IntPolynomial poincare_finite(const IrreducibleType& t) {
    IntPolynomial p = IntPolynomial::constant(1);
    for (int d : degrees_of(t)) p *= IntPolynomial::all_ones(d);
    return p;
}

inline BigInt spherical_order(const IrreducibleType& t) {
    BigInt o(1);
    for (int d : degrees_of(t)) o *= d;
    return o;
}

namespace detail {

// Exponent vector of a product of [d] = (t^d-1)/(t-1) factors over the
// cyclotomic basis: [d] = prod_{e | d, e >= 2} Phi_e.
constexpr int kMaxDegree = 30;  // largest invariant degree over all finite types

using CycExponents = std::vector<int>;  // index e in [0, kMaxDegree], entries 0,1 unused

inline CycExponents cyc_exponents(const std::vector<int>& degrees) {
    CycExponents v(kMaxDegree + 1, 0);
    for (int d : degrees)
        for (int e = 2; e <= d; ++e)
            if (d % e == 0) ++v[e];
    return v;
}

inline IntPolynomial cyc_product(const CycExponents& exp) {
    IntPolynomial p = IntPolynomial::constant(1);
    for (int e = 2; e < static_cast<int>(exp.size()); ++e)
        for (int k = 0; k < exp[e]; ++k) p *= cyclotomic(e);
    return p;
}

}  // namespace detail

// Poincare series by Steinberg's alternating sum over the spherical
// residues: q(t) = sum_I (-1)^{|I|} / p_I(t), then p(t) = 1/q(1/t).
//
// Every p_I is a product of factors [d] = prod of cyclotomics, so the sum is
// assembled over the common denominator prod Phi_e^{max exponent}, and the
// single reduction at the end is exact trial division by cyclotomics.
inline RationalFunction poincare(const CoxeterMatrix& m) {
    SphericalFamily fam = spherical_residues(m);

    // group subsets by their degree multisets (many share one)
    std::map<detail::CycExponents, long> signed_counts;
    detail::CycExponents max_exp(detail::kMaxDegree + 1, 0);
    for (const auto& [I, types] : fam.members) {
        std::vector<int> degs;
        for (const auto& t : types)
            for (int d : degrees_of(t)) degs.push_back(d);
        auto v = detail::cyc_exponents(degs);
        for (size_t e = 0; e < v.size(); ++e) max_exp[e] = std::max(max_exp[e], v[e]);
        signed_counts[v] += (I.size() % 2 == 0) ? 1 : -1;
    }

    IntPolynomial numerator;  // sum of cofactors
    for (const auto& [v, count] : signed_counts) {
        if (count == 0) continue;
        detail::CycExponents co(max_exp.size());
        for (size_t e = 0; e < v.size(); ++e) co[e] = max_exp[e] - v[e];
        numerator += BigInt(count) * detail::cyc_product(co);
    }
    if (numerator.is_zero())
        throw verify_error("internal: Steinberg sum vanished identically");

    // exact reduction: the denominator's irreducible factorization is known
    detail::CycExponents den_exp = max_exp;
    for (int e = 2; e <= detail::kMaxDegree; ++e) {
        while (den_exp[e] > 0) {
            IntPolynomial q;
            if (!IntPolynomial::try_exact_divide(numerator, cyclotomic(e), q)) break;
            numerator = std::move(q);
            --den_exp[e];
        }
    }
    IntPolynomial den = detail::cyc_product(den_exp);

    // p(t) = 1/q(1/t): with q = u/v and deg u = deg v (q -> 1 at infinity),
    // reversing the coefficient vectors of both sides gives p = v-hat / u-hat.
    const IntPolynomial& u = numerator;
    const IntPolynomial& v = den;
    if (u.degree() != v.degree())
        throw verify_error("internal: Steinberg sum does not tend to 1 at infinity");
    auto reversed_at = [](const IntPolynomial& p, int deg) {
        std::vector<BigInt> c(deg + 1);
        for (int i = 0; i <= deg; ++i) c[i] = p.coeff(deg - i);
        return IntPolynomial(std::move(c));
    };
    RationalFunction out{reversed_at(v, v.degree()), reversed_at(u, u.degree())};

    // spherical fast path doubles as a built-in cross-check of the table
    Classification cls = classify(m);
    if (cls.kind == Kind::Spherical) {
        IntPolynomial direct = IntPolynomial::constant(1);
        for (const auto& t : cls.component_types) direct *= poincare_finite(t);
        if (out != RationalFunction(direct))
            throw verify_error("internal: Steinberg path disagrees with the degree product");
        return RationalFunction(std::move(direct));
    }
    return out;
}

inline RationalFunction poincare_product(const std::vector<RationalFunction>& parts) {
    RationalFunction out = RationalFunction::constant(1);
    for (const auto& p : parts) out *= p;
    return out;
}

// Sphere and ball counts from the series; the coefficients must come out as
// nonnegative integers or the engine itself is broken.
struct GrowthSequence {
    std::vector<BigInt> a;  // sphere sizes a_0..a_n
    std::vector<BigInt> b;  // ball sizes
};

inline GrowthSequence growth_sequence(const CoxeterMatrix& m, int n) {
    auto coeffs = series_coefficients(poincare(m), n);
    GrowthSequence out;
    BigInt run(0);
    for (const auto& c : coeffs) {
        if (c.get_den() != 1 || c < 0)
            throw verify_error("internal: growth series coefficient is not a nonnegative integer");
        out.a.push_back(c.get_num());
        run += c.get_num();
        out.b.push_back(run);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Growth rates.
// ---------------------------------------------------------------------------

enum class RateKind { Zero, One, Algebraic };

struct GrowthRate {
    RateKind kind = RateKind::Zero;
    // For Algebraic: certified bracket of the smallest positive real root of
    // the reduced denominator (in (0,1)), the denominator itself, and the
    // reciprocal bracket for omega.
    std::optional<IsolatingInterval> root_bracket;
    IntPolynomial denominator;
    BigRational omega_lo{0}, omega_hi{0};

    BigRational omega_point() const {
        if (kind == RateKind::Zero) return BigRational(0);
        if (kind == RateKind::One) return BigRational(1);
        return (omega_lo + omega_hi) / 2;
    }
};

// Zero for spherical systems; One when every non-spherical component is
// affine; otherwise the reciprocal of the smallest positive real root of the
// reduced Poincare denominator, certified to width <= eps.
inline GrowthRate growth_rate(const CoxeterMatrix& m,
                              const BigRational& eps = BigRational(1, 1000000000000L)) {
    GrowthRate out;
    Classification cls = classify(m);
    if (cls.kind == Kind::Spherical) {
        out.kind = RateKind::Zero;
        return out;
    }
    bool all_nonspherical_affine = true;
    for (const auto& t : cls.component_types)
        if (!t.spherical() && !t.affine()) all_nonspherical_affine = false;
    if (all_nonspherical_affine) {
        out.kind = RateKind::One;
        out.omega_lo = out.omega_hi = BigRational(1);
        return out;
    }

    RationalFunction p = poincare(m);
    out.kind = RateKind::Algebraic;
    out.denominator = p.den();

    IntPolynomial f = p.den().squarefree_part();
    // affine factors put a root exactly at 1; strip it to search the open (0,1)
    while (f.eval_int(BigInt(1)) == 0) f = IntPolynomial::exact_divide(f, {-1, 1});
    auto roots = isolate_real_roots(f, BigRational(0), BigRational(1));
    if (roots.empty())
        throw verify_error("internal: no denominator root in (0,1) for an exponential system");
    IsolatingInterval iv = roots.front();

    // tighten until the reciprocal bracket meets eps
    while (true) {
        if (iv.is_exact()) {
            out.omega_lo = out.omega_hi = BigRational(1) / iv.lo;
            break;
        }
        if (iv.lo > 0) {
            BigRational wlo = BigRational(1) / iv.hi, whi = BigRational(1) / iv.lo;
            if (whi - wlo <= eps) {
                out.omega_lo = wlo;
                out.omega_hi = whi;
                break;
            }
        }
        iv = refine(iv, iv.width() / 16);
    }
    out.root_bracket = iv;
    return out;
}

// ---------------------------------------------------------------------------
// Minimal polynomial and Perron verification.
// ---------------------------------------------------------------------------

struct MinimalPolynomialReport {
    bool divisibility = false;     // reciprocal(candidate) divides the denominator
    bool bracket_contains = false; // candidate changes sign across the omega bracket
    std::vector<std::pair<long, bool>> mod_p;  // per-prime irreducibility evidence
    bool irreducible_certified = false;        // true iff some prime succeeded

    bool core_passed() const { return divisibility && bracket_contains; }
};

inline std::vector<long> default_prime_list(const IntPolynomial& p, int count = 25) {
    std::vector<long> primes;
    auto is_prime = [](long x) {
        if (x < 2) return false;
        for (long d = 2; d * d <= x; ++d)
            if (x % d == 0) return false;
        return true;
    };
    for (long q = 2; static_cast<int>(primes.size()) < count; ++q) {
        if (!is_prime(q)) continue;
        if (p.leading() % q == 0) continue;
        primes.push_back(q);
    }
    return primes;
}

inline MinimalPolynomialReport minimal_polynomial_check(
    const CoxeterMatrix& m, const IntPolynomial& candidate,
    const std::vector<long>& primes = {}) {
    if (candidate.is_zero() || candidate.constant_term() == 0)
        throw domain_error("minimal polynomial candidate must have nonzero constant term");
    MinimalPolynomialReport rep;
    RationalFunction p = poincare(m);
    rep.divisibility = IntPolynomial::divides(candidate.reciprocal(), p.den());

    GrowthRate rate = growth_rate(m);
    if (rate.kind == RateKind::Algebraic) {
        int slo = candidate.sign_at(rate.omega_lo);
        int shi = candidate.sign_at(rate.omega_hi);
        rep.bracket_contains = (slo == 0 || shi == 0 || slo != shi);
    }

    for (long q : primes.empty() ? default_prime_list(candidate) : primes) {
        bool ok = irreducible_mod_p(candidate, q);
        rep.mod_p.emplace_back(q, ok);
        if (ok) {
            rep.irreducible_certified = true;
            break;
        }
    }
    return rep;
}

// Certifies the Perron property: some rational rho below the rate bracket has
// all conjugates strictly inside |z| < rho and exactly one real root above.
inline bool perron_verify(const IntPolynomial& candidate, const IsolatingInterval& rate_bracket) {
    if (IntPolynomial::gcd(candidate, candidate.derivative()).degree() != 0)
        throw domain_error("perron_verify requires a square-free candidate");
    const int deg = candidate.degree();
    auto chain = sturm_chain(candidate);

    // trial descent: decimal truncations of the bracket's lower endpoint,
    // stepped strictly below it when the truncation is not already strict
    std::vector<BigRational> trial;
    for (int digits = 1; digits <= 12; ++digits) {
        BigInt scale = big_pow(BigInt(10), digits);
        BigInt floor_scaled = (rate_bracket.lo.get_num() * scale) / rate_bracket.lo.get_den();
        BigRational rho = make_rational(floor_scaled, scale);
        if (rho >= rate_bracket.lo) rho -= BigRational(1, scale);
        if (rho <= 0) continue;
        if (!trial.empty() && trial.back() == rho) continue;
        trial.push_back(rho);
    }
    for (const auto& rho : trial) {
        int inside;
        try {
            inside = count_roots_in_disk(candidate, rho);
        } catch (const boundary_root_error&) {
            continue;
        }
        if (inside != deg - 1) continue;
        // exactly one real root above rho, and the bracket lies above rho
        int above = variations_at(chain, rho) - variations_at_pos_inf(chain);
        if (above == 1 && rate_bracket.lo >= rho) return true;
    }
    return false;
}

}  // namespace coxgrow
