#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "coxgrow/classify.hpp"
#include "coxgrow/growth.hpp"
#include "coxgrow/words.hpp"

namespace coxgrow {

// ---------------------------------------------------------------------------
// The partial order on Coxeter systems: M <= N iff some injection of
// generators makes every label weakly increase (infinity on top).
// ---------------------------------------------------------------------------

inline std::optional<GeneratorMap> leq_order(const CoxeterMatrix& m, const CoxeterMatrix& n) {
    const int a = m.rank(), b = n.rank();
    if (a > b) return std::nullopt;
    // sorted-row-multiset pruning: the i-th largest label of a source row must
    // not exceed the i-th largest of a candidate target row
    std::vector<std::vector<Label>> rm(a), rn(b);
    for (int i = 0; i < a; ++i) {
        rm[i] = detail::row_invariant(m, i);
        std::reverse(rm[i].begin(), rm[i].end());
    }
    for (int c = 0; c < b; ++c) {
        rn[c] = detail::row_invariant(n, c);
        std::reverse(rn[c].begin(), rn[c].end());
    }
    std::vector<std::vector<char>> feasible(a, std::vector<char>(b, 1));
    for (int i = 0; i < a; ++i)
        for (int c = 0; c < b; ++c)
            for (size_t k = 0; k < rm[i].size(); ++k)
                if (rm[i][k] > rn[c][k]) {
                    feasible[i][c] = 0;
                    break;
                }

    std::vector<int> image(a, -1);
    std::vector<bool> used(b, false);
    auto rec = [&](auto&& self, int i) -> bool {
        if (i == a) return true;
        for (int c = 0; c < b; ++c) {
            if (used[c] || !feasible[i][c]) continue;
            bool ok = m(i, i) <= n(c, c);
            for (int j = 0; j < i && ok; ++j) ok = m(i, j) <= n(image[j], c);
            if (!ok) continue;
            image[i] = c;
            used[c] = true;
            if (self(self, i + 1)) return true;
            used[c] = false;
            image[i] = -1;
        }
        return false;
    };
    if (!rec(rec, 0)) return std::nullopt;
    return GeneratorMap{image};
}

inline bool leq_realized_by(const CoxeterMatrix& m, const CoxeterMatrix& n,
                            const GeneratorMap& phi) {
    if (phi.size() != m.rank()) return false;
    std::vector<bool> used(n.rank(), false);
    for (int i = 0; i < m.rank(); ++i) {
        int c = phi(i);
        if (c < 0 || c >= n.rank() || used[c]) return false;
        used[c] = true;
    }
    for (int i = 0; i < m.rank(); ++i)
        for (int j = 0; j < m.rank(); ++j)
            if (m(i, j) > n(phi(i), phi(j))) return false;
    return true;
}

// Members with no other member strictly below them. The input is expected to
// be deduplicated up to Coxeter-isomorphism.
inline std::vector<CoxeterMatrix> minimal_elements(const std::vector<CoxeterMatrix>& items) {
    std::vector<CoxeterMatrix> out;
    for (size_t i = 0; i < items.size(); ++i) {
        bool dominated = false;
        for (size_t j = 0; j < items.size() && !dominated; ++j) {
            if (i == j) continue;
            if (leq_order(items[j], items[i]).has_value() &&
                !leq_order(items[i], items[j]).has_value())
                dominated = true;
        }
        if (!dominated) out.push_back(items[i]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Theorem A harness: monotone growth sequences plus the explicit injection
// eta_k = pi_N sigma_M on balls, with the length-preservation of theta_k.
// ---------------------------------------------------------------------------

struct ThmAReport {
    bool phi_realizes = false;
    bool spheres_monotone = false;
    bool eta_injective = false;
    bool theta_lengths_preserved = false;
    std::vector<long long> a_m, a_n;
    std::string counterexample;

    bool ok() const {
        return phi_realizes && spheres_monotone && eta_injective && theta_lengths_preserved;
    }
};

inline ThmAReport verify_thm_a(const CoxeterMatrix& m, const CoxeterMatrix& n,
                               const GeneratorMap& phi, int k_max,
                               size_t closure_cap = default_closure_cap,
                               size_t element_cap = default_bfs_cap) {
    ThmAReport rep;
    rep.phi_realizes = leq_realized_by(m, n, phi);
    if (!rep.phi_realizes) {
        rep.counterexample = "phi does not realize the relation";
        return rep;
    }
    SphereData sm = spheres(m, k_max, /*keep_normal_forms=*/true, element_cap);
    SphereData sn = spheres(n, k_max, /*keep_normal_forms=*/false, element_cap);
    rep.a_m = sm.spheres;
    rep.a_n = sn.spheres;
    rep.spheres_monotone = true;
    for (int k = 0; k <= k_max; ++k)
        if (sm.spheres[k] > sn.spheres[k]) {
            rep.spheres_monotone = false;
            rep.counterexample = "a_" + std::to_string(k) + " exceeds a'_" + std::to_string(k);
        }

    rep.eta_injective = true;
    rep.theta_lengths_preserved = true;
    std::unordered_set<Word> images;
    for (int k = 0; k <= k_max; ++k) {
        for (const Word& w : sm.level_nfs[k]) {
            Word transported;
            transported.reserve(w.size());
            for (char c : w)
                transported.push_back(static_cast<char>(phi(static_cast<unsigned char>(c))));
            NormalForm img = normal_form(n, transported, closure_cap);
            if (img.length() != k && rep.theta_lengths_preserved) {
                rep.theta_lengths_preserved = false;
                rep.counterexample = "length drop for element of length " + std::to_string(k);
            }
            if (!images.insert(img.word).second && rep.eta_injective) {
                rep.eta_injective = false;
                rep.counterexample = "eta collision at length " + std::to_string(k);
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Mutations.
// ---------------------------------------------------------------------------

// A mutable 4-tuple (M, X, Y, sigma) with its induced partition T, Z of the
// remaining generators. sigma is position-based on X: X[i] maps to X[sigma[i]].
struct MutableTuple {
    CoxeterMatrix m;
    GeneratorSubset x, y, t, z;
    std::vector<int> sigma;

    int sigma_of(int gen) const {
        auto it = std::lower_bound(x.begin(), x.end(), gen);
        return x[sigma[it - x.begin()]];
    }
    int sigma_inv_of(int gen) const {
        auto it = std::lower_bound(x.begin(), x.end(), gen);
        int pos = static_cast<int>(it - x.begin());
        for (size_t i = 0; i < sigma.size(); ++i)
            if (sigma[i] == pos) return x[i];
        return gen;
    }
    bool sigma_is_identity() const {
        for (size_t i = 0; i < sigma.size(); ++i)
            if (sigma[i] != static_cast<int>(i)) return false;
        return true;
    }
};

// Derives T and Z from the rows toward Y and checks the three conditions.
// Throws validation_error naming the failed condition.
inline MutableTuple make_mutable(const CoxeterMatrix& m, const GeneratorSubset& x,
                                 const GeneratorSubset& y, const std::vector<int>& sigma) {
    check_subset(m, x);
    check_subset(m, y);
    if (x.empty() || y.empty())
        throw validation_error("mutable tuple needs nonempty X and Y");
    for (int g : x)
        if (std::binary_search(y.begin(), y.end(), g))
            throw validation_error("X and Y must be disjoint");
    CoxeterMatrix mx = restrict(m, x);
    if (static_cast<int>(sigma.size()) != mx.rank())
        throw validation_error("sigma must be a permutation of X");
    if (!is_label_preserving(mx, mx, GeneratorMap{sigma}))
        throw validation_error("sigma is not a Coxeter-automorphism of M_X");

    MutableTuple tup{m, x, y, {}, {}, sigma};
    for (int s = 0; s < m.rank(); ++s) {
        if (std::binary_search(x.begin(), x.end(), s) ||
            std::binary_search(y.begin(), y.end(), s))
            continue;
        bool any_fin = false, any_inf = false;
        for (int yy : y)
            (m(s, yy) == label_infinity ? any_inf : any_fin) = true;
        if (any_fin && any_inf)
            throw validation_error(
                "generator " + m.name_of(s) +
                " has a mixed finite/infinite row toward Y: conditions (i)/(ii) force " +
                "every outside generator into T (all infinite) or Z (all finite)");
        (any_inf ? tup.t : tup.z).push_back(s);
    }
    // condition (iii): labels from Z into X are sigma-invariant
    for (int zz : tup.z)
        for (size_t i = 0; i < x.size(); ++i)
            if (m(zz, x[sigma[i]]) != m(zz, x[i]))
                throw validation_error("condition (iii) fails: m(" + m.name_of(zz) + "," +
                                       m.name_of(x[sigma[i]]) + ") differs from m(" +
                                       m.name_of(zz) + "," + m.name_of(x[i]) + ")");
    return tup;
}

inline std::optional<MutableTuple> try_make_mutable(const CoxeterMatrix& m,
                                                    const GeneratorSubset& x,
                                                    const GeneratorSubset& y,
                                                    const std::vector<int>& sigma) {
    try {
        return make_mutable(m, x, y, sigma);
    } catch (const validation_error&) {
        return std::nullopt;
    }
}

// The mutated matrix: rows of X toward Y are pulled back through sigma, the
// X block is rewired by sigma on both sides, everything else is unchanged.
inline CoxeterMatrix mutate(const MutableTuple& tup) {
    const CoxeterMatrix& m = tup.m;
    const int n = m.rank();
    std::vector<Label> e(n * n);
    auto in = [&](const GeneratorSubset& s, int g) {
        return std::binary_search(s.begin(), s.end(), g);
    };
    for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
            Label v;
            if (in(tup.x, r) && in(tup.y, s))
                v = m(tup.sigma_of(r), s);
            else if (in(tup.y, r) && in(tup.x, s))
                v = m(tup.sigma_of(s), r);
            else if (in(tup.x, r) && in(tup.x, s))
                v = m(tup.sigma_of(r), tup.sigma_of(s));
            else
                v = m(r, s);
            e[r * n + s] = v;
        }
    std::vector<std::string> names = m.has_names() ? m.names() : std::vector<std::string>{};
    return CoxeterMatrix(n, std::move(e), std::move(names));
}

inline MutableTuple inverse_tuple(const MutableTuple& tup) {
    std::vector<int> inv(tup.sigma.size());
    for (size_t i = 0; i < tup.sigma.size(); ++i) inv[tup.sigma[i]] = static_cast<int>(i);
    return make_mutable(mutate(tup), tup.x, tup.y, inv);
}

// All valid tuples over disjoint nonempty (X, Y) and nontrivial automorphisms
// of M_X; with effective_only, those whose mutation changes the isomorphism
// class. Ordered lexicographically by (X, Y, sigma).
inline std::vector<MutableTuple> enumerate_mutable(const CoxeterMatrix& m,
                                                   bool effective_only = false) {
    const int n = m.rank();
    std::vector<MutableTuple> out;
    for (unsigned xm = 1; xm < (1u << n); ++xm) {
        GeneratorSubset x;
        for (int i = 0; i < n; ++i)
            if (xm & (1u << i)) x.push_back(i);
        auto autos = automorphisms(restrict(m, x));
        if (autos.size() <= 1) continue;
        unsigned rest = ((1u << n) - 1) & ~xm;
        // iterate nonempty submasks of the complement in increasing order
        std::vector<unsigned> ymasks;
        for (unsigned ym = rest; ym; ym = (ym - 1) & rest) ymasks.push_back(ym);
        std::sort(ymasks.begin(), ymasks.end());
        for (unsigned ym : ymasks) {
            GeneratorSubset y;
            for (int i = 0; i < n; ++i)
                if (ym & (1u << i)) y.push_back(i);
            for (const auto& a : autos) {
                bool identity = true;
                for (int i = 0; i < a.size(); ++i)
                    if (a(i) != i) identity = false;
                if (identity) continue;
                auto tup = try_make_mutable(m, x, y, a.image);
                if (!tup) continue;
                if (effective_only) {
                    if (coxeter_isomorphic(mutate(*tup), m).has_value()) continue;
                }
                out.push_back(std::move(*tup));
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Twist recognition: the classical diagram twists are the mutations with
// spherical X, sigma the opposition involution of M_X, and label-2 bonds
// from Z into X.
// ---------------------------------------------------------------------------

namespace detail {

// Position-based opposition involution of a spherical matrix (conjugation by
// the longest element): per component, A reversal, D-odd tip swap, E6 flip,
// I2-odd swap, identity otherwise. For each nontrivial case the component's
// labeled graph has exactly one nontrivial automorphism, which is it.
inline std::vector<int> opposition_involution(const CoxeterMatrix& mx) {
    std::vector<int> invol(mx.rank());
    for (int i = 0; i < mx.rank(); ++i) invol[i] = i;
    for (const auto& comp : components(mx)) {
        CoxeterMatrix sub = restrict(mx, comp);
        IrreducibleType t = recognize_irreducible(sub);
        if (!t.spherical())
            throw domain_error("opposition involution needs a spherical system");
        bool nontrivial = (t.family == TypeFamily::A && t.n >= 2) ||
                          (t.family == TypeFamily::D && t.n % 2 == 1) ||
                          (t.family == TypeFamily::E && t.n == 6) ||
                          (t.family == TypeFamily::I2 && t.n % 2 == 1);
        if (!nontrivial) continue;
        auto autos = automorphisms(sub);
        if (autos.size() != 2)
            throw verify_error("internal: expected a unique nontrivial diagram symmetry for " +
                               t.name());
        const GeneratorMap* flip = nullptr;
        for (const auto& g : autos) {
            bool identity = true;
            for (int i = 0; i < g.size(); ++i)
                if (g(i) != i) identity = false;
            if (!identity) flip = &g;
        }
        for (size_t i = 0; i < comp.size(); ++i)
            invol[comp[i]] = comp[(*flip)(static_cast<int>(i))];
    }
    return invol;
}

}  // namespace detail

inline bool is_twist(const MutableTuple& tup) {
    CoxeterMatrix mx = restrict(tup.m, tup.x);
    // (a) W_X finite
    for (const auto& comp : components(mx))
        if (!recognize_irreducible(restrict(mx, comp)).spherical()) return false;
    // (b) sigma is conjugation by the longest element
    if (tup.sigma != detail::opposition_involution(mx)) return false;
    // (c) Z attaches to X only by label 2
    for (int zz : tup.z)
        for (int xx : tup.x)
            if (tup.m(zz, xx) != 2) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Theorem C harness: the sharp map on spherical residues and exact equality
// of Poincare series.
// ---------------------------------------------------------------------------

struct ThmCReport {
    bool sharp_bijective = false;
    bool types_preserved = false;
    bool series_equal = false;
    std::string counterexample;

    bool ok() const { return sharp_bijective && types_preserved && series_equal; }
};

inline ThmCReport verify_thm_c(const MutableTuple& tup) {
    ThmCReport rep;
    CoxeterMatrix n = mutate(tup);
    SphericalFamily fm = spherical_residues(tup.m);
    SphericalFamily fn = spherical_residues(n);

    auto in = [](const GeneratorSubset& s, int g) {
        return std::binary_search(s.begin(), s.end(), g);
    };
    std::set<GeneratorSubset> image_set;
    rep.types_preserved = true;
    for (const auto& [I, types] : fm.members) {
        bool meets_y = std::any_of(I.begin(), I.end(), [&](int g) { return in(tup.y, g); });
        GeneratorSubset sharp;
        if (!meets_y) {
            bool in_xtz = std::all_of(I.begin(), I.end(), [&](int g) { return !in(tup.y, g); });
            if (!in_xtz) {
                rep.counterexample = "residue outside both cases of the sharp map";
                return rep;
            }
            sharp = I;  // case (a)
        } else {
            for (int g : I) sharp.push_back(in(tup.x, g) ? tup.sigma_inv_of(g) : g);
            std::sort(sharp.begin(), sharp.end());
        }
        // type preservation, by direct entry comparison through the map
        GeneratorSubset sharp_unsorted;
        for (int g : I)
            sharp_unsorted.push_back(meets_y && in(tup.x, g) ? tup.sigma_inv_of(g) : g);
        for (size_t a = 0; a < I.size() && rep.types_preserved; ++a)
            for (size_t b = 0; b < I.size(); ++b)
                if (tup.m(I[a], I[b]) != n(sharp_unsorted[a], sharp_unsorted[b])) {
                    rep.types_preserved = false;
                    rep.counterexample = "label mismatch inside a mapped residue";
                    break;
                }
        image_set.insert(sharp);
    }
    // bijective onto F(N)
    std::set<GeneratorSubset> fn_set;
    for (const auto& [I, types] : fn.members) fn_set.insert(I);
    rep.sharp_bijective = (image_set.size() == fm.members.size()) && (image_set == fn_set);
    if (!rep.sharp_bijective && rep.counterexample.empty())
        rep.counterexample = "sharp map is not a bijection onto the mutated residues";

    rep.series_equal = (poincare(tup.m) == poincare(n));
    if (!rep.series_equal && rep.counterexample.empty())
        rep.counterexample = "Poincare series differ";
    return rep;
}

// Canonical forms reachable from M by at most `depth` mutations (the bounded
// view of the mutation equivalence).
inline std::vector<CoxeterMatrix> mutation_class(const CoxeterMatrix& m, int depth = 3) {
    std::set<std::vector<Label>> seen;
    std::vector<CoxeterMatrix> frontier{detail::canonical_form(m)}, out;
    seen.insert(frontier[0].upper_triangle());
    out.push_back(frontier[0]);
    for (int d = 0; d < depth && !frontier.empty(); ++d) {
        std::vector<CoxeterMatrix> next;
        for (const auto& cur : frontier)
            for (const auto& tup : enumerate_mutable(cur)) {
                CoxeterMatrix img = detail::canonical_form(mutate(tup));
                if (seen.insert(img.upper_triangle()).second) {
                    next.push_back(img);
                    out.push_back(img);
                }
            }
        frontier = std::move(next);
    }
    return out;
}

}  // namespace coxgrow
