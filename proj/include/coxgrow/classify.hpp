#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "coxgrow/coxmatrix.hpp"

namespace coxgrow {

// ---------------------------------------------------------------------------
// Irreducible types.
//
// Overlaps between families are resolved canonically: a single vertex is
// A(1); rank-2 label 3 is A(2); label 4 is B(2); I2(m) is used for m >= 5,
// so the group usually written G2 appears as I2(6). B and C finite types
// share a Coxeter matrix and are both reported as B.
// ---------------------------------------------------------------------------

enum class TypeFamily {
    A, B, D, E, F, H, I2,                                            // spherical
    AffineA, AffineB, AffineC, AffineD, AffineE, AffineF, AffineG,   // affine
    NonSphericalNonAffine,
};

struct IrreducibleType {
    TypeFamily family = TypeFamily::NonSphericalNonAffine;
    // A/B/D/E/F/H: Cartan subscript (= rank). I2: the label m (label_infinity
    // never occurs here; the infinite dihedral system is AffineA with n = 1).
    // Affine X~n: the subscript n (rank is n + 1).
    int n = 0;

    bool spherical() const {
        switch (family) {
            case TypeFamily::A: case TypeFamily::B: case TypeFamily::D:
            case TypeFamily::E: case TypeFamily::F: case TypeFamily::H:
            case TypeFamily::I2:
                return true;
            default:
                return false;
        }
    }
    bool affine() const {
        switch (family) {
            case TypeFamily::AffineA: case TypeFamily::AffineB:
            case TypeFamily::AffineC: case TypeFamily::AffineD:
            case TypeFamily::AffineE: case TypeFamily::AffineF:
            case TypeFamily::AffineG:
                return true;
            default:
                return false;
        }
    }

    std::string name() const {
        switch (family) {
            case TypeFamily::A: return "A" + std::to_string(n);
            case TypeFamily::B: return "B" + std::to_string(n);
            case TypeFamily::D: return "D" + std::to_string(n);
            case TypeFamily::E: return "E" + std::to_string(n);
            case TypeFamily::F: return "F" + std::to_string(n);
            case TypeFamily::H: return "H" + std::to_string(n);
            case TypeFamily::I2: return "I2(" + std::to_string(n) + ")";
            case TypeFamily::AffineA: return "~A" + std::to_string(n);
            case TypeFamily::AffineB: return "~B" + std::to_string(n);
            case TypeFamily::AffineC: return "~C" + std::to_string(n);
            case TypeFamily::AffineD: return "~D" + std::to_string(n);
            case TypeFamily::AffineE: return "~E" + std::to_string(n);
            case TypeFamily::AffineF: return "~F" + std::to_string(n);
            case TypeFamily::AffineG: return "~G" + std::to_string(n);
            case TypeFamily::NonSphericalNonAffine: return "other";
        }
        return "?";
    }

    friend bool operator==(const IrreducibleType& a, const IrreducibleType& b) {
        return a.family == b.family && a.n == b.n;
    }
    friend bool operator<(const IrreducibleType& a, const IrreducibleType& b) {
        return std::tie(a.family, a.n) < std::tie(b.family, b.n);
    }
};

namespace detail {

// Structure of a connected Coxeter graph on [0, rank): degrees, adjacency,
// cycle/tree shape.
struct GraphShape {
    int n = 0;
    int edges = 0;
    std::vector<std::vector<int>> adj;
    std::vector<int> degree;
    std::vector<int> branch;  // vertices of degree >= 3
    std::vector<int> tips;    // degree <= 1
};

inline GraphShape graph_shape(const CoxeterMatrix& m) {
    GraphShape g;
    g.n = m.rank();
    g.adj.resize(g.n);
    g.degree.assign(g.n, 0);
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            if (graph_edge(m, i, j)) {
                ++g.edges;
                g.adj[i].push_back(j);
                g.adj[j].push_back(i);
                ++g.degree[i];
                ++g.degree[j];
            }
    for (int i = 0; i < g.n; ++i) {
        if (g.degree[i] >= 3) g.branch.push_back(i);
        if (g.degree[i] <= 1) g.tips.push_back(i);
    }
    return g;
}

// For a path graph, the sequence of edge labels walked from one end.
inline std::vector<Label> path_labels(const CoxeterMatrix& m, const GraphShape& g, int end) {
    std::vector<Label> seq;
    int prev = -1, cur = end;
    for (int step = 0; step + 1 < g.n; ++step) {
        int nxt = -1;
        for (int w : g.adj[cur])
            if (w != prev) nxt = w;
        seq.push_back(m(cur, nxt));
        prev = cur;
        cur = nxt;
    }
    return seq;
}

// One arm of a tree hanging off branch vertex b in direction `start`:
// the vertices in order away from b.
inline std::vector<int> tree_arm(const GraphShape& g, int b, int start) {
    std::vector<int> arm{start};
    int prev = b, cur = start;
    while (true) {
        int nxt = -1;
        for (int w : g.adj[cur])
            if (w != prev) nxt = w;
        if (nxt < 0) break;
        arm.push_back(nxt);
        prev = cur;
        cur = nxt;
    }
    return arm;
}

}  // namespace detail

// Matches a connected matrix against the spherical and affine diagram
// templates; NonSphericalNonAffine when nothing fits.
inline IrreducibleType recognize_irreducible(const CoxeterMatrix& m) {
    using detail::graph_shape;
    if (!is_connected(m)) throw validation_error("recognize_irreducible needs a connected graph");
    const int n = m.rank();
    if (n == 1) return {TypeFamily::A, 1};
    if (n == 2) {
        Label l = m(0, 1);
        if (l == label_infinity) return {TypeFamily::AffineA, 1};
        if (l == 3) return {TypeFamily::A, 2};
        if (l == 4) return {TypeFamily::B, 2};
        return {TypeFamily::I2, l};
    }
    auto g = graph_shape(m);
    bool any_inf = false, all3 = true;
    for (int i = 0; i < n && !any_inf; ++i)
        for (int j = i + 1; j < n; ++j) {
            Label l = m(i, j);
            if (l == label_infinity) any_inf = true;
            if (l >= 4 && l != label_infinity) all3 = false;
        }
    if (any_inf) return {TypeFamily::NonSphericalNonAffine, 0};

    if (g.edges == n) {
        // a single cycle: affine A_{n-1} iff every vertex has degree 2, all labels 3
        bool cycle = std::all_of(g.degree.begin(), g.degree.end(), [](int d) { return d == 2; });
        if (cycle && all3) return {TypeFamily::AffineA, n - 1};
        return {TypeFamily::NonSphericalNonAffine, 0};
    }
    if (g.edges != n - 1) return {TypeFamily::NonSphericalNonAffine, 0};  // not a tree

    if (g.branch.empty()) {
        // path; try both directions
        for (int e : {g.tips[0], g.tips[1]}) {
            auto s = detail::path_labels(m, g, e);
            const int len = static_cast<int>(s.size());
            auto all3_upto = [&](int from, int to) {
                for (int i = from; i < to; ++i)
                    if (s[i] != 3) return false;
                return true;
            };
            if (all3_upto(0, len)) return {TypeFamily::A, n};
            if (all3_upto(0, len - 1) && s[len - 1] == 4) return {TypeFamily::B, n};
            if (n == 4 && s == std::vector<Label>{3, 4, 3}) return {TypeFamily::F, 4};
            if (n == 3 && s == std::vector<Label>{5, 3}) return {TypeFamily::H, 3};
            if (n == 4 && s == std::vector<Label>{5, 3, 3}) return {TypeFamily::H, 4};
            if (s[0] == 4 && s[len - 1] == 4 && all3_upto(1, len - 1))
                return {TypeFamily::AffineC, n - 1};
            if (n == 5 && s == std::vector<Label>{3, 3, 4, 3}) return {TypeFamily::AffineF, 4};
            if (n == 3 && s == std::vector<Label>{6, 3}) return {TypeFamily::AffineG, 2};
        }
        return {TypeFamily::NonSphericalNonAffine, 0};
    }

    if (g.branch.size() == 1) {
        int b = g.branch[0];
        if (g.degree[b] == 4 && n == 5 && all3) return {TypeFamily::AffineD, 4};
        if (g.degree[b] != 3) return {TypeFamily::NonSphericalNonAffine, 0};
        std::vector<std::vector<int>> arms;
        for (int s : g.adj[b]) arms.push_back(detail::tree_arm(g, b, s));
        int total = 0;
        for (const auto& a : arms) total += static_cast<int>(a.size());
        if (total != n - 1) return {TypeFamily::NonSphericalNonAffine, 0};  // arm rejoins
        std::vector<int> len{static_cast<int>(arms[0].size()), static_cast<int>(arms[1].size()),
                             static_cast<int>(arms[2].size())};
        std::sort(len.begin(), len.end());
        if (all3) {
            if (len[0] == 1 && len[1] == 1) return {TypeFamily::D, n};
            if (len == std::vector<int>{1, 2, 2}) return {TypeFamily::E, 6};
            if (len == std::vector<int>{1, 2, 3}) return {TypeFamily::E, 7};
            if (len == std::vector<int>{1, 2, 4}) return {TypeFamily::E, 8};
            if (len == std::vector<int>{2, 2, 2}) return {TypeFamily::AffineE, 6};
            if (len == std::vector<int>{1, 3, 3}) return {TypeFamily::AffineE, 7};
            if (len == std::vector<int>{1, 2, 5}) return {TypeFamily::AffineE, 8};
            return {TypeFamily::NonSphericalNonAffine, 0};
        }
        // affine B~: arms (1,1,k), all labels 3 except the last edge of the
        // long arm, which is 4 (for n = 4 the "long arm" is any of the three)
        if (len[0] == 1 && len[1] == 1) {
            int bad = 0, four_ends = 0;
            std::vector<std::pair<int, Label>> ends;
            for (const auto& arm : arms) {
                std::vector<Label> labs{m(b, arm[0])};
                for (size_t i = 0; i + 1 < arm.size(); ++i)
                    labs.push_back(m(arm[i], arm[i + 1]));
                for (size_t i = 0; i + 1 < labs.size(); ++i)
                    if (labs[i] != 3) ++bad;
                if (labs.back() == 4)
                    ++four_ends;
                else if (labs.back() != 3)
                    ++bad;
                ends.emplace_back(static_cast<int>(arm.size()), labs.back());
            }
            std::sort(ends.begin(), ends.end());
            if (bad == 0 && four_ends == 1 && ends[2].second == 4)
                return {TypeFamily::AffineB, n - 1};
        }
        return {TypeFamily::NonSphericalNonAffine, 0};
    }

    if (g.branch.size() == 2 && all3) {
        // affine D~: a path with a fork of two tips at each end
        int b0 = g.branch[0], b1 = g.branch[1];
        if (g.degree[b0] == 3 && g.degree[b1] == 3 && g.tips.size() == 4) {
            auto tip_count = [&](int b) {
                int c = 0;
                for (int w : g.adj[b])
                    if (g.degree[w] == 1) ++c;
                return c;
            };
            if (tip_count(b0) == 2 && tip_count(b1) == 2) return {TypeFamily::AffineD, n - 1};
        }
    }
    return {TypeFamily::NonSphericalNonAffine, 0};
}

// ---------------------------------------------------------------------------
// The tetrachotomy.
// ---------------------------------------------------------------------------

enum class Kind { Spherical, Affine, Hyperbolic, Other };

inline std::string kind_name(Kind k) {
    switch (k) {
        case Kind::Spherical: return "spherical";
        case Kind::Affine: return "affine";
        case Kind::Hyperbolic: return "hyperbolic";
        case Kind::Other: return "other";
    }
    return "?";
}

struct Classification {
    Kind kind = Kind::Other;
    std::vector<IrreducibleType> component_types;  // one per connected component
};

// Every connected induced proper subdiagram must be spherical or affine.
// Preconditions: connected, neither spherical nor affine (violations answer
// false; callers that need the reason use classify()).
inline bool is_hyperbolic(const CoxeterMatrix& m) {
    if (!is_connected(m)) return false;
    const int n = m.rank();
    {
        IrreducibleType t = recognize_irreducible(m);
        if (t.spherical() || t.affine()) return false;
    }
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
        GeneratorSubset I;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) I.push_back(i);
        if (static_cast<int>(I.size()) < 2) continue;
        CoxeterMatrix sub = restrict(m, I);
        if (!is_connected(sub)) continue;
        IrreducibleType t = recognize_irreducible(sub);
        if (!t.spherical() && !t.affine()) return false;
    }
    return true;
}

inline Classification classify(const CoxeterMatrix& m) {
    Classification out;
    if (m.rank() == 0) {
        out.kind = Kind::Spherical;
        return out;
    }
    auto comps = components(m);
    for (const auto& c : comps)
        out.component_types.push_back(recognize_irreducible(restrict(m, c)));
    bool all_sph = std::all_of(out.component_types.begin(), out.component_types.end(),
                               [](const IrreducibleType& t) { return t.spherical(); });
    if (all_sph) {
        out.kind = Kind::Spherical;
        return out;
    }
    if (comps.size() == 1) {
        IrreducibleType t = out.component_types[0];
        if (t.affine())
            out.kind = Kind::Affine;
        else
            out.kind = is_hyperbolic(m) ? Kind::Hyperbolic : Kind::Other;
        return out;
    }
    out.kind = Kind::Other;  // reducible, not all spherical: aggregate kind
    return out;
}

// ---------------------------------------------------------------------------
// Spherical residues.
// ---------------------------------------------------------------------------

struct SphericalFamily {
    // Each member subset together with the multiset of its component types,
    // ordered by size then lexicographically.
    std::vector<std::pair<GeneratorSubset, std::vector<IrreducibleType>>> members;

    bool contains(const GeneratorSubset& I) const {
        return std::any_of(members.begin(), members.end(),
                           [&](const auto& e) { return e.first == I; });
    }
    size_t size() const { return members.size(); }
};

inline bool subset_is_spherical(const CoxeterMatrix& m, const GeneratorSubset& I,
                                std::vector<IrreducibleType>* types_out = nullptr) {
    CoxeterMatrix sub = restrict(m, I);
    std::vector<IrreducibleType> types;
    for (const auto& comp : components(sub)) {
        IrreducibleType t = recognize_irreducible(restrict(sub, comp));
        if (!t.spherical()) return false;
        types.push_back(t);
    }
    if (types_out) {
        std::sort(types.begin(), types.end());
        *types_out = std::move(types);
    }
    return true;
}

// All subsets I whose components are spherical, found by a monotone walk up
// the subset lattice: a superset of a non-spherical set is never visited.
inline SphericalFamily spherical_residues(const CoxeterMatrix& m) {
    const int n = m.rank();
    SphericalFamily fam;
    fam.members.push_back({{}, {}});
    std::vector<GeneratorSubset> layer{GeneratorSubset{}};
    std::set<GeneratorSubset> prev_ok{GeneratorSubset{}};
    for (int k = 1; k <= n && !layer.empty(); ++k) {
        std::set<GeneratorSubset> next_ok;
        std::set<GeneratorSubset> candidates;
        for (const auto& I : prev_ok)
            for (int v = (I.empty() ? 0 : I.back() + 1); v < n; ++v) {
                GeneratorSubset J = I;
                J.push_back(v);
                candidates.insert(std::move(J));
            }
        for (const auto& J : candidates) {
            // downward closure: all (k-1)-subsets must already be spherical
            bool parents_ok = true;
            for (size_t drop = 0; drop < J.size() && parents_ok; ++drop) {
                GeneratorSubset P;
                for (size_t i = 0; i < J.size(); ++i)
                    if (i != drop) P.push_back(J[i]);
                parents_ok = prev_ok.count(P) > 0;
            }
            if (!parents_ok) continue;
            std::vector<IrreducibleType> types;
            if (subset_is_spherical(m, J, &types)) {
                fam.members.push_back({J, std::move(types)});
                next_ok.insert(J);
            }
        }
        layer.assign(next_ok.begin(), next_ok.end());
        prev_ok = std::move(next_ok);
    }
    return fam;
}

// ---------------------------------------------------------------------------
// Float Gram-signature cross-check (never used in certified paths).
// ---------------------------------------------------------------------------

struct GramSignature {
    int n_plus = 0, n_zero = 0, n_minus = 0;
    friend bool operator==(const GramSignature& a, const GramSignature& b) {
        return a.n_plus == b.n_plus && a.n_zero == b.n_zero && a.n_minus == b.n_minus;
    }
};

// Signature of B = (-cos(pi/m_ij)) by a plain Jacobi eigenvalue sweep;
// eigenvalues of magnitude below tol count as zero.
inline GramSignature gram_signature_float(const CoxeterMatrix& m, double tol = 1e-9) {
    const int n = m.rank();
    std::vector<double> a(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Label l = m(i, j);
            a[i * n + j] = (l == label_infinity) ? -1.0 : -std::cos(M_PI / l);
        }
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
        if (off < 1e-26) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                double apq = a[p * n + q];
                if (std::abs(apq) < 1e-18) continue;
                double theta = 0.5 * std::atan2(2 * apq, a[q * n + q] - a[p * n + p]);
                double c = std::cos(theta), s = std::sin(theta);
                for (int k = 0; k < n; ++k) {
                    double akp = a[k * n + p], akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = a[p * n + k], aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
    }
    GramSignature sig;
    for (int i = 0; i < n; ++i) {
        double ev = a[i * n + i];
        if (ev > tol)
            ++sig.n_plus;
        else if (ev < -tol)
            ++sig.n_minus;
        else
            ++sig.n_zero;
    }
    return sig;
}

// ---------------------------------------------------------------------------
// Enumeration of hyperbolic systems of rank >= 4.
// ---------------------------------------------------------------------------

namespace detail {

// Relabels the matrix by the vertex order minimizing the entry sequence read
// vertex-incrementally (for each new vertex, its labels against all earlier
// ones). The minimum is found by branch-and-bound on sequence prefixes;
// infinity compares above every finite label. The result is a unique
// representative of the Coxeter-isomorphism class.
inline CoxeterMatrix canonical_form(const CoxeterMatrix& m) {
    const int n = m.rank();
    if (n <= 1) return m;
    std::vector<Label> best;
    std::vector<int> order;
    std::vector<bool> used(n, false);
    std::vector<Label> prefix;
    auto rec = [&](auto&& self) -> void {
        int i = static_cast<int>(order.size());
        if (i == n) {
            if (best.empty() || prefix < best) best = prefix;
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (used[v]) continue;
            size_t mark = prefix.size();
            for (int j = 0; j < i; ++j) prefix.push_back(m(order[j], v));
            bool viable =
                best.empty() ||
                std::lexicographical_compare(prefix.begin(), prefix.end(), best.begin(),
                                             best.begin() + prefix.size()) ||
                std::equal(prefix.begin(), prefix.end(), best.begin());
            if (viable) {
                order.push_back(v);
                used[v] = true;
                self(self);
                used[v] = false;
                order.pop_back();
            }
            prefix.resize(mark);
        }
    };
    rec(rec);
    // rebuild the matrix from the winning sequence
    std::vector<Label> e(n * n, 1);
    size_t pos = 0;
    for (int i = 1; i < n; ++i)
        for (int j = 0; j < i; ++j) {
            e[i * n + j] = best[pos];
            e[j * n + i] = best[pos];
            ++pos;
        }
    return CoxeterMatrix(n, std::move(e));
}

}  // namespace detail

// All connected hyperbolic matrices in the rank range, one canonical
// representative per Coxeter-isomorphism class, ordered by rank then by
// lexicographic canonical entry sequence.
inline std::vector<CoxeterMatrix> enumerate_hyperbolic(int min_rank, int max_rank) {
    if (min_rank < 4 || min_rank > max_rank || max_rank > 10)
        throw validation_error("enumerate_hyperbolic expects 4 <= min_rank <= max_rank <= 10");
    static const Label kCandidates[] = {2, 3, 4, 5, 6, label_infinity};
    std::vector<CoxeterMatrix> out;
    for (int n = min_rank; n <= max_rank; ++n) {
        std::set<std::vector<Label>> canon;
        std::vector<Label> e(n * n, 1);
        auto at = [&](int i, int j) -> Label& { return e[i * n + j]; };
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) at(i, j) = (i == j) ? 1 : 2;

        // every connected subset of {0..j-1, j, k} containing both j and k must
        // recognize as spherical or affine (they are proper: j < k <= n-1)
        auto new_subsets_ok = [&](int k, int j) {
            GeneratorSubset base;
            for (int v = 0; v < j; ++v) base.push_back(v);
            const unsigned lim = 1u << j;
            for (unsigned mask = 0; mask < lim; ++mask) {
                GeneratorSubset I;
                for (int v = 0; v < j; ++v)
                    if (mask & (1u << v)) I.push_back(v);
                I.push_back(j);
                I.push_back(k);
                int r = static_cast<int>(I.size());
                if (r == n) continue;  // proper subdiagrams only
                // build the submatrix directly from e
                std::vector<Label> se(r * r);
                for (int a = 0; a < r; ++a)
                    for (int b = 0; b < r; ++b) se[a * r + b] = at(I[a], I[b]);
                CoxeterMatrix sub(r, std::move(se));
                if (!is_connected(sub)) continue;
                IrreducibleType t = recognize_irreducible(sub);
                if (!t.spherical() && !t.affine()) return false;
            }
            return true;
        };

        auto place = [&](auto&& self, int k, int j) -> void {
            if (j == k) {
                bool touches = false;
                for (int i = 0; i < k && !touches; ++i) touches = at(k, i) >= 3;
                if (k > 0 && !touches) return;  // keep a connected construction order
                if (k + 1 == n) {
                    CoxeterMatrix cand(n, e);
                    if (!is_connected(cand)) return;
                    if (is_hyperbolic(cand))
                        canon.insert(detail::canonical_form(cand).upper_triangle());
                } else {
                    self(self, k + 1, 0);
                }
                return;
            }
            for (Label lab : kCandidates) {
                at(k, j) = at(j, k) = lab;
                if (new_subsets_ok(k, j)) self(self, k, j + 1);
            }
            at(k, j) = at(j, k) = 2;
        };
        place(place, 1, 0);

        for (const auto& u : canon) out.push_back(CoxeterMatrix::from_upper_triangle(n, u));
    }
    return out;
}

}  // namespace coxgrow
