#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "coxgrow/errors.hpp"

namespace coxgrow {

// Off-diagonal bond label: a finite integer >= 2 or infinity. Infinity is
// represented as INT_MAX so that the natural order on int has it on top,
// which is what the partial order on Coxeter systems needs.
using Label = int;
inline constexpr Label label_infinity = std::numeric_limits<int>::max();

inline std::string label_to_string(Label m) {
    return m == label_infinity ? "inf" : std::to_string(m);
}

// Strictly increasing sequence of generator indices. Kept as a plain vector;
// validity against an ambient matrix is checked where it is consumed.
using GeneratorSubset = std::vector<int>;

class CoxeterMatrix;

// An injective map between the generator sets of two Coxeter matrices.
// image[i] is the target index of source generator i.
struct GeneratorMap {
    std::vector<int> image;

    int operator()(int i) const { return image[i]; }
    int size() const { return static_cast<int>(image.size()); }
};

// Symmetric labeled matrix with unit diagonal: the type of a Coxeter system.
// Generators are 0-indexed; optional display names are carried along but
// take no part in any computation.
class CoxeterMatrix {
  public:
    CoxeterMatrix() : rank_(0) {}
    CoxeterMatrix(int rank, std::vector<Label> entries, std::vector<std::string> names = {})
        : rank_(rank), entries_(std::move(entries)), names_(std::move(names)) {
        validate();
    }

    // Build from the strict upper triangle, row by row.
    static CoxeterMatrix from_upper_triangle(int rank, const std::vector<Label>& upper,
                                             std::vector<std::string> names = {}) {
        if (static_cast<int>(upper.size()) != rank * (rank - 1) / 2)
            throw validation_error("upper triangle has wrong length");
        std::vector<Label> e(rank * rank, 1);
        int k = 0;
        for (int i = 0; i < rank; ++i)
            for (int j = i + 1; j < rank; ++j) {
                e[i * rank + j] = upper[k];
                e[j * rank + i] = upper[k];
                ++k;
            }
        return CoxeterMatrix(rank, std::move(e), std::move(names));
    }

    int rank() const { return rank_; }
    Label operator()(int i, int j) const { return entries_[i * rank_ + j]; }
    const std::vector<std::string>& names() const { return names_; }
    bool has_names() const { return !names_.empty(); }
    std::string name_of(int i) const {
        return has_names() ? names_[i] : "s" + std::to_string(i + 1);
    }

    friend bool operator==(const CoxeterMatrix& a, const CoxeterMatrix& b) {
        return a.rank_ == b.rank_ && a.entries_ == b.entries_;
    }
    friend bool operator!=(const CoxeterMatrix& a, const CoxeterMatrix& b) {
        return !(a == b);
    }

    std::vector<Label> upper_triangle() const {
        std::vector<Label> u;
        u.reserve(rank_ * (rank_ - 1) / 2);
        for (int i = 0; i < rank_; ++i)
            for (int j = i + 1; j < rank_; ++j) u.push_back((*this)(i, j));
        return u;
    }

  private:
    int rank_;
    std::vector<Label> entries_;
    std::vector<std::string> names_;

    void validate() const {
        if (rank_ < 0) throw validation_error("negative rank");
        if (static_cast<int>(entries_.size()) != rank_ * rank_)
            throw validation_error("entry grid does not match rank");
        if (!names_.empty() && static_cast<int>(names_.size()) != rank_)
            throw validation_error("names count does not match rank");
        for (int i = 0; i < rank_; ++i) {
            if ((*this)(i, i) != 1)
                throw validation_error("diagonal entry must be 1 at generator " +
                                       std::to_string(i + 1));
            for (int j = i + 1; j < rank_; ++j) {
                if ((*this)(i, j) != (*this)(j, i))
                    throw validation_error("asymmetric entries at (" + std::to_string(i + 1) +
                                           "," + std::to_string(j + 1) + ")");
                Label m = (*this)(i, j);
                if (m != label_infinity && m < 2)
                    throw validation_error("off-diagonal entry < 2 at (" +
                                           std::to_string(i + 1) + "," +
                                           std::to_string(j + 1) + ")");
            }
        }
        if (!names_.empty()) {
            auto sorted = names_;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                throw validation_error("duplicate generator names");
        }
    }
};

inline void check_subset(const CoxeterMatrix& m, const GeneratorSubset& I) {
    int prev = -1;
    for (int i : I) {
        if (i <= prev) throw validation_error("subset indices must be strictly increasing");
        if (i < 0 || i >= m.rank()) throw validation_error("subset index out of range");
        prev = i;
    }
}

// The induced |I| x |I| matrix M_I.
inline CoxeterMatrix restrict(const CoxeterMatrix& m, const GeneratorSubset& I) {
    check_subset(m, I);
    int r = static_cast<int>(I.size());
    std::vector<Label> e(r * r);
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) e[a * r + b] = m(I[a], I[b]);
    std::vector<std::string> names;
    if (m.has_names())
        for (int i : I) names.push_back(m.names()[i]);
    return CoxeterMatrix(r, std::move(e), std::move(names));
}

// Whether generators i and j are joined in the Coxeter graph (m >= 3 or inf).
inline bool graph_edge(const CoxeterMatrix& m, int i, int j) {
    return i != j && m(i, j) >= 3;
}

// Connected components of the Coxeter graph, each sorted, ordered by least
// element; their disjoint union covers all indices.
inline std::vector<GeneratorSubset> components(const CoxeterMatrix& m) {
    int n = m.rank();
    std::vector<bool> seen(n, false);
    std::vector<GeneratorSubset> out;
    for (int s = 0; s < n; ++s) {
        if (seen[s]) continue;
        GeneratorSubset comp;
        std::vector<int> stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (int v = 0; v < n; ++v)
                if (!seen[v] && graph_edge(m, u, v)) {
                    seen[v] = true;
                    stack.push_back(v);
                }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

inline bool is_connected(const CoxeterMatrix& m) {
    return m.rank() > 0 && components(m).size() == 1;
}

namespace detail {

// Vertex invariant used to prune the backtracking searches: the sorted
// multiset of off-diagonal labels in a row.
inline std::vector<Label> row_invariant(const CoxeterMatrix& m, int i) {
    std::vector<Label> r;
    r.reserve(m.rank() - 1);
    for (int j = 0; j < m.rank(); ++j)
        if (j != i) r.push_back(m(i, j));
    std::sort(r.begin(), r.end());
    return r;
}

template <typename Visit>
bool isomorphism_search(const CoxeterMatrix& a, const CoxeterMatrix& b, Visit&& visit) {
    int n = a.rank();
    if (n != b.rank()) return false;
    std::vector<std::vector<Label>> ia(n), ib(n);
    for (int i = 0; i < n; ++i) {
        ia[i] = row_invariant(a, i);
        ib[i] = row_invariant(b, i);
    }
    {
        auto sa = ia, sb = ib;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return false;
    }
    std::vector<int> image(n, -1);
    std::vector<bool> used(n, false);
    // returns true when the visitor asked to stop
    auto rec = [&](auto&& self, int i) -> bool {
        if (i == n) return visit(std::as_const(image));
        for (int c = 0; c < n; ++c) {
            if (used[c] || ia[i] != ib[c]) continue;
            bool ok = true;
            for (int j = 0; j < i && ok; ++j) ok = (a(i, j) == b(image[j], c));
            if (!ok) continue;
            image[i] = c;
            used[c] = true;
            if (self(self, i + 1)) return true;
            used[c] = false;
            image[i] = -1;
        }
        return false;
    };
    return rec(rec, 0);
}

}  // namespace detail

// Label-preserving bijection between the generator sets, if one exists.
inline std::optional<GeneratorMap> coxeter_isomorphic(const CoxeterMatrix& m,
                                                      const CoxeterMatrix& n) {
    std::optional<GeneratorMap> found;
    detail::isomorphism_search(m, n, [&](const std::vector<int>& image) {
        found = GeneratorMap{image};
        return true;
    });
    return found;
}

// The full automorphism group of the labeled graph, identity included,
// ordered lexicographically by image sequence.
inline std::vector<GeneratorMap> automorphisms(const CoxeterMatrix& m) {
    std::vector<GeneratorMap> out;
    detail::isomorphism_search(m, m, [&](const std::vector<int>& image) {
        out.push_back(GeneratorMap{image});
        return false;  // keep enumerating
    });
    std::sort(out.begin(), out.end(),
              [](const GeneratorMap& x, const GeneratorMap& y) { return x.image < y.image; });
    return out;
}

// Verifies that `map` is label preserving from m into n (entrywise equality).
inline bool is_label_preserving(const CoxeterMatrix& m, const CoxeterMatrix& n,
                                const GeneratorMap& map) {
    if (map.size() != m.rank()) return false;
    std::vector<bool> used(n.rank(), false);
    for (int i = 0; i < m.rank(); ++i) {
        int c = map(i);
        if (c < 0 || c >= n.rank() || used[c]) return false;
        used[c] = true;
    }
    for (int i = 0; i < m.rank(); ++i)
        for (int j = 0; j < m.rank(); ++j)
            if (m(i, j) != n(map(i), map(j))) return false;
    return true;
}

inline GeneratorMap compose(const GeneratorMap& first, const GeneratorMap& then) {
    GeneratorMap r;
    r.image.reserve(first.size());
    for (int i = 0; i < first.size(); ++i) r.image.push_back(then(first(i)));
    return r;
}

inline GeneratorMap inverse_of(const GeneratorMap& map, int target_rank) {
    GeneratorMap r;
    r.image.assign(target_rank, -1);
    for (int i = 0; i < map.size(); ++i) r.image[map(i)] = i;
    return r;
}

// ---------------------------------------------------------------------------
// The .cox text format.
//
//   coxrank N
//   names a b c ...        (optional)
//   N rows of N entries    (decimal >= 1 or "inf")
//
// '#' starts a comment, blank lines are skipped.
// ---------------------------------------------------------------------------

inline CoxeterMatrix parse_matrix(const std::string& text) {
    std::vector<std::pair<int, std::string>> lines;  // (line number, stripped text)
    {
        std::istringstream in(text);
        std::string raw;
        int ln = 0;
        while (std::getline(in, raw)) {
            ++ln;
            auto hash = raw.find('#');
            if (hash != std::string::npos) raw.erase(hash);
            std::istringstream probe(raw);
            std::string tok;
            if (probe >> tok) lines.emplace_back(ln, raw);
        }
    }
    if (lines.empty()) throw parse_error("empty .cox input");

    auto settings = lines.begin();
    std::istringstream head(settings->second);
    std::string kw;
    long rank = 0;
    head >> kw;
    if (kw != "coxrank") throw parse_error("expected 'coxrank N'", settings->first);
    if (!(head >> rank) || rank < 1)
        throw parse_error("coxrank needs a decimal rank >= 1", settings->first);
    std::string trail;
    if (head >> trail) throw parse_error("trailing tokens after rank", settings->first);
    ++settings;

    std::vector<std::string> names;
    if (settings != lines.end()) {
        std::istringstream probe(settings->second);
        std::string first;
        probe >> first;
        if (first == "names") {
            std::string nm;
            while (probe >> nm) names.push_back(nm);
            if (static_cast<long>(names.size()) != rank)
                throw parse_error("names line must list exactly " + std::to_string(rank) +
                                      " tokens",
                                  settings->first);
            ++settings;
        }
    }

    std::vector<Label> entries;
    entries.reserve(rank * rank);
    for (long r = 0; r < rank; ++r) {
        if (settings == lines.end())
            throw parse_error("expected " + std::to_string(rank) + " matrix rows, got " +
                              std::to_string(r));
        std::istringstream row(settings->second);
        std::string tok;
        int col = 0;
        while (row >> tok) {
            ++col;
            if (col > rank)
                throw parse_error("too many entries in row", settings->first, col);
            if (tok == "inf") {
                entries.push_back(label_infinity);
                continue;
            }
            try {
                size_t used = 0;
                long v = std::stol(tok, &used);
                if (used != tok.size() || v < 1) throw std::invalid_argument(tok);
                entries.push_back(static_cast<Label>(v));
            } catch (const std::exception&) {
                throw parse_error("bad entry '" + tok + "'", settings->first, col);
            }
        }
        if (col != rank)
            throw parse_error("row has " + std::to_string(col) + " entries, expected " +
                                  std::to_string(rank),
                              settings->first);
        ++settings;
    }
    if (settings != lines.end())
        throw parse_error("unexpected extra content", settings->first);

    return CoxeterMatrix(static_cast<int>(rank), std::move(entries), std::move(names));
}

inline std::string serialize(const CoxeterMatrix& m) {
    std::ostringstream os;
    os << "coxrank " << m.rank() << "\n";
    if (m.has_names()) {
        os << "names";
        for (const auto& n : m.names()) os << " " << n;
        os << "\n";
    }
    for (int i = 0; i < m.rank(); ++i) {
        for (int j = 0; j < m.rank(); ++j) {
            if (j) os << " ";
            os << label_to_string(m(i, j));
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace coxgrow
