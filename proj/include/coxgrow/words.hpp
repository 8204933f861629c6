#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "coxgrow/coxmatrix.hpp"

namespace coxgrow {

// A word in the free monoid over the generators, one byte per letter.
// Comparison on std::string is exactly the lexicographic order on letter
// sequences, so "shorter first, then lexicographic" is ShortLex.
using Word = std::string;

inline Word word_from(std::initializer_list<int> letters) {
    Word w;
    for (int l : letters) w.push_back(static_cast<char>(l));
    return w;
}

inline std::vector<int> word_letters(const Word& w) {
    std::vector<int> out;
    out.reserve(w.size());
    for (char c : w) out.push_back(static_cast<unsigned char>(c));
    return out;
}

inline void check_word(const CoxeterMatrix& m, const Word& w) {
    for (char c : w) {
        int l = static_cast<unsigned char>(c);
        if (l >= m.rank()) throw validation_error("word letter out of range");
    }
}

inline bool shortlex_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

// [s,t,m]: the alternating word s t s t ... of length m.
inline Word alternating_word(int s, int t, int m) {
    if (s == t) throw validation_error("alternating word needs distinct generators");
    if (m < 0 || m == label_infinity) throw domain_error("alternating word needs finite m >= 0");
    Word w;
    w.reserve(m);
    for (int i = 0; i < m; ++i) w.push_back(static_cast<char>(i % 2 == 0 ? s : t));
    return w;
}

namespace detail {

inline bool has_square(const Word& w) {
    for (size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] == w[i + 1]) return true;
    return false;
}

// Applies every single M^(2) move to w, invoking fn on each result.
// Returns false if fn ever returns false (early stop).
template <typename Fn>
bool for_each_braid_move(const CoxeterMatrix& m, const Word& w, Fn&& fn) {
    const int len = static_cast<int>(w.size());
    for (int i = 0; i + 1 < len; ++i) {
        int s = static_cast<unsigned char>(w[i]);
        int r = static_cast<unsigned char>(w[i + 1]);
        if (s == r) continue;
        Label braid = m(s, r);
        if (braid == label_infinity || i + braid > len) continue;
        bool match = true;
        for (int k = 0; k < braid && match; ++k)
            match = static_cast<unsigned char>(w[i + k]) == (k % 2 == 0 ? s : r);
        if (!match) continue;
        Word moved = w;
        for (int k = 0; k < braid; ++k) moved[i + k] = static_cast<char>(k % 2 == 0 ? r : s);
        if (!fn(std::as_const(moved))) return false;
    }
    return true;
}

}  // namespace detail

// Every word obtained from w by one braid replacement [s,r,m] -> [r,s,m],
// m finite, at any position. Deduplicated, ShortLex order.
inline std::vector<Word> m2_neighbors(const CoxeterMatrix& m, const Word& w) {
    check_word(m, w);
    std::vector<Word> out;
    detail::for_each_braid_move(m, w, [&](const Word& moved) {
        out.push_back(moved);
        return true;
    });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline constexpr size_t default_closure_cap = 1000000;
inline constexpr size_t default_bfs_cap = 10000000;

namespace detail {

// M^(2) closure of w as a hash set. If stop_on_square, returns as soon as a
// member containing ss is found (that member is placed last in `order`).
struct Closure {
    std::unordered_set<Word> seen;
    std::vector<Word> order;
    bool found_square = false;
};

inline Closure m2_closure(const CoxeterMatrix& m, const Word& w, bool stop_on_square,
                          size_t cap) {
    Closure cl;
    cl.seen.insert(w);
    cl.order.push_back(w);
    if (stop_on_square && has_square(w)) {
        cl.found_square = true;
        return cl;
    }
    for (size_t head = 0; head < cl.order.size(); ++head) {
        Word cur = cl.order[head];
        bool keep_going = for_each_braid_move(m, cur, [&](const Word& moved) {
            if (cl.seen.insert(moved).second) {
                cl.order.push_back(moved);
                if (cl.seen.size() > cap)
                    throw resource_error("M-move closure exceeded cap of " +
                                         std::to_string(cap) + " words");
                if (stop_on_square && has_square(moved)) {
                    cl.found_square = true;
                    return false;
                }
            }
            return true;
        });
        if (!keep_going) break;
    }
    if (!stop_on_square)
        cl.found_square = std::any_of(cl.order.begin(), cl.order.end(),
                                      [](const Word& u) { return has_square(u); });
    return cl;
}

}  // namespace detail

// Tits' criterion: w is reduced iff no word in its M^(2) closure contains a
// square ss (the only degree-decreasing move is the square deletion M^(1)).
inline bool is_reduced(const CoxeterMatrix& m, const Word& w,
                       size_t closure_cap = default_closure_cap) {
    check_word(m, w);
    if (detail::has_square(w)) return false;
    return !detail::m2_closure(m, w, /*stop_on_square=*/true, closure_cap).found_square;
}

// The ShortLex-minimal reduced representative of pi_M(w).
struct NormalForm {
    Word word;
    friend bool operator==(const NormalForm& a, const NormalForm& b) {
        return a.word == b.word;
    }
    friend bool operator!=(const NormalForm& a, const NormalForm& b) { return !(a == b); }
    int length() const { return static_cast<int>(word.size()); }
};

// Repeatedly: walk the M^(2) closure; if a member exposes a square, delete it
// and restart from the shortened word; otherwise return the ShortLex-least
// member of the closure.
inline NormalForm normal_form(const CoxeterMatrix& m, Word w,
                              size_t closure_cap = default_closure_cap) {
    check_word(m, w);
    while (true) {
        auto cl = detail::m2_closure(m, w, /*stop_on_square=*/true, closure_cap);
        if (cl.found_square) {
            const Word& sq = cl.order.back();
            size_t pos = 0;
            while (pos + 1 < sq.size() && sq[pos] != sq[pos + 1]) ++pos;
            w = sq.substr(0, pos) + sq.substr(pos + 2);
            continue;
        }
        return NormalForm{*std::min_element(
            cl.order.begin(), cl.order.end(),
            [](const Word& a, const Word& b) { return shortlex_less(a, b); })};
    }
}

inline NormalForm multiply(const CoxeterMatrix& m, const NormalForm& a, const Word& b,
                           size_t closure_cap = default_closure_cap) {
    return normal_form(m, a.word + b, closure_cap);
}

// The full set R_M of reduced words representing the element of w;
// sorted ShortLex, so the normal form itself comes first.
inline std::vector<Word> reduced_words(const CoxeterMatrix& m, const NormalForm& w,
                                       size_t closure_cap = default_closure_cap) {
    check_word(m, w.word);
    auto cl = detail::m2_closure(m, w.word, /*stop_on_square=*/false, closure_cap);
    if (cl.found_square)
        throw validation_error("reduced_words requires a reduced input word");
    std::vector<Word> out(cl.order.begin(), cl.order.end());
    std::sort(out.begin(), out.end(), shortlex_less);
    return out;
}

// ---------------------------------------------------------------------------
// The BFS sphere/ball oracle.
//
// Level k+1 candidates are u*s for every reduced word u of length k. Braid
// moves never change the represented element or the length, so connected
// components of the braid-move graph on the candidate set are exactly (a)
// the sets R_M(w) for the new elements, and (b) classes of non-reduced
// words, each of which provably contains a word with a visible square.
// Counting components that expose no square counts the sphere A_{k+1}.
// ---------------------------------------------------------------------------

struct SphereData {
    std::vector<long long> spheres;  // a_0..a_n
    std::vector<long long> balls;    // b_0..b_n
    // Normal forms per level (kept only when requested): level_nfs[k] lists
    // sigma_M of every element of length k, sorted.
    std::vector<std::vector<Word>> level_nfs;
};

inline SphereData spheres(const CoxeterMatrix& m, int n, bool keep_normal_forms = false,
                          size_t element_cap = default_bfs_cap) {
    SphereData out;
    out.spheres.assign(n + 1, 0);
    out.balls.assign(n + 1, 0);
    out.spheres[0] = 1;
    out.balls[0] = 1;
    if (keep_normal_forms) out.level_nfs.assign(n + 1, {});
    if (keep_normal_forms) out.level_nfs[0].push_back(Word{});

    size_t total_elements = 1;
    std::vector<Word> level{Word{}};  // all reduced words of the current length
    for (int k = 1; k <= n; ++k) {
        // candidate words and an index for them
        std::vector<Word> cand;
        {
            std::unordered_set<Word> seen;
            seen.reserve(level.size() * m.rank() * 2);
            for (const auto& u : level)
                for (int s = 0; s < m.rank(); ++s) {
                    Word w = u;
                    w.push_back(static_cast<char>(s));
                    if (seen.insert(w).second) cand.push_back(std::move(w));
                }
        }
        std::unordered_map<Word, int> index;
        index.reserve(cand.size() * 2);
        for (size_t i = 0; i < cand.size(); ++i) index.emplace(cand[i], static_cast<int>(i));

        // union-find over single braid moves
        std::vector<int> parent(cand.size());
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (size_t i = 0; i < cand.size(); ++i) {
            detail::for_each_braid_move(m, cand[i], [&](const Word& moved) {
                auto it = index.find(moved);
                if (it != index.end()) {
                    int ra = find(static_cast<int>(i)), rb = find(it->second);
                    if (ra != rb) parent[ra] = rb;
                }
                return true;
            });
        }

        // drop components that expose a square; survivors are the new elements
        std::unordered_map<int, Word> min_word;  // root -> ShortLex least member
        std::unordered_set<int> bad;
        for (size_t i = 0; i < cand.size(); ++i) {
            int r = find(static_cast<int>(i));
            if (detail::has_square(cand[i])) bad.insert(r);
        }
        std::vector<Word> next;
        for (size_t i = 0; i < cand.size(); ++i) {
            int r = find(static_cast<int>(i));
            if (bad.count(r)) continue;
            next.push_back(cand[i]);
            auto [it, fresh] = min_word.try_emplace(r, cand[i]);
            if (!fresh && shortlex_less(cand[i], it->second)) it->second = cand[i];
        }
        out.spheres[k] = static_cast<long long>(min_word.size());
        out.balls[k] = out.balls[k - 1] + out.spheres[k];
        total_elements += min_word.size();
        if (total_elements > element_cap)
            throw resource_error("BFS exceeded element cap of " + std::to_string(element_cap));
        if (keep_normal_forms) {
            auto& nfs = out.level_nfs[k];
            for (auto& [root, w] : min_word) nfs.push_back(w);
            std::sort(nfs.begin(), nfs.end());
        }
        if (min_word.empty()) {
            // the group is exhausted; the remaining spheres stay zero
            for (int j = k + 1; j <= n; ++j) out.balls[j] = out.balls[k];
            break;
        }
        level = std::move(next);
    }
    return out;
}

}  // namespace coxgrow
