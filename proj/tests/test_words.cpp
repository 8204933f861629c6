#include "coxgrow/words.hpp"

#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"

using namespace coxgrow;
using coxgrow::testing::e10;
using coxgrow::testing::path;
using coxgrow::testing::triangle;

namespace {
const CoxeterMatrix kI23 = CoxeterMatrix::from_upper_triangle(2, {3});
const CoxeterMatrix kIInf = CoxeterMatrix::from_upper_triangle(2, {label_infinity});
}  // namespace

TEST(AlternatingWord, Cases) {
    EXPECT_EQ(alternating_word(0, 1, 4), word_from({0, 1, 0, 1}));
    EXPECT_EQ(alternating_word(0, 1, 3), word_from({0, 1, 0}));
    EXPECT_EQ(alternating_word(0, 1, 0), Word{});
    EXPECT_THROW(alternating_word(0, 0, 3), validation_error);
    EXPECT_THROW(alternating_word(0, 1, label_infinity), domain_error);
}

TEST(M2Neighbors, Cases) {
    // I2(3), sts -> {tst}
    auto nb = m2_neighbors(kI23, word_from({0, 1, 0}));
    ASSERT_EQ(nb.size(), 1u);
    EXPECT_EQ(nb[0], word_from({1, 0, 1}));
    // no finite braid relation
    EXPECT_TRUE(m2_neighbors(kIInf, word_from({0, 1, 0})).empty());
    // commutation as [s,r,2]
    auto a2a1 = CoxeterMatrix::from_upper_triangle(3, {3, 2, 2});
    auto nb2 = m2_neighbors(a2a1, word_from({0, 2}));
    ASSERT_EQ(nb2.size(), 1u);
    EXPECT_EQ(nb2[0], word_from({2, 0}));
}

TEST(IsReduced, Cases) {
    EXPECT_FALSE(is_reduced(kI23, word_from({0, 0})));
    EXPECT_TRUE(is_reduced(kI23, word_from({0, 1, 0})));
    EXPECT_FALSE(is_reduced(kI23, word_from({0, 1, 0, 1})));  // braid exposes tt
    EXPECT_TRUE(is_reduced(kI23, Word{}));
    EXPECT_TRUE(is_reduced(kIInf, word_from({0, 1, 0, 1, 0})));
}

TEST(NormalForm, Cases) {
    // I2(3), tst -> sts (generator order s < t)
    EXPECT_EQ(normal_form(kI23, word_from({1, 0, 1})).word, word_from({0, 1, 0}));
    EXPECT_EQ(normal_form(kI23, Word{}).word, Word{});
    // stst -> ts
    EXPECT_EQ(normal_form(kI23, word_from({0, 1, 0, 1})).word, word_from({1, 0}));
    // idempotent on randoms
    std::mt19937 rng(3);
    auto m = triangle(2, 3, 7);
    for (int i = 0; i < 200; ++i) {
        Word w;
        for (int k = rng() % 9; k > 0; --k) w.push_back(static_cast<char>(rng() % 3));
        auto nf = normal_form(m, w);
        EXPECT_EQ(normal_form(m, nf.word), nf);
        EXPECT_LE(nf.word.size(), w.size());
        EXPECT_TRUE(is_reduced(m, nf.word));
    }
}

TEST(Multiply, Cases) {
    // involution
    EXPECT_EQ(multiply(kI23, NormalForm{word_from({0})}, word_from({0})).word, Word{});
    // st * s = sts
    EXPECT_EQ(multiply(kI23, NormalForm{word_from({0, 1})}, word_from({0})).word,
              word_from({0, 1, 0}));
    // unit law
    auto m = triangle(2, 3, 7);
    std::mt19937 rng(4);
    for (int i = 0; i < 50; ++i) {
        Word w;
        for (int k = rng() % 7; k > 0; --k) w.push_back(static_cast<char>(rng() % 3));
        EXPECT_EQ(multiply(m, NormalForm{}, w), normal_form(m, w));
    }
}

TEST(Multiply, AssociativeUpToNormalForm) {
    auto m = triangle(2, 3, 7);
    std::mt19937 rng(6);
    for (int i = 0; i < 100; ++i) {
        Word a, b, c;
        for (int k = rng() % 5; k > 0; --k) a.push_back(static_cast<char>(rng() % 3));
        for (int k = rng() % 5; k > 0; --k) b.push_back(static_cast<char>(rng() % 3));
        for (int k = rng() % 5; k > 0; --k) c.push_back(static_cast<char>(rng() % 3));
        auto ab_c = multiply(m, multiply(m, normal_form(m, a), b), c);
        auto a_bc = multiply(m, normal_form(m, a), normal_form(m, b + c).word);
        EXPECT_EQ(ab_c, a_bc);
    }
}

TEST(ReducedWords, Cases) {
    // I2(3) longest element: {sts, tst}
    auto rw = reduced_words(kI23, NormalForm{word_from({0, 1, 0})});
    ASSERT_EQ(rw.size(), 2u);
    EXPECT_EQ(rw[0], word_from({0, 1, 0}));
    EXPECT_EQ(rw[1], word_from({1, 0, 1}));
    // identity
    EXPECT_EQ(reduced_words(kI23, NormalForm{}).size(), 1u);
    // A3 longest element has 16 reduced words
    auto a3 = path({3, 3});
    auto w0 = normal_form(a3, word_from({0, 1, 0, 2, 1, 0}));
    EXPECT_EQ(w0.length(), 6);
    auto all = reduced_words(a3, w0);
    EXPECT_EQ(all.size(), 16u);
    // every member reduced, same length, same element
    for (const auto& u : all) {
        EXPECT_EQ(u.size(), 6u);
        EXPECT_TRUE(is_reduced(a3, u));
        EXPECT_EQ(normal_form(a3, u), w0);
    }
}

TEST(ReducedWords, AllMembersSameElement) {
    // multiplying any member by the reverse of any other gives the identity
    auto m = triangle(2, 3, 7);
    auto nf = normal_form(m, word_from({0, 1, 2, 1, 0, 2}));
    auto words = reduced_words(m, nf);
    for (const auto& u : words)
        for (const auto& v : words) {
            Word vrev(v.rbegin(), v.rend());  // generators are involutions
            EXPECT_EQ(normal_form(m, u + vrev).word, Word{});
        }
}

TEST(Spheres, SmallCases) {
    // A1: two elements
    auto a1 = CoxeterMatrix(1, {1});
    auto sd = spheres(a1, 3);
    EXPECT_EQ(sd.spheres, (std::vector<long long>{1, 1, 0, 0}));
    EXPECT_EQ(sd.balls, (std::vector<long long>{1, 2, 2, 2}));

    // infinite dihedral: 1, 2, 2, 2, ...
    EXPECT_EQ(spheres(kIInf, 4).spheres, (std::vector<long long>{1, 2, 2, 2, 2}));

    // <2,3,7>: 1, 3, 5, ...
    auto td = spheres(triangle(2, 3, 7), 2);
    EXPECT_EQ(td.spheres, (std::vector<long long>{1, 3, 5}));
}

TEST(Spheres, E10FirstTerms) {
    auto sd = spheres(e10(), 4);
    EXPECT_EQ(sd.spheres, (std::vector<long long>{1, 10, 54, 210, 660}));
}

TEST(Spheres, FiniteGroupOrders) {
    // |A3| = 24, longest length 6
    auto a3 = spheres(path({3, 3}), 8);
    EXPECT_EQ(a3.balls.back(), 24);
    EXPECT_EQ(a3.spheres[6], 1);
    EXPECT_EQ(a3.spheres[7], 0);
    // |B3| = 48, |H3| = 120
    EXPECT_EQ(spheres(path({3, 4}), 9).balls.back(), 48);
    EXPECT_EQ(spheres(path({5, 3}), 15).balls.back(), 120);
}

TEST(Spheres, NormalFormsPerLevel) {
    auto m = triangle(2, 3, 7);
    auto sd = spheres(m, 4, /*keep_normal_forms=*/true);
    for (int k = 0; k <= 4; ++k) {
        ASSERT_EQ(static_cast<long long>(sd.level_nfs[k].size()), sd.spheres[k]);
        for (const auto& w : sd.level_nfs[k]) {
            EXPECT_EQ(static_cast<int>(w.size()), k);
            EXPECT_EQ(normal_form(m, w).word, w);
        }
    }
}

TEST(Spheres, DegreeBoundProperty) {
    // deg(normal_form(w)) <= deg(w) on random words over a mixed system
    auto m = coxgrow::testing::reduction_m();
    std::mt19937 rng(8);
    for (int i = 0; i < 100; ++i) {
        Word w;
        for (int k = rng() % 8; k > 0; --k) w.push_back(static_cast<char>(rng() % 5));
        EXPECT_LE(normal_form(m, w).word.size(), w.size());
    }
}

TEST(Caps, ClosureCapSignalsResourceError) {
    auto m = path({3, 3});
    EXPECT_THROW(normal_form(m, word_from({0, 1, 0, 2, 1, 0}), /*closure_cap=*/4),
                 resource_error);
    EXPECT_THROW(spheres(e10(), 6, false, /*element_cap=*/100), resource_error);
}
