#include "coxgrow/structure.hpp"

#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"

using namespace coxgrow;
using coxgrow::testing::e10;
using coxgrow::testing::fig1;
using coxgrow::testing::path;
using coxgrow::testing::triangle;

namespace {
const CoxeterMatrix kA2 = CoxeterMatrix::from_upper_triangle(2, {3});
const CoxeterMatrix kI24 = CoxeterMatrix::from_upper_triangle(2, {4});
const CoxeterMatrix kA1 = CoxeterMatrix(1, {1});
}  // namespace

TEST(LeqOrder, Basics) {
    auto up = leq_order(kA2, kI24);
    ASSERT_TRUE(up.has_value());
    EXPECT_TRUE(leq_realized_by(kA2, kI24, *up));
    EXPECT_TRUE(leq_order(kA1, kA2).has_value());
    EXPECT_FALSE(leq_order(kI24, kA2).has_value());
    // infinity on top
    EXPECT_TRUE(leq_order(kI24, CoxeterMatrix::from_upper_triangle(2, {label_infinity}))
                    .has_value());
    EXPECT_TRUE(leq_order(triangle(2, 3, 7), triangle(2, 3, label_infinity)).has_value());
}

TEST(LeqOrder, ReflexiveTransitiveOnSamples) {
    std::vector<CoxeterMatrix> items{kA1,
                                     kA2,
                                     kI24,
                                     triangle(2, 3, 7),
                                     triangle(3, 3, 4),
                                     triangle(2, 4, 5),
                                     path({3, 4, 3}),
                                     triangle(2, 3, label_infinity)};
    for (const auto& m : items) {
        auto self = leq_order(m, m);
        ASSERT_TRUE(self.has_value());
        EXPECT_TRUE(leq_realized_by(m, m, *self));
    }
    for (const auto& a : items)
        for (const auto& b : items)
            for (const auto& c : items) {
                auto ab = leq_order(a, b);
                auto bc = leq_order(b, c);
                if (ab && bc) {
                    auto ac = leq_order(a, c);
                    ASSERT_TRUE(ac.has_value());
                    // the composite injection realizes the composite relation
                    EXPECT_TRUE(leq_realized_by(a, c, compose(*ab, *bc)));
                }
            }
}

TEST(MinimalElements, Basics) {
    auto mins = minimal_elements({kA2, kI24});
    ASSERT_EQ(mins.size(), 1u);
    EXPECT_EQ(mins[0], kA2);
}

TEST(MinimalElements, HyperbolicTriangles) {
    // hyperbolic triangles with labels up to 24 and infinity; exactly the
    // three known minimal ones must survive
    std::vector<Label> labels;
    for (Label l = 2; l <= 24; ++l) labels.push_back(l);
    labels.push_back(label_infinity);
    std::vector<CoxeterMatrix> tris;
    for (size_t i = 0; i < labels.size(); ++i)
        for (size_t j = i; j < labels.size(); ++j)
            for (size_t k = j; k < labels.size(); ++k) {
                auto t = triangle(labels[i], labels[j], labels[k]);
                auto cls = classify(t);
                if (cls.kind != Kind::Hyperbolic) continue;
                bool dup = false;
                for (const auto& seen : tris)
                    if (coxeter_isomorphic(seen, t)) dup = true;
                if (!dup) tris.push_back(t);
            }
    auto mins = minimal_elements(tris);
    ASSERT_EQ(mins.size(), 3u);
    int found = 0;
    for (const auto& m : mins)
        for (const auto& expect : {triangle(2, 3, 7), triangle(3, 3, 4), triangle(2, 4, 5)})
            if (coxeter_isomorphic(m, expect)) ++found;
    EXPECT_EQ(found, 3);
}

TEST(ThmA, A2IntoI24) {
    auto phi = leq_order(kA2, kI24);
    ASSERT_TRUE(phi.has_value());
    auto rep = verify_thm_a(kA2, kI24, *phi, 4);
    EXPECT_TRUE(rep.ok()) << rep.counterexample;
    EXPECT_EQ(rep.a_m, (std::vector<long long>{1, 2, 2, 1, 0}));
    EXPECT_EQ(rep.a_n, (std::vector<long long>{1, 2, 2, 2, 1}));
}

TEST(ThmA, IdentityMap) {
    auto m = triangle(2, 3, 7);
    GeneratorMap id{{0, 1, 2}};
    auto rep = verify_thm_a(m, m, id, 5);
    EXPECT_TRUE(rep.ok());
    EXPECT_EQ(rep.a_m, rep.a_n);
}

TEST(ThmA, TriangleGrowth) {
    auto m = triangle(2, 3, 7);
    auto n = triangle(3, 3, 7);
    auto phi = leq_order(m, n);
    ASSERT_TRUE(phi.has_value());
    auto rep = verify_thm_a(m, n, *phi, 6);
    EXPECT_TRUE(rep.ok()) << rep.counterexample;
}

TEST(ThmA, NonRealizingPhiReported) {
    GeneratorMap bad{{0, 1}};
    auto rep = verify_thm_a(kI24, kA2, bad, 3);
    EXPECT_FALSE(rep.phi_realizes);
    EXPECT_FALSE(rep.ok());
}

TEST(MakeMutable, Fig1Tuple) {
    auto m = fig1();
    auto tup = make_mutable(m, {0, 1, 2, 3}, {4}, {1, 2, 0, 3});
    EXPECT_EQ(tup.t, (GeneratorSubset{6}));
    EXPECT_EQ(tup.z, (GeneratorSubset{5}));
}

TEST(MakeMutable, Fig1AlternativeY) {
    // Y = {s7}: the partition derives differently and the tuple is valid
    auto m = fig1();
    auto tup = make_mutable(m, {0, 1, 2, 3}, {6}, {1, 2, 0, 3});
    EXPECT_EQ(tup.t, (GeneratorSubset{4}));
    EXPECT_EQ(tup.z, (GeneratorSubset{5}));
}

TEST(MakeMutable, IdentitySigmaAlwaysValidWhenPartitionExists) {
    auto m = fig1();
    auto tup = make_mutable(m, {0, 1, 2, 3}, {4}, {0, 1, 2, 3});
    EXPECT_EQ(mutate(tup), m);
}

TEST(MakeMutable, RejectionsCiteConditions) {
    auto m = fig1();
    // mixed row: X = {0,1,2}, Y = {4}: generator s7 has m(6,4) = inf but the
    // leftover s4 (index 3) has m(3,4) = 3 finite, s6 has m(5,4) = 2; mix
    // comes from choosing Y = {4, 6}: s6 row has m(5,4)=2 finite, m(5,6)=3
    // finite; s4 row: m(3,4)=3, m(3,6)=2 both finite; fine. Use Y={4},
    // X={0,1,3} instead: sigma must be an automorphism.
    // swapping s1 with s4 is not label preserving on M_X
    EXPECT_THROW(make_mutable(m, {0, 1, 2, 3}, {4}, {3, 1, 2, 0}), validation_error);
    // X and Y must be disjoint and nonempty
    EXPECT_THROW(make_mutable(m, {0, 1}, {1, 4}, {1, 0}), validation_error);
    EXPECT_THROW(make_mutable(m, {}, {4}, {}), validation_error);
    try {
        // condition (iii) violation: X = {0,1,2,3} with sigma = (s1 s2) swap:
        // z = s6 has equal labels, but s7 (in T) is fine; build a matrix where
        // z-to-X labels differ under sigma
        auto bad = CoxeterMatrix::from_upper_triangle(
            4, {3, 2, 4, /*m23*/ 2, /*m24*/ 2, /*m34*/ 3});
        // X = {0,1} (A2), Y = {3}, z = 2 with m(2,0)=2, m(2,1)=... build directly
        auto mm = CoxeterMatrix::from_upper_triangle(4, {3, 2, 3, 4, 2, 3});
        // mm: m01=3 (X=A2), m02=2, m03=3, m12=4, m13=2, m23=3
        // outside X u Y (Y={3}): z=2 (m23=3 finite); condition (iii):
        // m(2, sigma(0)) = m(2,1) = 4 vs m(2,0) = 2: must throw
        make_mutable(mm, {0, 1}, {3}, {1, 0});
        FAIL() << "expected condition (iii) failure";
        (void)bad;
    } catch (const validation_error& e) {
        EXPECT_NE(std::string(e.what()).find("(iii)"), std::string::npos);
    }
    // mixed finite/infinite row toward Y
    try {
        const Label I = label_infinity;
        auto mm = CoxeterMatrix::from_upper_triangle(4, {3, 2, 2, 3, I, 3});
        // m01=3 X, m12=3: y=1? choose X={0}, wait sigma nontrivial needs |X|>=2.
        // X={0,1} A2, Y={2}: s3 row toward Y: m(3,2)=3 finite... rebuild:
        // entries: m01=3, m02=2, m03=2, m12=3, m13=inf, m23=3
        // X={0,1}, Y={2}: outside = {3}: m(3,2)=3 finite -> Z; z-to-X: m(3,0)=2,
        // m(3,1)=inf: condition (iii) under swap: differs -> (iii) error.
        make_mutable(mm, {0, 1}, {2}, {1, 0});
        FAIL() << "expected a validation error";
    } catch (const validation_error&) {
    }
    try {
        const Label I = label_infinity;
        // m01=3 (X=A2); Y={2,3}: s5th... rank 5: outside {4}: m(4,2)=inf,
        // m(4,3)=3: mixed row must be named
        std::vector<Label> u{3, 2, 2, 2, /*m12*/ 3, /*m13*/ 2, /*m14*/ 2,
                             /*m23*/ 3, /*m24*/ I, /*m34*/ 3};
        auto mm = CoxeterMatrix::from_upper_triangle(5, u);
        make_mutable(mm, {0, 1}, {2, 3}, {1, 0});
        FAIL() << "expected mixed-row rejection";
    } catch (const validation_error& e) {
        EXPECT_NE(std::string(e.what()).find("mixed finite/infinite"), std::string::npos);
    }
}

TEST(Mutate, Fig1RowChange) {
    auto m = fig1();
    auto tup = make_mutable(m, {0, 1, 2, 3}, {4}, {1, 2, 0, 3});
    auto n = mutate(tup);
    // row s5 against s1..s4 becomes (3,2,3,3) from (3,3,2,3)
    EXPECT_EQ(m(4, 0), 3);
    EXPECT_EQ(m(4, 1), 3);
    EXPECT_EQ(m(4, 2), 2);
    EXPECT_EQ(m(4, 3), 3);
    EXPECT_EQ(n(4, 0), 3);
    EXPECT_EQ(n(4, 1), 2);
    EXPECT_EQ(n(4, 2), 3);
    EXPECT_EQ(n(4, 3), 3);
    // X x X entries unchanged (sigma preserves M_X), everything else too
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j)
            if (i != 4 && j != 4) EXPECT_EQ(n(i, j), m(i, j));
}

TEST(Mutate, InverseRoundTrip) {
    auto m = fig1();
    auto tup = make_mutable(m, {0, 1, 2, 3}, {4}, {1, 2, 0, 3});
    EXPECT_EQ(mutate(inverse_tuple(tup)), m);
}

TEST(EnumerateMutable, A2HasNone) {
    EXPECT_TRUE(enumerate_mutable(kA2).empty());
}

TEST(EnumerateMutable, Fig1ContainsPaperTuple) {
    auto m = fig1();
    auto tuples = enumerate_mutable(m);
    bool found = false;
    for (const auto& t : tuples)
        if (t.x == GeneratorSubset{0, 1, 2, 3} && t.y == GeneratorSubset{4} &&
            t.sigma == std::vector<int>{1, 2, 0, 3})
            found = true;
    EXPECT_TRUE(found);
    // inverse round-trip holds on every enumerated tuple
    for (const auto& t : tuples) EXPECT_EQ(mutate(inverse_tuple(t)), m);
}

TEST(IsTwist, Fig1IsProper) {
    auto tup = make_mutable(fig1(), {0, 1, 2, 3}, {4}, {1, 2, 0, 3});
    EXPECT_FALSE(is_twist(tup));
}

TEST(IsTwist, ClassicalTwistFixture) {
    // X = {0,1} of type A2, sigma = swap (the opposition involution), Y = {2}
    // attached to X with distinct finite labels, z = 3 attached to X by 2's
    std::vector<Label> u{3, /*m02*/ 3, /*m03*/ 2, /*m12*/ 2, /*m13*/ 2, /*m23*/ 5};
    auto m = CoxeterMatrix::from_upper_triangle(4, u);
    auto tup = make_mutable(m, {0, 1}, {2}, {1, 0});
    EXPECT_EQ(tup.z, (GeneratorSubset{3}));
    EXPECT_TRUE(is_twist(tup));
    EXPECT_TRUE(verify_thm_c(tup).ok());
    // identity sigma is not the opposition of A2
    auto id_tup = make_mutable(m, {0, 1}, {2}, {0, 1});
    EXPECT_FALSE(is_twist(id_tup));
}

TEST(OppositionInvolution, ValidatedByLongestElementConjugation) {
    // for small finite types, conjugation by the BFS-computed longest element
    // must match the implemented involution
    std::vector<CoxeterMatrix> cases{
        kA2,                                       // A2: swap
        path({3, 3}),                              // A3: reversal
        path({3, 3, 3}),                           // A4
        path({3, 4}),                              // B3: identity
        path({5, 3}),                              // H3: identity
        CoxeterMatrix::from_upper_triangle(2, {5}),  // I2(5): swap
        CoxeterMatrix::from_upper_triangle(2, {6}),  // I2(6): identity
        CoxeterMatrix::from_upper_triangle(4, {3, 3, 3, 2, 2, 2}),  // D4: identity
    };
    for (const auto& m : cases) {
        // BFS to the end of the group
        auto sd = spheres(m, 64, /*keep_normal_forms=*/true);
        int top = 0;
        for (int k = 64; k >= 0; --k)
            if (sd.spheres[k] > 0) {
                top = k;
                break;
            }
        ASSERT_EQ(sd.spheres[top], 1) << "longest element must be unique";
        Word w0 = sd.level_nfs[top][0];
        std::vector<int> conj(m.rank());
        for (int g = 0; g < m.rank(); ++g) {
            Word q = w0;
            q.push_back(static_cast<char>(g));
            q += w0;
            auto nf = normal_form(m, q);
            ASSERT_EQ(nf.length(), 1) << "conjugation by w0 must permute generators";
            conj[g] = static_cast<unsigned char>(nf.word[0]);
        }
        EXPECT_EQ(conj, detail::opposition_involution(m)) << serialize(m);
    }
}

TEST(ThmC, Fig1Passes) {
    auto tup = make_mutable(fig1(), {0, 1, 2, 3}, {4}, {1, 2, 0, 3});
    auto rep = verify_thm_c(tup);
    EXPECT_TRUE(rep.ok()) << rep.counterexample;
}

TEST(ThmC, IdentitySigmaTrivial) {
    auto tup = make_mutable(fig1(), {0, 1, 2, 3}, {4}, {0, 1, 2, 3});
    EXPECT_TRUE(verify_thm_c(tup).ok());
}

TEST(ThmC, RandomMatricesAllTuples) {
    std::mt19937 rng(42);
    const Label choices[] = {2, 2, 3, 4, label_infinity};
    int tuples_checked = 0;
    for (int trial = 0; trial < 12; ++trial) {
        int n = 4 + static_cast<int>(rng() % 2);
        std::vector<Label> u(n * (n - 1) / 2);
        for (auto& l : u) l = choices[rng() % 5];
        auto m = CoxeterMatrix::from_upper_triangle(n, u);
        for (const auto& tup : enumerate_mutable(m)) {
            auto rep = verify_thm_c(tup);
            EXPECT_TRUE(rep.ok()) << serialize(m) << rep.counterexample;
            ++tuples_checked;
        }
    }
    // the random family genuinely exercises the theorem
    EXPECT_GT(tuples_checked, 20);
}

TEST(ThmC, EffectiveMutationViaFig1) {
    // the paper's tuple is a proper mutation; whether it is effective is
    // reported data, but the mutated matrix must at least verify Thm C and
    // have the same Poincare series
    auto m = fig1();
    auto tup = make_mutable(m, {0, 1, 2, 3}, {4}, {1, 2, 0, 3});
    auto n = mutate(tup);
    EXPECT_EQ(poincare(m), poincare(n));
}

TEST(MutationClass, BoundedSearch) {
    auto cls = mutation_class(fig1(), 1);
    EXPECT_GE(cls.size(), 1u);
    // every member has the same Poincare series
    auto p0 = poincare(cls[0]);
    for (const auto& m : cls) EXPECT_EQ(poincare(m), p0);
}
