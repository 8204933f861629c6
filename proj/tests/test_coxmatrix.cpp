#include "coxgrow/coxmatrix.hpp"

#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"

using namespace coxgrow;
using coxgrow::testing::e10;
using coxgrow::testing::fig1;
using coxgrow::testing::triangle;

TEST(ParseMatrix, Basics) {
    auto m = parse_matrix("coxrank 2\n1 3\n3 1\n");
    EXPECT_EQ(m.rank(), 2);
    EXPECT_EQ(m(0, 1), 3);

    auto d = parse_matrix("coxrank 2\n1 inf\ninf 1\n");
    EXPECT_EQ(d(0, 1), label_infinity);

    EXPECT_THROW(parse_matrix("coxrank 2\n1 3\n4 1\n"), validation_error);  // asymmetric
    EXPECT_THROW(parse_matrix("coxrank 2\n2 3\n3 1\n"), validation_error);  // bad diagonal
    EXPECT_THROW(parse_matrix("coxrank 2\n1 1\n1 1\n"), validation_error);  // off-diag < 2
    EXPECT_THROW(parse_matrix("coxrank 0\n"), parse_error);
    EXPECT_THROW(parse_matrix("coxrank 2\n1 x\n3 1\n"), parse_error);
    EXPECT_THROW(parse_matrix(""), parse_error);
    EXPECT_THROW(parse_matrix("coxrank 2\n1 3 4\n3 1\n"), parse_error);
}

TEST(ParseMatrix, CommentsNamesRoundTrip) {
    std::string text =
        "# a triangle\ncoxrank 3\nnames a b c\n\n1 2 3\n2 1 7  # row two\n3 7 1\n";
    auto m = parse_matrix(text);
    EXPECT_EQ(m.rank(), 3);
    EXPECT_EQ(m.names()[2], "c");
    // parse(serialize) is the identity, and serialize is deterministic
    auto s = serialize(m);
    EXPECT_EQ(parse_matrix(s), m);
    EXPECT_EQ(serialize(parse_matrix(s)), s);
}

TEST(ParseMatrix, LineNumbersReported) {
    try {
        parse_matrix("coxrank 2\n1 3\n3 oops\n");
        FAIL() << "expected parse_error";
    } catch (const parse_error& e) {
        EXPECT_EQ(e.line, 3);
        EXPECT_EQ(e.column, 2);
    }
}

TEST(Restrict, InducedMatrix) {
    auto t = triangle(2, 3, 7);
    auto sub = restrict(t, {0, 1});
    EXPECT_EQ(sub.rank(), 2);
    EXPECT_EQ(sub(0, 1), 2);
    // full set is the identity
    EXPECT_EQ(restrict(t, {0, 1, 2}), t);
    // empty subset gives the rank-0 matrix (allowed internally)
    EXPECT_EQ(restrict(t, {}).rank(), 0);
    EXPECT_THROW(restrict(t, {0, 3}), validation_error);
    EXPECT_THROW(restrict(t, {1, 0}), validation_error);
}

TEST(Restrict, Transitive) {
    auto m = fig1();
    std::mt19937 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        GeneratorSubset J;
        for (int i = 0; i < m.rank(); ++i)
            if (rng() % 2) J.push_back(i);
        GeneratorSubset I_in_J, I;
        for (size_t a = 0; a < J.size(); ++a)
            if (rng() % 2) {
                I_in_J.push_back(static_cast<int>(a));
                I.push_back(J[a]);
            }
        EXPECT_EQ(restrict(restrict(m, J), I_in_J), restrict(m, I));
    }
}

TEST(Components, Partition) {
    // I2(2): two commuting generators, no edge
    auto c = components(CoxeterMatrix::from_upper_triangle(2, {2}));
    EXPECT_EQ(c.size(), 2u);
    // A2
    EXPECT_EQ(components(CoxeterMatrix::from_upper_triangle(2, {3})).size(), 1u);
    // m12=3, m34=5, rest 2
    auto m = CoxeterMatrix::from_upper_triangle(4, {3, 2, 2, 2, 2, 5});
    auto comps = components(m);
    ASSERT_EQ(comps.size(), 2u);
    EXPECT_EQ(comps[0], (GeneratorSubset{0, 1}));
    EXPECT_EQ(comps[1], (GeneratorSubset{2, 3}));
    EXPECT_TRUE(is_connected(e10()));
}

TEST(Isomorphic, Basics) {
    auto a2 = CoxeterMatrix::from_upper_triangle(2, {3});
    auto i24 = CoxeterMatrix::from_upper_triangle(2, {4});
    EXPECT_TRUE(coxeter_isomorphic(a2, a2).has_value());
    EXPECT_FALSE(coxeter_isomorphic(a2, i24).has_value());
    auto m = triangle(2, 3, 7);
    auto n = triangle(7, 3, 2);  // same multiset, relabeled
    auto iso = coxeter_isomorphic(m, n);
    ASSERT_TRUE(iso.has_value());
    EXPECT_TRUE(is_label_preserving(m, n, *iso));
}

TEST(Isomorphic, EquivalenceOnRandoms) {
    std::mt19937 rng(9);
    std::uniform_int_distribution<int> lab(2, 5);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 3 + static_cast<int>(rng() % 4);
        std::vector<Label> u;
        for (int i = 0; i < n * (n - 1) / 2; ++i) u.push_back(lab(rng));
        auto m = CoxeterMatrix::from_upper_triangle(n, u);
        // reflexive
        auto self = coxeter_isomorphic(m, m);
        ASSERT_TRUE(self.has_value());
        // permuted copy: present both ways, and the witness checks out
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<Label> pe(n * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) pe[i * n + j] = m(perm[i], perm[j]);
        CoxeterMatrix p(n, pe);
        auto fwd = coxeter_isomorphic(m, p);
        auto bwd = coxeter_isomorphic(p, m);
        ASSERT_TRUE(fwd.has_value());
        ASSERT_TRUE(bwd.has_value());
        EXPECT_TRUE(is_label_preserving(m, p, *fwd));
        EXPECT_TRUE(is_label_preserving(p, m, *bwd));
        // the inverse of a witness is a witness
        EXPECT_TRUE(is_label_preserving(p, m, inverse_of(*fwd, m.rank())));
    }
}

TEST(Automorphisms, SmallCases) {
    auto a2 = CoxeterMatrix::from_upper_triangle(2, {3});
    EXPECT_EQ(automorphisms(a2).size(), 2u);  // identity and swap
    EXPECT_EQ(automorphisms(triangle(2, 3, 7)).size(), 1u);
    // equilateral all-3 triangle: full S3
    EXPECT_EQ(automorphisms(triangle(3, 3, 3)).size(), 6u);
}

TEST(Automorphisms, GroupClosure) {
    for (const auto& m : {fig1(), e10(), triangle(3, 3, 4)}) {
        auto autos = automorphisms(m);
        // contains identity
        bool has_id = false;
        for (const auto& a : autos) {
            std::vector<int> id(m.rank());
            std::iota(id.begin(), id.end(), 0);
            if (a.image == id) has_id = true;
            EXPECT_TRUE(is_label_preserving(m, m, a));
        }
        EXPECT_TRUE(has_id);
        // closed under composition and inverse
        auto member = [&](const GeneratorMap& g) {
            return std::any_of(autos.begin(), autos.end(),
                               [&](const GeneratorMap& h) { return h.image == g.image; });
        };
        for (const auto& a : autos) {
            EXPECT_TRUE(member(inverse_of(a, m.rank())));
            for (const auto& b : autos) EXPECT_TRUE(member(compose(a, b)));
        }
    }
}

TEST(Automorphisms, FixtureX4HasThreeCycle) {
    // the X part of the mutation example: a 3-triangle s1 s2 s3 with s4
    // joined to each by 2's
    auto mx = restrict(fig1(), {0, 1, 2, 3});
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) EXPECT_EQ(mx(i, j), 3);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(mx(i, 3), 2);
    auto autos = automorphisms(mx);
    EXPECT_EQ(autos.size(), 6u);  // S3 on the triangle
    bool has_cycle = std::any_of(autos.begin(), autos.end(), [](const GeneratorMap& a) {
        return a.image == std::vector<int>{1, 2, 0, 3};
    });
    EXPECT_TRUE(has_cycle);
}
