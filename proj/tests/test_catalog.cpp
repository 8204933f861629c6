#include "coxgrow/catalog.hpp"

#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace coxgrow;

namespace {
const Catalog& cat() {
    static Catalog c = load_catalog(COXGROW_CATALOG_DIR);
    return c;
}
}  // namespace

TEST(Catalog, LoadsAndValidates) {
    const auto& c = cat();
    EXPECT_GE(c.entries.size(), 8u);
    EXPECT_EQ(c.m_tau.degree(), 127);
    EXPECT_EQ(c.m_tau.leading(), 1);
    EXPECT_EQ(c.m_tau.constant_term(), -1);
    const auto& e10 = c.by_id("e10");
    EXPECT_EQ(e10.matrix.rank(), 10);
    EXPECT_TRUE(coxeter_isomorphic(e10.matrix, coxgrow::testing::e10()).has_value());
    EXPECT_EQ(e10.provenance, Provenance::Standard);
    EXPECT_EQ(c.by_id("reduction-M").matrix.rank(), 5);
    EXPECT_EQ(c.by_id("reduction-M").provenance, Provenance::Paper);
    EXPECT_THROW(c.by_id("nope"), validation_error);
}

TEST(Catalog, RoundTripsByteIdentically) {
    for (const auto& e : cat().entries)
        EXPECT_EQ(serialize(parse_matrix(e.raw_bytes)), e.raw_bytes) << e.id;
}

TEST(Catalog, ExpectedClassificationsHold) {
    for (const auto& e : cat().entries) {
        if (!e.expected.classification) continue;
        EXPECT_EQ(classify(e.matrix).kind, *e.expected.classification) << e.id;
    }
}

TEST(Catalog, SigmaParsing) {
    GeneratorSubset x{0, 1, 2, 3};
    auto s = parse_sigma("1>2,2>3,3>1", x);
    EXPECT_EQ(s, (std::vector<int>{1, 2, 0, 3}));
    EXPECT_THROW(parse_sigma("1>5", x), validation_error);
    EXPECT_EQ(parse_generator_list("5,1,3", 7), (GeneratorSubset{0, 2, 4}));
    EXPECT_THROW(parse_generator_list("9", 7), validation_error);
}

TEST(Catalog, VerifyTauPasses) {
    auto rep = verify_tau(cat());
    EXPECT_TRUE(rep.denominator_matches) << rep.coefficient_diff;
    EXPECT_TRUE(rep.rate_digits_ok)
        << to_string(rep.omega_lo) << " .. " << to_string(rep.omega_hi);
    EXPECT_TRUE(rep.perron_ok);
    EXPECT_TRUE(rep.minpoly.divisibility);
    EXPECT_TRUE(rep.minpoly.bracket_contains);
    EXPECT_TRUE(rep.ok());
}

TEST(Catalog, VerifyTauNegativeControl) {
    // one coefficient off: divisibility fails and the diff names an exponent
    auto terms = cat().m_tau;
    std::vector<BigInt> c = terms.coeffs();
    c[60] += 1;
    auto rep = verify_tau(cat().by_id("e10").matrix, IntPolynomial(std::move(c)));
    EXPECT_FALSE(rep.denominator_matches);
    EXPECT_NE(rep.coefficient_diff.find("t^"), std::string::npos);
    EXPECT_FALSE(rep.ok());
}

TEST(Catalog, VerifyExamplesPasses) {
    auto rep = verify_examples(cat());
    EXPECT_TRUE(rep.reduction_m_ok);
    EXPECT_TRUE(rep.reduction_mp_ok);
    EXPECT_TRUE(rep.plastic_factor_ok);
    EXPECT_TRUE(rep.fig1_thmc_ok);
    EXPECT_TRUE(rep.fig1_not_twist);
}

TEST(Catalog, VerifyGapPartialRange) {
    auto rep = verify_gap(cat(), 4, 4);
    EXPECT_TRUE(rep.partial);
    EXPECT_EQ(rep.hyperbolic_count, 32u);
    EXPECT_TRUE(rep.gap_holds);
    EXPECT_TRUE(rep.ok());
}

TEST(Catalog, CorruptManifestDetected) {
    EXPECT_THROW(load_catalog("/nonexistent-dir"), validation_error);
}
