#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "coxgrow/growth.hpp"
#include "coxgrow/structure.hpp"

namespace coxgrow {

enum class Provenance { Paper, Derived, Standard };

inline std::string provenance_name(Provenance p) {
    switch (p) {
        case Provenance::Paper: return "paper";
        case Provenance::Derived: return "derived";
        case Provenance::Standard: return "standard";
    }
    return "?";
}

struct MutationSpec {
    GeneratorSubset x, y;      // 0-based
    std::vector<int> sigma;    // position-based on x
    bool expect_twist = false;
};

struct CatalogExpected {
    std::optional<Kind> classification;
    std::optional<BigRational> rate;
    std::optional<BigRational> rate_tol;
    std::optional<IntPolynomial> den_reciprocal_factor;
    std::optional<MutationSpec> mutation;
    std::string notes;
};

struct CatalogEntry {
    std::string id;
    std::string file;
    CoxeterMatrix matrix;
    Provenance provenance = Provenance::Derived;
    CatalogExpected expected;
    std::string raw_bytes;  // exact file content, for the round-trip invariant
};

struct Catalog {
    std::vector<CatalogEntry> entries;
    IntPolynomial m_tau;

    const CatalogEntry& by_id(const std::string& id) const {
        for (const auto& e : entries)
            if (e.id == id) return e;
        throw validation_error("no catalog entry '" + id + "'");
    }
};

// "1,2,4" with 1-based generator numbers -> sorted 0-based subset
inline GeneratorSubset parse_generator_list(const std::string& text, int rank) {
    GeneratorSubset out;
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok.empty()) continue;
        int v = std::stoi(tok);
        if (v < 1 || v > rank) throw validation_error("generator number out of range: " + tok);
        out.push_back(v - 1);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// "1>2,2>3,3>1" (1-based, unmentioned generators fixed) -> positions on x
inline std::vector<int> parse_sigma(const std::string& text, const GeneratorSubset& x) {
    std::map<int, int> moves;  // 0-based gen -> gen
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok.empty()) continue;
        auto gt = tok.find('>');
        if (gt == std::string::npos) throw validation_error("bad sigma item '" + tok + "'");
        moves[std::stoi(tok.substr(0, gt)) - 1] = std::stoi(tok.substr(gt + 1)) - 1;
    }
    std::vector<int> sigma(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        int g = x[i];
        int img = moves.count(g) ? moves[g] : g;
        auto it = std::lower_bound(x.begin(), x.end(), img);
        if (it == x.end() || *it != img)
            throw validation_error("sigma image " + std::to_string(img + 1) + " is not in X");
        sigma[i] = static_cast<int>(it - x.begin());
    }
    return sigma;
}

inline IntPolynomial poly_from_terms_json(const nlohmann::json& terms) {
    std::map<int, BigInt> t;
    for (auto it = terms.begin(); it != terms.end(); ++it)
        t[std::stoi(it.key())] = BigInt(it.value().get<long>());
    return IntPolynomial::from_terms(t);
}

inline Catalog load_catalog(const std::string& dir) {
    auto slurp = [&](const std::string& name) {
        std::ifstream in(dir + "/" + name, std::ios::binary);
        if (!in) throw validation_error("cannot open catalog file " + dir + "/" + name);
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    };

    nlohmann::json manifest;
    try {
        manifest = nlohmann::json::parse(slurp("manifest.json"));
    } catch (const nlohmann::json::exception& e) {
        throw validation_error(std::string("corrupt catalog manifest: ") + e.what());
    }

    Catalog cat;
    for (const auto& j : manifest.at("entries")) {
        CatalogEntry e;
        e.id = j.at("id").get<std::string>();
        e.file = j.at("file").get<std::string>();
        e.raw_bytes = slurp(e.file);
        e.matrix = parse_matrix(e.raw_bytes);
        std::string prov = j.at("provenance").get<std::string>();
        e.provenance = prov == "paper"      ? Provenance::Paper
                       : prov == "standard" ? Provenance::Standard
                                            : Provenance::Derived;
        if (j.contains("expected")) {
            const auto& x = j.at("expected");
            if (x.contains("classification")) {
                std::string k = x.at("classification").get<std::string>();
                e.expected.classification = k == "spherical"    ? Kind::Spherical
                                            : k == "affine"     ? Kind::Affine
                                            : k == "hyperbolic" ? Kind::Hyperbolic
                                                                : Kind::Other;
            }
            if (x.contains("rate_digits"))
                e.expected.rate = parse_rational(x.at("rate_digits").get<std::string>());
            if (x.contains("rate_tol"))
                e.expected.rate_tol = parse_rational(x.at("rate_tol").get<std::string>());
            if (x.contains("den_reciprocal_factor")) {
                std::vector<BigInt> c;
                for (const auto& v : x.at("den_reciprocal_factor")) c.emplace_back(v.get<long>());
                e.expected.den_reciprocal_factor = IntPolynomial(std::move(c));
            }
            if (x.contains("mutation")) {
                const auto& mu = x.at("mutation");
                MutationSpec ms;
                std::string xs, ys;
                for (const auto& v : mu.at("x")) ms.x.push_back(v.get<int>() - 1);
                for (const auto& v : mu.at("y")) ms.y.push_back(v.get<int>() - 1);
                std::sort(ms.x.begin(), ms.x.end());
                std::sort(ms.y.begin(), ms.y.end());
                ms.sigma = parse_sigma(mu.at("sigma").get<std::string>(), ms.x);
                ms.expect_twist = mu.value("twist", false);
                e.expected.mutation = std::move(ms);
            }
            if (x.contains("notes")) e.expected.notes = x.at("notes").get<std::string>();
        }
        cat.entries.push_back(std::move(e));
    }

    const auto& mt = manifest.at("m_tau");
    cat.m_tau = poly_from_terms_json(mt.at("terms"));
    if (cat.m_tau.degree() != mt.at("degree").get<int>())
        throw validation_error("corrupt m_tau fixture: degree mismatch");
    BigInt at2(mt.at("checksum_eval_at_2").get<std::string>());
    BigInt at1(mt.at("checksum_eval_at_1").get<std::string>());
    if (cat.m_tau.eval_int(BigInt(2)) != at2 || cat.m_tau.eval_int(BigInt(1)) != at1)
        throw validation_error("corrupt m_tau fixture: checksum mismatch");
    return cat;
}

// ---------------------------------------------------------------------------
// Verification pipelines.
// ---------------------------------------------------------------------------

struct TauReport {
    bool denominator_matches = false;
    std::string coefficient_diff;  // exponents where the comparison failed
    bool rate_digits_ok = false;
    BigRational omega_lo{0}, omega_hi{0};
    bool perron_ok = false;
    MinimalPolynomialReport minpoly;
    bool ok() const {
        return denominator_matches && rate_digits_ok && perron_ok && minpoly.core_passed();
    }
};

// Checks the E10 series denominator against (t-1) * reciprocal(m_tau), the
// printed digits of tau, the Perron certificate and the minimal-polynomial
// evidence. `digits_tol` bounds the distance of the certified bracket from
// the printed decimal.
inline TauReport verify_tau(const CoxeterMatrix& e10_matrix, const IntPolynomial& m_tau,
                            const BigRational& digits = parse_rational("1.138078743"),
                            const BigRational& digits_tol = BigRational(1, 1000000000L),
                            const BigRational& eps = BigRational(1, 1000000000000L)) {
    TauReport rep;
    RationalFunction p = poincare(e10_matrix);

    IntPolynomial expected = IntPolynomial{-1, 1} * m_tau.reciprocal();
    if (sign_of(expected.leading()) < 0) expected = -expected;
    if (p.den() == expected) {
        rep.denominator_matches = true;
    } else {
        std::ostringstream diff;
        int top = std::max(p.den().degree(), expected.degree());
        for (int k = 0; k <= top; ++k)
            if (p.den().coeff(k) != expected.coeff(k))
                diff << " t^" << k << ": got " << p.den().coeff(k).get_str() << ", want "
                     << expected.coeff(k).get_str();
        rep.coefficient_diff = diff.str();
    }

    GrowthRate rate = growth_rate(e10_matrix, eps);
    if (rate.kind == RateKind::Algebraic) {
        rep.omega_lo = rate.omega_lo;
        rep.omega_hi = rate.omega_hi;
        rep.rate_digits_ok = abs(rate.omega_lo - digits) <= digits_tol &&
                             abs(rate.omega_hi - digits) <= digits_tol &&
                             rate.omega_hi - rate.omega_lo <= digits_tol;
    }

    rep.minpoly = minimal_polynomial_check(e10_matrix, m_tau);

    if (rate.kind == RateKind::Algebraic) {
        auto brackets =
            isolate_real_roots(m_tau, rate.omega_lo - eps, rate.omega_hi + eps);
        if (brackets.size() == 1)
            rep.perron_ok = perron_verify(m_tau, refine(brackets[0], eps));
    }
    return rep;
}

inline TauReport verify_tau(const Catalog& cat) {
    return verify_tau(cat.by_id("e10").matrix, cat.m_tau);
}

struct RateRow {
    std::string label;
    int rank = 0;
    BigRational omega_lo{0}, omega_hi{0};
};

struct GapReport {
    size_t hyperbolic_count = 0;   // expected 72 on the full range
    size_t minimal_count = 0;      // expected 35
    size_t total_minimal = 0;      // expected 38 with the triangles
    bool counts_ok = false;
    bool partial = false;          // rank range was restricted
    bool min_at_e10 = false;
    bool gap_holds = false;        // every rate >= the tau bracket's lower end
    bool lehmer_ok = false;        // <2,3,7> close to 1.17628
    std::vector<RateRow> rates;
    bool ok() const {
        return counts_ok && (partial || (min_at_e10 && gap_holds && lehmer_ok));
    }
};

inline GapReport verify_gap(const Catalog& cat, int min_rank = 4, int max_rank = 10,
                            const BigRational& eps = BigRational(1, 1000000000000L)) {
    GapReport rep;
    rep.partial = !(min_rank == 4 && max_rank == 10);
    auto classes = enumerate_hyperbolic(min_rank, max_rank);
    rep.hyperbolic_count = classes.size();
    auto minimal = minimal_elements(classes);
    rep.minimal_count = minimal.size();

    std::vector<std::pair<std::string, CoxeterMatrix>> family;
    for (const char* id : {"triangle-2-3-7", "triangle-3-3-4", "triangle-2-4-5"})
        family.emplace_back(id, cat.by_id(id).matrix);
    for (size_t i = 0; i < minimal.size(); ++i)
        family.emplace_back("min-" + std::to_string(minimal[i].rank()) + "-" + std::to_string(i),
                            minimal[i]);
    rep.total_minimal = family.size();
    rep.counts_ok = rep.partial
                        ? rep.hyperbolic_count > 0
                        : (rep.hyperbolic_count == 72 && rep.minimal_count == 35 &&
                           rep.total_minimal == 38);

    // tau reference bracket from the catalog's E10
    const CoxeterMatrix& e10m = cat.by_id("e10").matrix;
    GrowthRate tau = growth_rate(e10m, eps);
    if (tau.kind != RateKind::Algebraic)
        throw verify_error("internal: E10 rate is not algebraic");

    std::optional<size_t> argmin;
    std::vector<char> is_e10_class(family.size(), 0);
    for (size_t i = 0; i < family.size(); ++i) {
        GrowthRate r = growth_rate(family[i].second, eps);
        if (r.kind != RateKind::Algebraic)
            throw verify_error("internal: a minimal system without exponential growth");
        rep.rates.push_back({family[i].first, family[i].second.rank(), r.omega_lo, r.omega_hi});
        is_e10_class[i] = family[i].second.rank() == 10 &&
                          coxeter_isomorphic(family[i].second, e10m).has_value();
        if (!argmin || r.omega_lo < rep.rates[*argmin].omega_lo) argmin = i;
    }
    // every rate is certified >= the tau bracket's lower endpoint, and every
    // class other than E10's lies certifiably above the whole tau bracket
    rep.gap_holds = true;
    rep.min_at_e10 = rep.partial;  // only assertable when E10 is in range
    for (size_t i = 0; i < family.size(); ++i) {
        if (rep.rates[i].omega_lo < tau.omega_lo) rep.gap_holds = false;
        if (!is_e10_class[i] && rep.rates[i].omega_lo <= tau.omega_hi) rep.gap_holds = false;
    }
    if (!rep.partial && argmin) rep.min_at_e10 = is_e10_class[*argmin];
    for (const auto& row : rep.rates)
        if (row.label == "triangle-2-3-7")
            rep.lehmer_ok =
                abs((row.omega_lo + row.omega_hi) / 2 - parse_rational("1.17628")) <=
                BigRational(1, 1000);
    return rep;
}

struct ExamplesReport {
    bool reduction_m_ok = false;
    bool reduction_mp_ok = false;
    bool plastic_factor_ok = false;
    bool fig1_thmc_ok = false;
    bool fig1_not_twist = false;
    std::vector<RateRow> rates;
    bool ok() const {
        return reduction_m_ok && reduction_mp_ok && plastic_factor_ok && fig1_thmc_ok &&
               fig1_not_twist;
    }
};

inline ExamplesReport verify_examples(const Catalog& cat) {
    ExamplesReport rep;
    auto rate_close = [&](const CatalogEntry& e) {
        GrowthRate r = growth_rate(e.matrix);
        rep.rates.push_back({e.id, e.matrix.rank(), r.omega_lo, r.omega_hi});
        if (r.kind != RateKind::Algebraic || !e.expected.rate || !e.expected.rate_tol)
            return false;
        return abs(r.omega_point() - *e.expected.rate) <= *e.expected.rate_tol;
    };
    rep.reduction_m_ok = rate_close(cat.by_id("reduction-M"));
    rep.reduction_mp_ok = rate_close(cat.by_id("reduction-Mprime"));

    const auto& plastic = cat.by_id("triangle-2-3-inf");
    if (plastic.expected.den_reciprocal_factor) {
        RationalFunction p = poincare(plastic.matrix);
        rep.plastic_factor_ok = IntPolynomial::divides(
            plastic.expected.den_reciprocal_factor->reciprocal(), p.den());
    }

    const auto& fig = cat.by_id("fig1");
    if (fig.expected.mutation) {
        const auto& ms = *fig.expected.mutation;
        MutableTuple tup = make_mutable(fig.matrix, ms.x, ms.y, ms.sigma);
        rep.fig1_thmc_ok = verify_thm_c(tup).ok();
        rep.fig1_not_twist = (is_twist(tup) == ms.expect_twist);
    }
    return rep;
}

}  // namespace coxgrow
