#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>

#include "oracles.hpp"
#include "qmod/genus1.hpp"

using namespace qmod;

namespace {

const std::map<std::int64_t, weierstrass_model>& expected_models()
{
    static const std::map<std::int64_t, weierstrass_model> m = {
        {11, {0, -1, 1, -10, -20}}, {14, {1, 0, 1, 4, -6}}, {15, {1, 1, 1, -10, -10}}, {17, {1, -1, 1, -1, -14}},
        {19, {0, 1, 1, -9, -15}},   {20, {0, 1, 0, 4, 4}},  {21, {1, 0, 0, -4, -1}},   {24, {0, -1, 0, -4, 4}},
        {27, {0, 0, 1, 0, -7}},     {32, {0, 0, 0, 4, 0}},  {36, {0, 0, 0, 0, 1}},     {49, {1, -1, 0, -2, -1}},
    };
    return m;
}

/// Printed level-eleven rows: exponent -> coefficient (omitted exponents are zero).
const std::map<std::int64_t, std::map<std::int64_t, long>>& printed_rows()
{
    static const std::map<std::int64_t, std::map<std::int64_t, long>> rows = {
        {2, {{-2, 1}, {-1, 2}, {0, 0}, {1, 5}, {2, 8}, {3, 1}, {4, 7}, {5, -11}}},
        {3, {{-3, 1}, {-2, 0}, {-1, 1}, {0, 0}, {1, 2}, {2, 2}, {3, 16}, {4, 16}, {5, 18}}},
        {4, {{-4, 1}, {-3, 0}, {-2, 0}, {-1, -2}, {0, 0}, {1, 6}, {2, 3}, {3, 18}, {4, -42}}},
        {5, {{-5, 1}, {-4, 0}, {-3, 0}, {-2, 0}, {-1, -1}, {0, 0}, {1, -14}, {2, -16}, {3, 34}}},
    };
    return rows;
}

const std::vector<long> printed_X = {1, 2, 4, 5, 8, 1, 7, -11};      // q^-2 .. q^5
const std::vector<long> printed_Y = {1, 3, 7, 12, 17, 26, 19, 37, -15}; // q^-3 .. q^5

int_series from_window(std::int64_t v, const std::vector<long>& c, std::int64_t precision)
{
    std::vector<integer> z(c.begin(), c.end());
    return int_series(v, precision, std::move(z));
}

std::filesystem::path empty_dir()
{
    const auto d = std::filesystem::temp_directory_path() / "qmod_empty_data";
    std::filesystem::create_directories(d);
    return d;
}

} // namespace

TEST(Newform, LevelElevenPrefix)
{
    const auto f = newform_series(11, 8);
    const std::vector<long> want = {1, -2, -1, 2, 1, 2, -2};
    for (std::int64_t n = 1; n < 8; ++n)
        EXPECT_EQ(f.coeff(n), want[static_cast<std::size_t>(n - 1)]);
    EXPECT_EQ(f.coeff(6), f.coeff(2) * f.coeff(3));
}

TEST(Newform, DomainCheck)
{
    EXPECT_THROW(newform_series(13, 20), domain_error);
    EXPECT_FALSE(is_genus_one_level(13));
    EXPECT_EQ(genus_one_levels.size(), 12u);
}

TEST(Newform, EtaLevelsAreEigenforms)
{
    for (std::int64_t n : genus_one_levels) {
        if (!newform_eta_spec(n))
            continue;
        const auto f = eta_quotient(*newform_eta_spec(n), 201);
        EXPECT_TRUE(eigenform_violations(f, n, 200).empty()) << n;
    }
}

TEST(Newform, PointCountsMatchModels)
{
    // a_p = p + 1 - #E(F_p) for good primes: an oracle independent of the model search.
    for (const auto& [n, model] : expected_models()) {
        const auto f = newform_series(n, 120);
        for (std::int64_t p : primes_up_to(119)) {
            if (n % p == 0)
                continue;
            EXPECT_EQ(f.coeff(p), p + 1 - oracle::count_points(model.coefficients(), p)) << n << " " << p;
        }
    }
}

TEST(Newform, SeedMissingInEmptyDataDir)
{
    EXPECT_THROW(newform_series(17, 50, empty_dir()), seed_missing);
    EXPECT_NO_THROW(newform_series(11, 50, empty_dir()));
}

TEST(Seeds, ParseErrorsAndFixtures)
{
    EXPECT_THROW(parse_seed("{\"level\": 17, \"weight\": 2, \"coeff"), malformed_input);
    EXPECT_THROW(parse_seed("{\"level\": 17, \"weight\": 4, \"coefficients\": [\"1\"]}"), malformed_input);
    EXPECT_THROW(parse_seed("{\"level\": 17, \"weight\": 2, \"coefficients\": [\"x\"]}"), malformed_input);
    EXPECT_THROW(parse_seed("[1, 2]"), malformed_input);
    const std::filesystem::path dir = QMOD_TEST_DATA;
    const auto good = load_seed(dir / "seed_valid_17.json");
    EXPECT_TRUE(eigenform_violations(seed_series(good, 61), 17, 60).empty());
    const auto bad = load_seed(dir / "seed_bad_multiplicative.json");
    const auto f = seed_series(bad, 61);
    EXPECT_FALSE(eigenform_violations(f, 17, 60).empty());
    EXPECT_THROW(check_eigenform(f, 17, 60), eigenform_sanity_failed);
    EXPECT_THROW(load_seed(dir / "seed_truncated.json"), malformed_input);
    EXPECT_THROW(load_seed(dir / "absent.json"), seed_missing);
    EXPECT_THROW(seed_series(good, 200), precision_exceeded);
}

TEST(ModelTable, RoundTrip)
{
    const auto text = format_model_table(expected_models());
    EXPECT_EQ(parse_model_table(text), expected_models());
    EXPECT_THROW(parse_model_table("[{\"level\": 11}]"), malformed_input);
    EXPECT_TRUE(load_model_table(empty_dir() / "models.json").empty());
}

TEST(ModelSearch, LevelEleven)
{
    const auto f = newform_series(11, 64);
    const auto m = find_model(f, 11);
    EXPECT_EQ(m, (weierstrass_model{0, -1, 1, -10, -20}));
    EXPECT_NE(m.discriminant(), 0);
    EXPECT_EQ(m.discriminant(), -161051); // -11^5
}

TEST(ModelSearch, PerturbedNewformHasNoModel)
{
    const auto f = newform_series(11, 64);
    std::vector<integer> c(f.coefficients().begin(), f.coefficients().end());
    c[4] += 1; // a_5
    const int_series g(1, f.precision(), std::move(c));
    EXPECT_THROW(find_model(g, 11), no_model_found);
    EXPECT_THROW(find_model(g), no_model_found);
}

TEST(ModelSearch, EveryLevel)
{
    for (const auto& [n, model] : expected_models()) {
        const auto f = newform_series(n, 64);
        EXPECT_EQ(find_model(f, n), model) << n;
    }
    EXPECT_EQ(expected_models().at(36).a1, 0);
    EXPECT_EQ(expected_models().at(36).a3, 0);
}

TEST(ModelSearch, IsogenousModelsNeedTheWitness)
{
    const auto f = newform_series(11, 64);
    const auto integral = integral_models(f);
    EXPECT_GT(integral.size(), 1u);
    try {
        find_model(f);
        FAIL() << "expected several integral models";
    } catch (const ambiguous_model& e) {
        EXPECT_EQ(e.candidates().size(), integral.size());
    }
}

TEST(Generators, LevelElevenPrefix)
{
    const auto f = newform_series(11, 40);
    const auto g = solve_xy(f, expected_models().at(11), 30);
    EXPECT_EQ(g.x.valuation(), -2);
    EXPECT_EQ(g.x.coeff(-2), 1);
    EXPECT_EQ(g.x.coeff(-1), 2);
    for (std::int64_t n = 1; n <= 5; ++n)
        EXPECT_EQ(g.x.coeff(n), printed_X[static_cast<std::size_t>(n + 2)]) << n;
    EXPECT_EQ(g.y.valuation(), -3);
    EXPECT_EQ(g.y.coeff(-3), -1);
    EXPECT_NO_THROW(verify_generators(g, f));
}

TEST(Generators, DoublingPrecisionExtendsPrefix)
{
    for (std::int64_t n : {11, 14, 27, 36}) {
        const auto model = expected_models().at(n);
        const auto a = solve_xy(newform_series(n, 40), model, 36);
        const auto b = solve_xy(newform_series(n, 80), model, 76);
        EXPECT_TRUE(identical(a.x, b.x.truncate(36))) << n;
        EXPECT_TRUE(identical(a.y, b.y.truncate(36))) << n;
    }
}

TEST(Generators, Errors)
{
    const auto f = newform_series(11, 40);
    EXPECT_THROW(solve_xy(f, expected_models().at(11), 37), precision_exceeded);
    EXPECT_THROW(solve_xy(f, weierstrass_model{0, 0, 0, 0, 0}, 10), domain_error);
    EXPECT_THROW(solve_xy(f * integer(2), expected_models().at(11), 10), zero_pivot);
    // a wrong but nonsingular model breaks integrality or consistency
    EXPECT_ANY_THROW(solve_xy(f, weierstrass_model{0, -1, 1, -7, 10}, 30));
    auto g = solve_xy(f, expected_models().at(11), 30);
    std::vector<integer> c(g.x.coefficients().begin(), g.x.coefficients().end());
    c[10] += 1;
    g.x = int_series(g.x.valuation(), g.x.precision(), std::move(c));
    EXPECT_THROW(verify_generators(g, f), inconsistent_at_exponent);
}

TEST(GenusOneBasis, MatchesPrintedLevelElevenRows)
{
    const basis_table t = build_genus1_basis(11, 5, 6);
    EXPECT_EQ(t.kind, basis_kind::genus1);
    EXPECT_TRUE(t.element(1).is_zero());
    EXPECT_EQ(t.coeff(1, -1), -1);
    for (const auto& [m, row] : printed_rows())
        for (const auto& [e, c] : row)
            EXPECT_EQ(t.coeff(m, e), c) << "m=" << m << " e=" << e;
    // the q^-1 coefficients 2, 1, -2, -1
    EXPECT_EQ(t.coeff(2, -1), 2);
    EXPECT_EQ(t.coeff(3, -1), 1);
    EXPECT_EQ(t.coeff(4, -1), -2);
    EXPECT_EQ(t.coeff(5, -1), -1);
}

TEST(GenusOneBasis, PolynomialRelationsInTheGenerators)
{
    const std::int64_t P = 40;
    const auto g = solve_xy(newform_series(11, P + 4), expected_models().at(11), P);
    const int_series one = int_series::one(P);
    // X = x shifted to the printed constant; Y = -y + s X + t fitted on the printed prefix
    const int_series X = g.x + one * integer(integer(printed_X[2]) - g.x.coeff(0));
    const int_series minus_y = -g.y;
    const integer s = integer(printed_Y[1]) - minus_y.coeff(-2);
    const integer t = integer(printed_Y[3]) - minus_y.coeff(0) - s * X.coeff(0);
    const int_series Y = minus_y + X * s + one * t;
    EXPECT_TRUE(X == from_window(-2, printed_X, 6));
    EXPECT_TRUE(Y == from_window(-3, printed_Y, 6));

    const basis_table b = build_genus1_basis(g, 11, 5, P - 5);
    const integer c36 = 36, c60 = 60;
    EXPECT_TRUE(b.element(2) == X - one * integer(4));
    EXPECT_TRUE(b.element(3) == Y - X * integer(3));
    // relations that hold with the prefix-matched Y
    EXPECT_TRUE(b.element(4) == X * X - Y * integer(4) - one * integer(4));
    EXPECT_TRUE(b.element(5) == X * Y - X * X * integer(5) + Y * integer(3) + X * integer(8) + one * integer(24));
    // the printed quartic relation needs Y' = Y - X - 8 instead
    const int_series Y2 = Y - X - one * integer(8);
    EXPECT_TRUE(b.element(4) == X * X - Y2 * integer(4) - X * integer(4) - one * c36);
    EXPECT_FALSE(b.element(4) == X * X - Y * integer(4) - X * integer(4) - one * c36);
    EXPECT_FALSE(b.element(5) == X * Y2 - X * X * integer(2) + X + Y2 * integer(7) + one * c60);
    // weight-zero eta quotient with its only pole at infinity
    const auto g5 = eta_quotient(eta_quotient_spec{{1, 12}, {11, -12}}, P - 5);
    const auto reduced = reduce_principal_part(g5, b.elements, -6, -1);
    EXPECT_TRUE(reduced.is_zero());
}

TEST(GenusOneBasis, ShapeAtEveryLevel)
{
    for (std::int64_t n : genus_one_levels) {
        const basis_table t = build_genus1_basis(n, 12, 30);
        for (std::int64_t m = 2; m <= 12; ++m) {
            const auto& e = t.element(m);
            EXPECT_EQ(e.valuation(), -m) << n;
            EXPECT_EQ(e.coeff(-m), 1) << n;
            for (std::int64_t k = -m + 1; k <= 0; ++k)
                if (k != -1) {
                    EXPECT_EQ(e.coeff(k), 0) << n << " " << m << " " << k;
                }
        }
        const basis_table big = build_genus1_basis(n, 12, 70);
        for (std::int64_t m = 0; m <= 12; ++m)
            EXPECT_TRUE(t.element(m) == big.element(m)) << n << " " << m;
    }
}

TEST(GenusOneBasis, PipelineGrowsAndReuses)
{
    genus1_pipeline p(14);
    const auto small = p.generators(20);
    const auto large = p.generators(60);
    EXPECT_TRUE(identical(small.x, large.x.truncate(20)));
    EXPECT_EQ(p.model(), expected_models().at(14));
    EXPECT_THROW(genus1_pipeline(13), domain_error);
    EXPECT_THROW(build_genus1_basis(17, 4, 10, empty_dir()), seed_missing);
}
