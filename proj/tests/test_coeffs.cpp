#include <doctest.h>

#include "oracles.hpp"
#include "orthoasym/coeffs.hpp"
#include "orthoasym/experiment.hpp"

using namespace orthoasym;
using nlohmann::json;

TEST_CASE("gamma values")
{
    const auto h = CoefficientFamily::hermite_exact();
    CHECK(h.gamma(0) == doctest::Approx(oracle::hermite_gamma0).epsilon(1e-15));
    CHECK(h.gamma(-1) == 1.0);
    CHECK(CoefficientFamily::power_law(1, 0.5).gamma(3) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(CoefficientFamily::power_law(3, 0.25).gamma(-1) == 1.0);
    CHECK(CoefficientFamily::freud_leading(4).gamma(15) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(h.gamma(-2), std::out_of_range);
}

TEST_CASE("parameter validation")
{
    CHECK_THROWS_AS(CoefficientFamily::power_law(1, 1.0), ConfigError);
    CHECK_THROWS_AS(CoefficientFamily::power_law(1, 0.0), ConfigError);
    CHECK_THROWS_AS(CoefficientFamily::power_law(-1, 0.5), ConfigError);
    CHECK_THROWS_AS(CoefficientFamily::freud_leading(1.0), ConfigError);
    CHECK_THROWS_AS(CoefficientFamily::custom_table({1, -2, 3}), ConfigError);
    CHECK_THROWS_AS(CoefficientFamily::custom_table({}), ConfigError);
}

TEST_CASE("custom table bounds")
{
    const auto t = CoefficientFamily::custom_table({1, 2, 3});
    CHECK(t.max_index() == 2);
    CHECK(t.gamma(2) == 3.0);
    CHECK_THROWS_AS(t.gamma(3), std::out_of_range);
}

TEST_CASE("finite differences, epsilon, eta")
{
    const auto h = CoefficientFamily::hermite_exact();
    CHECK(finite_differences(h, 0).s == doctest::Approx(oracle::hermite_s0).epsilon(1e-14));
    const auto ones = CoefficientFamily::custom_table({1, 1, 1});
    CHECK(finite_differences(ones, 0).s == 0.0);
    CHECK(finite_differences(ones, 0).ds == 0.0);

    CHECK(epsilon(CoefficientFamily::custom_table({2, 2, 2, 2}), 1) == 0.0);
    CHECK(epsilon(h, 1) == doctest::Approx(oracle::hermite_eps1).epsilon(1e-13));
    // the two forms of epsilon agree
    const auto pl = CoefficientFamily::power_law(1, 0.5);
    for (index_t n : {1, 5, 40})
        CHECK(epsilon(pl, n) == doctest::Approx(epsilon_identity(pl, n)).epsilon(1e-9));
    CHECK(std::abs(epsilon(pl, 100000)) < 1e-6);

    CHECK(eta(h, 2) == doctest::Approx(oracle::hermite_eta2).epsilon(1e-13));
    CHECK(eta(CoefficientFamily::custom_table(std::vector<double>(10, 3.0)), 3) == 0.0);
    const auto det = CoefficientFamily::detour(pl, 50, 3);
    for (index_t n = 2; n < 200; ++n)
        CHECK(eta(det, n) > 0);
}

TEST_CASE("detour rearrangement is a per-period permutation")
{
    const auto base = CoefficientFamily::power_law(1, 0.5);
    const auto d = CoefficientFamily::detour(base, 50, 3);
    std::vector<index_t> seen;
    bool monotone = true;
    for (index_t n = 0; n < 500; ++n) {
        seen.push_back(d.base_index(n));
        if (n > 0 && d.gamma(n) < d.gamma(n - 1))
            monotone = false;
    }
    CHECK_FALSE(monotone);
    std::sort(seen.begin(), seen.end());
    for (index_t n = 0; n < 500; ++n)
        CHECK(seen[std::size_t(n)] == n);
    CHECK_THROWS_AS(CoefficientFamily::detour(base, 4, 3), ConfigError);
}

TEST_CASE("condition checks")
{
    const auto r = check_conditions(CoefficientFamily::power_law(1, 0.5), 10000);
    CHECK(r.all_consistent());
    CHECK(r.kappa == 3);

    const auto c = check_conditions(CoefficientFamily::custom_table(std::vector<double>(20000, 1.0)), 10000);
    CHECK(c.at("C1").status == Status::Violated);
    CHECK(c.at("C1").witness >= 0);
    CHECK_THROWS_AS(require_conditions(CoefficientFamily::custom_table(std::vector<double>(20000, 1.0)), 10000),
                    PreconditionError);

    const auto d = check_conditions(CoefficientFamily::detour(CoefficientFamily::power_law(1, 0.5), 50, 3), 10000);
    CHECK_FALSE(d.any_violated());
    CHECK(d.at("C3").status == Status::Consistent);
    CHECK(d.m0 > 1);
    CHECK(d.m0 <= 7);
}

TEST_CASE("config round trip and key paths")
{
    for (const auto& f : corpus()) {
        const auto back = CoefficientFamily::from_config(f.to_config());
        CHECK(back.id() == f.id());
        for (index_t n : {0, 7, 123, 4567})
            CHECK(back.gamma(n) == f.gamma(n));
    }
    const auto rho = CoefficientFamily::hermite_exact().with_rho_offsets(1.5);
    CHECK(CoefficientFamily::from_config(rho.to_config()).offset(10) == rho.offset(10));

    try {
        CoefficientFamily::from_config(json{{"kind", "power-law"}, {"c", 1}, {"p", 1.5}});
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.key() == "family.p");
    }
    try {
        CoefficientFamily::from_config(
            json{{"kind", "detour-perturbed"}, {"base", {{"kind", "power-law"}, {"p", -1}}}, {"detour", {{"period", 50}, {"depth", 3}}}});
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.key() == "family.base.p");
    }
    CHECK_THROWS_AS(CoefficientFamily::from_config(json{{"kind", "nope"}}), ConfigError);
}
