#include <doctest.h>

#include "oracles.hpp"
#include "orthoasym/limits.hpp"

using namespace orthoasym;

TEST_CASE("hermite limits at omega = 0")
{
    const auto h = CoefficientFamily::hermite_exact();
    const auto b = beta_limit(h, 0.0, 200000);
    CHECK(b.converged);
    CHECK(b.value == doctest::Approx(oracle::hermite_beta0).epsilon(0.01));
    const auto r = ratio_limit(h, 0.0, 200000);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(oracle::hermite_ratio0).epsilon(0.01));
    CHECK(limit_equality_gap(r, b) <= 0.02);
}

TEST_CASE("hermite ratio limit away from zero")
{
    const auto h = CoefficientFamily::hermite_exact();
    for (double w : {0.5, 1.0, 2.0}) {
        const auto r = ratio_limit(h, w, 100000);
        CHECK(r.value == doctest::Approx(oracle::hermite_ratio(w)).epsilon(0.01));
        CHECK(limit_equality_gap(r, beta_limit(h, w, 100000)) <= 0.02);
    }
}

TEST_CASE("degenerate and rejected inputs")
{
    const auto h = CoefficientFamily::hermite_exact();
    const auto r0 = ratio_limit(h, 0.3, 0);
    CHECK(r0.value == h.gamma(0));
    CHECK_FALSE(r0.converged);
    CHECK_THROWS(beta_limit(h, 0.0, 100));
    CHECK_THROWS_AS(ratio_limit(CoefficientFamily::custom_table(std::vector<double>(300000, 1.0)), 0.5, 100000),
                    PreconditionError);

    const auto z = ratio_window_estimate({0.1, 0.05, 0.01}, {0, 0, 0}, 10, 20, 0.05);
    CHECK(z.value == 0.0);
    CHECK(z.converged);
}

TEST_CASE("power law converges")
{
    const auto r = ratio_limit(CoefficientFamily::power_law(1, 0.5), 1.0, 100000);
    CHECK(r.converged);
    CHECK(r.value > 0);
    CHECK(r.to_json().at("method") == "ratio");
}

TEST_CASE("growth exponents")
{
    CHECK(growth_exponent(CoefficientFamily::power_law(1, 0.5), 1.0, 100000).exponent == doctest::Approx(0.5).epsilon(0.04));
    CHECK(std::abs(growth_exponent(CoefficientFamily::power_law(1, 0.75), 1.0, 100000).exponent - 0.25) <= 0.02);
    CHECK(std::abs(growth_exponent(CoefficientFamily::power_law(1, 0.25), 0.5, 100000).exponent - 0.75) <= 0.02);
    CHECK_THROWS(growth_exponent(CoefficientFamily::hermite_exact(), 1.0, 100000));
    CHECK_THROWS(growth_exponent(CoefficientFamily::power_law(1, 0.5), 1.0, 1000));
}

TEST_CASE("uniformity on [-B, B]")
{
    const auto rep = uniformity_scan(CoefficientFamily::hermite_exact(), 2.0, 17, 100000);
    CHECK(rep.all_converged);
    CHECK(rep.points.size() == 17);
    CHECK(rep.m_B > 0);
    CHECK(rep.m_B <= rep.M_B);
    CHECK(rep.m_B == doctest::Approx(oracle::hermite_ratio0).epsilon(0.01));
    CHECK(rep.M_B == doctest::Approx(oracle::hermite_ratio(2.0)).epsilon(0.01));
    // symmetric grid, symmetric values
    for (std::size_t i = 0; i < 17; ++i)
        CHECK(rep.points[i].estimate.value == rep.points[16 - i].estimate.value);
    CHECK_THROWS(uniformity_scan(CoefficientFamily::hermite_exact(), 2.0, 8, 100000));
}

TEST_CASE("conjecture scan")
{
    const auto res = conjecture_scan(CoefficientFamily::power_law(1, 0.5), {2.5, 0.0, 1.0}, 1.0, 100000);
    REQUIRE(res.size() == 3);
    CHECK(res[0].rho == 0.0);
    CHECK(res[0].classification == Stability::Stable);
    CHECK(res[1].classification == Stability::Stable);
    CHECK(res[2].classification != Stability::Stable);
    CHECK(res[2].overflow);
    CHECK(res[2].label() == "unstable-overflow");
    // the overflowing run still carries its trace up to the last finite value
    REQUIRE_FALSE(res[2].n.empty());
    CHECK(res[2].n.back() < res[2].overflow_index);
    CHECK(std::isfinite(res[2].nu.back()));
    CHECK_FALSE(res[0].n.empty());
    CHECK(res[0].to_csv().rfind("n,env_lo,env_hi,nu\n", 0) == 0);

    const auto two = conjecture_scan(CoefficientFamily::power_law(1, 0.5), {2.0, -2.0}, 1.0, 100000);
    for (const auto& v : two)
        CHECK(v.classification == Stability::Inconclusive);
}
