#include <doctest.h>

#include "oracles.hpp"
#include "orthoasym/recurrence.hpp"

using namespace orthoasym;

namespace {
std::vector<double> values(const CoefficientFamily& f, double w, index_t N, bool offsets = false)
{
    std::vector<double> out;
    run_recurrence(f, w, N, offsets, [&](index_t, double pn, double, double) {
        out.push_back(pn);
        return true;
    });
    return out;
}
} // namespace

TEST_CASE("hermite low-order polynomials")
{
    const auto h = CoefficientFamily::hermite_exact();
    for (double w : {-1.3, 0.0, 0.4, 2.0}) {
        const auto p = values(h, w, 3);
        CHECK(p[1] == doctest::Approx(std::sqrt(2.0) * w).epsilon(1e-14));
        CHECK(p[2] == doctest::Approx((2 * w * w - 1) / std::sqrt(2.0)).epsilon(1e-14));
    }
}

TEST_CASE("odd values vanish at omega = 0")
{
    for (const auto& f : {CoefficientFamily::hermite_exact(), CoefficientFamily::power_law(2, 0.3),
                          CoefficientFamily::detour(CoefficientFamily::power_law(1, 0.5), 50, 3)}) {
        const auto p = values(f, 0.0, 301);
        for (std::size_t k = 1; k < p.size(); k += 2)
            CHECK(p[k] == 0.0);
    }
}

TEST_CASE("hand recurrence for sqrt(n+1)")
{
    const auto tr = eval_symmetric(CoefficientFamily::power_law(1, 0.5), 1.0, 5, 1);
    REQUIRE(tr.rows.size() == 6);
    for (std::size_t k = 0; k < 6; ++k)
        CHECK(tr.rows[k].p_n == doctest::Approx(oracle::pl_half_p[k]).epsilon(1e-14).scale(1));
    double s = 0;
    for (double v : oracle::pl_half_p)
        s += v * v;
    CHECK(tr.sum_p2 == doctest::Approx(s).epsilon(1e-14));
}

TEST_CASE("eval checkpoints and csv")
{
    const auto tr = eval_symmetric(CoefficientFamily::hermite_exact(), 0.7, 100, 7);
    CHECK(tr.rows.back().n == 100);
    CHECK(tr.rows.front().n == 0);
    CHECK(tr.to_csv().rfind("n,p_n,p_np1,sum_p2,sum_invgamma\n", 0) == 0);
    CHECK_THROWS(eval_symmetric(CoefficientFamily::hermite_exact(), 0.7, 0, 1));
    CHECK_THROWS(eval_symmetric(CoefficientFamily::hermite_exact(), 0.7, 10, 0));
}

TEST_CASE("non-symmetric recurrence")
{
    const auto h = CoefficientFamily::hermite_exact();
    const auto a = eval_symmetric(h, 0.9, 500, 10);
    const auto b = eval_nonsymmetric(h, 0.9, 500, 10);
    CHECK(a.to_csv() == b.to_csv());

    const auto r1 = values(h.with_rho_offsets(1.0), 0.0, 2, true);
    CHECK(r1[1] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r1[2] == doctest::Approx(1 - 1 / std::sqrt(2.0)).epsilon(1e-14));

    const auto up = values(h.with_rho_offsets(1.0), 0.0, 200, true);
    const auto dn = values(h.with_rho_offsets(-1.0), 0.0, 200, true);
    for (std::size_t k = 0; k < up.size(); ++k)
        CHECK(dn[k] == doctest::Approx((k % 2 ? -1.0 : 1.0) * up[k]).epsilon(1e-12));
}

TEST_CASE("overflow is reported with the index")
{
    const auto f = CoefficientFamily::power_law(1, 0.5).with_rho_offsets(3.0);
    try {
        eval_nonsymmetric(f, 1.0, 100000, 1000);
        FAIL("expected overflow");
    } catch (const OverflowError& e) {
        CHECK(e.index() > 0);
        CHECK(e.index() < 100000);
    }
}

TEST_CASE("Christoffel-Darboux residual")
{
    CHECK(cd_residual(CoefficientFamily::hermite_exact(), 1.0, 0.5, 0) == 0.0);
    CHECK(std::abs(cd_residual(CoefficientFamily::hermite_exact(), 1.0, 0.5, 100)) <= 1e-10);
    const auto d = CoefficientFamily::detour(CoefficientFamily::power_law(1, 0.75), 50, 3);
    CHECK(std::abs(cd_residual(d, -1.7, 1.3, 200)) <= 1e-9);
}

TEST_CASE("Christoffel ratio")
{
    const auto h = CoefficientFamily::hermite_exact();
    const auto r = christoffel_ratio(h, 0.3, 100, 10);
    CHECK(r.front().first == 0);
    CHECK(r.front().second == doctest::Approx(h.gamma(0)).epsilon(1e-15));
    CHECK(r.back().first == 100);
}
