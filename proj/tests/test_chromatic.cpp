#include <doctest.h>

#include "oracles.hpp"
#include "orthoasym/chromatic.hpp"
#include "orthoasym/recurrence.hpp"

using namespace orthoasym;
using cd = std::complex<double>;

namespace {
const auto H = CoefficientFamily::hermite_exact();
}

TEST_CASE("signals")
{
    const TrigSignal f({{1.0, cd(1, 0)}, {2.0, cd(0, 0.5)}});
    CHECK(f.band() == 2.0);
    CHECK_FALSE(f.is_zero());
    CHECK(TrigSignal().is_zero());
    CHECK(std::abs(f(0.3) - (std::polar(1.0, 0.3) + cd(0, 0.5) * std::polar(1.0, 0.6))) < 1e-15);
    CHECK_THROWS(TrigSignal({{1.0, 1.0}, {1.0, 2.0}}));
    CHECK_THROWS(TrigSignal({{NAN, 1.0}}));
    const auto back = TrigSignal::from_json(f.to_json());
    CHECK(back.to_json() == f.to_json());
    const auto d = f.derivative();
    CHECK(std::abs(d.terms()[0].q - cd(0, 1)) < 1e-15);
}

TEST_CASE("K operators")
{
    const auto e = TrigSignal::exponential(1.0);
    const auto k0 = apply_K(H, 0, e);
    CHECK(k0.to_json() == e.to_json());
    const auto k1 = apply_K(H, 1, e);
    CHECK(std::abs(k1.terms()[0].q - cd(0, std::sqrt(2.0))) < 1e-14);
    CHECK(apply_K(H, -1, e).is_zero());
    CHECK(operator_recurrence_residual(H, TrigSignal({{0.7, 1.0}, {-1.3, cd(0.2, 0.4)}}), 200) <= 1e-12);
}

TEST_CASE("local energy and nu")
{
    const double w = 0.8;
    const auto e = TrigSignal::exponential(w, cd(0.6, 0.8));
    double p[3];
    run_recurrence(H, w, 12, false, [&](index_t n, double pn, double pn1, double) {
        if (n == 12) {
            p[0] = pn;
            p[1] = pn1;
        }
        return true;
    });
    const double ref = H.gamma(12) * (p[0] * p[0] + p[1] * p[1]);
    for (double t : {0.0, 1.0, -2.5})
        CHECK(local_energy(H, e, 12, t) == doctest::Approx(ref).epsilon(1e-12));
    CHECK(local_energy(H, TrigSignal(), 5, 0.3) == 0.0);

    const auto a = nu_seq(H, e, 300, 0.0), b = nu_seq(H, e, 300, 1.7);
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-13));
}

TEST_CASE("inner product")
{
    const TrigSignal f({{1.0, 1.0}, {2.0, cd(0, 1)}}), g({{0.5, cd(1, 1)}, {-1.0, 2.0}});
    const auto fg = inner_product(H, f, g, 500, 0.4), gf = inner_product(H, g, f, 500, 0.4);
    CHECK(std::abs(fg - std::conj(gf)) <= 1e-12 * std::abs(fg));
    const auto ff = inner_product(H, f, f, 500, 0.4);
    CHECK(ff.real() == doctest::Approx(nu_seq(H, f, 500, 0.4).back()).epsilon(1e-12));

    const auto a = std::abs(inner_product(H, TrigSignal::exponential(1), TrigSignal::exponential(2), 1000, 0.0));
    const auto b = std::abs(inner_product(H, TrigSignal::exponential(1), TrigSignal::exponential(2), 100000, 0.0));
    CHECK(b <= a / 3);
}

TEST_CASE("norm")
{
    const auto one = TrigSignal::exponential(0.0);
    const auto r = norm(H, one, 100000);
    CHECK(r.estimate.converged);
    CHECK(r.estimate.value * r.estimate.value == doctest::Approx(oracle::hermite_ratio0).epsilon(0.02));

    const auto f = TrigSignal({{1.0, 1.0}, {2.0, 1.0}});
    const auto n1 = norm(H, f, 20000), n2 = norm(H, f * 2.0, 20000);
    CHECK(std::abs(n2.estimate.value - 2 * n1.estimate.value) <= 1e-12 * n1.estimate.value);
    const auto z = norm(H, TrigSignal(), 20000);
    CHECK(z.estimate.value == 0.0);

    // two tones drift apart in t less as N grows
    CHECK(norm(H, f, 100000).t_spread < norm(H, f, 1000).t_spread);
}

TEST_CASE("operator Christoffel-Darboux")
{
    const auto e = TrigSignal::exponential(1.0);
    CHECK(operator_cd_check(H, e, e, 0, {0.0, 1.0}).max_abs <= 1e-15);
    const TrigSignal f({{0.3, cd(1, -0.5)}, {1.9, 0.7}}), g({{-0.8, cd(0.1, 1)}, {1.1, -1.0}});
    CHECK(operator_cd_check(H, f, g, 50, {-2.0, 0.0, 0.5, 3.0}).max_rel <= 1e-10);
    const auto c = TrigSignal::exponential(0.0);
    CHECK(operator_cd_check(H, c, c, 7, {0.0, 1.0}).max_abs <= 1e-14);
}

TEST_CASE("orthogonality")
{
    const auto r = orthogonality_check(H, 1.0, 2.0, 100000);
    CHECK(r.ratio_at(100000) <= r.ratio_at(1000) / 3);
    CHECK(r.n.back() == 100000);
    const auto s = orthogonality_check(H, 1.0, -1.0, 100000);
    CHECK(s.ratio_at(100000) < s.ratio_at(1000));
    CHECK_THROWS(orthogonality_check(H, 1.0, 1.0, 1000));
}
