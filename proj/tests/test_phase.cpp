#include <doctest.h>

#include "oracles.hpp"
#include "orthoasym/experiment.hpp"
#include "orthoasym/phase.hpp"

using namespace orthoasym;

TEST_CASE("a_n, b_n")
{
    const auto ones = CoefficientFamily::custom_table(std::vector<double>(20, 1.0));
    const auto c = ab_coefficients(ones, 0.0, 3);
    CHECK(c.a == std::complex<double>(1, 0));
    CHECK(c.b == std::complex<double>(0, 0));

    const auto h = CoefficientFamily::hermite_exact();
    const auto ab = ab_coefficients(h, 1.0, 1);
    CHECK(ab.a.real() == doctest::Approx(oracle::hermite_a1_re).epsilon(1e-14));
    CHECK(ab.a.imag() == doctest::Approx(oracle::hermite_a1_im).epsilon(1e-14));
    CHECK(ab.b.real() == doctest::Approx(oracle::hermite_b1_re).epsilon(1e-14));
    CHECK(ab.b.imag() == doctest::Approx(oracle::hermite_b1_im).epsilon(1e-14));

    for (const auto& f : corpus())
        for (index_t n : {1, 10, 333})
            for (double w : {0.3, 1.0, 2.5}) {
                const auto v = ab_coefficients(f, w, n);
                const double lhs = std::norm(v.a) - std::norm(v.b);
                const double rhs = f.gamma(2 * n - 2) / f.gamma(2 * n);
                CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
            }
}

TEST_CASE("E_n from the three-term run")
{
    const auto h = CoefficientFamily::hermite_exact();
    const auto e0 = en_direct(h, 0.8, 0);
    CHECK(e0.real() == doctest::Approx(1.0));
    CHECK(e0.imag() == doctest::Approx(std::sqrt(2.0) * 0.8).epsilon(1e-14));
    for (index_t n : {0, 1, 5, 20})
        CHECK(en_direct(h, 0.0, n).imag() == 0.0);
}

TEST_CASE("two-term step")
{
    const std::complex<double> a(0.3, 0.9), e(1.5, -0.2);
    CHECK(std::abs(en_two_term_step(a, 0.0, e) - a * e) < 1e-15);
    CHECK_THROWS_AS(en_two_term_step(a, 0.1, 0.0), std::domain_error);

    const auto h = CoefficientFamily::hermite_exact();
    const auto ab = ab_coefficients(h, 1.0, 1);
    const auto e1 = en_two_term_step(ab.a, ab.b, en_direct(h, 1.0, 0));
    CHECK(std::abs(e1 - en_direct(h, 1.0, 1)) < 1e-14);

    // omega -> -omega conjugates the step for symmetric families
    const auto f = CoefficientFamily::power_law(1, 0.5);
    for (index_t n : {1, 4, 17}) {
        const auto p = ab_coefficients(f, 0.7, n), m = ab_coefficients(f, -0.7, n);
        const auto ep = en_direct(f, 0.7, n - 1);
        const auto em = en_direct(f, -0.7, n - 1);
        CHECK(std::abs(en_two_term_step(m.a, m.b, em) - std::conj(en_two_term_step(p.a, p.b, ep))) < 1e-12);
    }
}

TEST_CASE("lambda sequence")
{
    const auto twos = CoefficientFamily::custom_table(std::vector<double>(20, 2.0));
    CHECK(lambda_seq(twos, 0) == doctest::Approx(1.0));
    CHECK(lambda_seq(twos, 3) == doctest::Approx(1.0));
    CHECK(lambda_seq(CoefficientFamily::hermite_exact(), 1) == doctest::Approx(oracle::hermite_lambda1).epsilon(1e-14));

    // first-order expansion lambda_{n-1} = 1 + (s_{2n-4} + 2 s_{2n-3} + s_{2n-2})/(2 gamma_{2n-1}) + o(1/gamma^2)
    const auto f = CoefficientFamily::power_law(1, 0.5);
    for (index_t n : {100, 1000, 10000}) {
        const double g = f.gamma(2 * n - 1);
        const double lin = 1 + (diff_s<double>(f, 2 * n - 4) + 2 * diff_s<double>(f, 2 * n - 3) +
                                diff_s<double>(f, 2 * n - 2)) /
                                   (2 * g);
        CHECK(std::abs(lambda_seq(f, n - 1) - lin) * g * g < 1.0);
    }
}

TEST_CASE("unwound phase")
{
    const auto h = CoefficientFamily::hermite_exact();
    const auto tr = unwind_phase(h, 1.0, 2000);
    CHECK(tr.Phi[0] == doctest::Approx(oracle::hermite_phi0_w1).epsilon(1e-14));
    for (index_t n = 1; n < tr.size(); ++n)
        CHECK(tr.Phi[std::size_t(n)] > tr.Phi[std::size_t(n - 1)]);
    CHECK(tr.Phi.back() > 50);
    CHECK(tr.max_reconstruction_error < 1e-12);
    for (index_t n = tr.burn_in; n < tr.size(); ++n) {
        CHECK(tr.Delta[std::size_t(n)] > 0);
        CHECK(tr.Delta[std::size_t(n)] < M_PI);
    }
    // the log-sum S_n telescopes to log(|E_n|^2 / (1/gamma_{2n} + 1/gamma_{2n+1}))
    for (index_t n : {0, 1, 10, 500, 2000}) {
        const double ref = std::log(std::pow(tr.E_abs[std::size_t(n)], 2) / (1 / h.gamma(2 * n) + 1 / h.gamma(2 * n + 1)));
        CHECK(std::abs(tr.S[std::size_t(n)] - ref) <= 1e-8 * std::max(1.0, std::abs(ref)));
    }
    CHECK(tr.to_csv().find('\n') != std::string::npos);
    CHECK_THROWS(unwind_phase(h, 0.0, 10));
    CHECK_THROWS(unwind_phase(h, -1.0, 10));

    const auto odd = unwind_phase(CoefficientFamily::power_law(1, 0.5), 1.0, 500, Parity::OddPair);
    CHECK(odd.max_reconstruction_error < 1e-12);
}

TEST_CASE("Delta asymptotics")
{
    const auto d = delta_asymptotics(CoefficientFamily::power_law(1, 0.5), 1.0, 0.01, 1 << 16, 4000000);
    CHECK(d.found);
    CHECK(d.N0 > 0);
    CHECK(std::abs(d.last_ratio - 1) < 0.01);
    CHECK(d.sum_order >= 1.7);
}
