#include <doctest.h>

#include "orthoasym/asym.hpp"
#include "orthoasym/phase.hpp"

using namespace orthoasym;

TEST_CASE("kernel basics")
{
    CHECK(f_kernel(0.0, 0.4) == 0.0);
    CHECK(g_kernel(0.0, 0.4) == 0.0);
    CHECK(h_kernel(0.0, 0.4) == 0.0);
    CHECK_THROWS_AS(f_kernel(0.25, 0.0), std::domain_error);
    CHECK_THROWS_AS(h_kernel(-0.3, 0.0), std::domain_error);
    CHECK_THROWS(l_kernel(0, 0.1, 0.0));

    for (double x : {0.02, 0.1, 0.2})
        for (double t : {0.0, 0.3, 1.1, 2.9, -2.0}) {
            CHECK(f_kernel(x, M_PI - t) == doctest::Approx(-f_kernel(x, t)).epsilon(1e-10).scale(1e-12));
            CHECK(g_kernel(x, M_PI - t) == doctest::Approx(g_kernel(x, t)).epsilon(1e-12));
        }
    CHECK(std::abs(h_kernel(0.1, 0.7) - h_kernel_simplified(0.1, 0.7)) < 1e-10);
    // the series and the closed form meet at the switch-over
    CHECK(h_kernel(1.01e-4, 0.9) == doctest::Approx(h_kernel(0.99e-4, 0.9)).epsilon(2e-2));
}

TEST_CASE("l / (m g) - 1 is O(x^2)")
{
    for (long m : {1L, 2L, 3L}) {
        const auto r = [&](double x) {
            double mx = 0;
            for (int i = 0; i < 32; ++i) {
                const double t = -M_PI + 2 * M_PI * i / 32;
                mx = std::max(mx, std::abs(l_kernel(m, x, t) / (double(m) * g_kernel(x, t)) - 1.0));
            }
            return mx;
        };
        const double a = r(0.02), b = r(0.01), c = r(0.005);
        CHECK(a / b == doctest::Approx(4.0).epsilon(0.1));
        CHECK(b / c == doctest::Approx(4.0).epsilon(0.1));
    }
    const double t = 0.3;
    const auto direct = std::polar(1.0, t) * (l_kernel(1, 0.1, t) / g_kernel(0.1, t) - 1.0);
    CHECK(std::abs(eps_kernel(1, 0.1, t) - direct) < 1e-15);
}

TEST_CASE("exact F_n, G_n against the phase increments")
{
    const auto h = CoefficientFamily::hermite_exact();
    const auto tr = unwind_phase(h, 1.0, 20);
    // G_n(t) does not depend on the phase, and at the actual phase it equals 2(Delta_{n-1} + Delta_n)
    const index_t n = 10;
    const double t = std::fmod(2 * tr.Phi[std::size_t(n - 1)], 2 * M_PI);
    const auto v = Fn_Gn_Hn_exact(h, 1.0, n, t);
    CHECK_FALSE(v.in_disc);
    CHECK(v.x == doctest::Approx(1.0 / h.gamma(2 * n - 1)));
    CHECK(v.G == doctest::Approx(2 * (tr.Delta[std::size_t(n - 1)] + tr.Delta[std::size_t(n)])).epsilon(1e-10));
    CHECK_THROWS(Fn_Gn_Hn_exact(h, 1.0, 1, 0.0));

    const auto f = CoefficientFamily::power_law(1, 0.5);
    double prev = 1e9;
    for (index_t k : {1 << 8, 1 << 12, 1 << 16}) {
        const double g = f.gamma(2 * k - 1);
        const double dev = std::abs(Fn_Gn_Hn_exact(f, 1.0, k, 0.4).G * g - 4);
        CHECK(dev < prev);
        CHECK(dev * g < 10);
        prev = dev;
    }
}

TEST_CASE("lemma campaign: preconditions")
{
    const auto f = CoefficientFamily::power_law(1, 0.5);
    const auto idx = default_lemma_indices(f, 1.0);
    CHECK(idx.size() >= 12);
    CHECK_THROWS_AS(verify_lemma("nope", f, 1.0, idx), std::invalid_argument);
    CHECK_THROWS_AS(verify_lemma("basicn", f, 0.0, idx), std::invalid_argument);
    CHECK_THROWS_AS(verify_lemma("basicn", f, 1.0, {idx[0], idx[1]}), LemmaPreconditionError);

    const auto flat = CoefficientFamily::custom_table(std::vector<double>(300000, 1.0));
    try {
        verify_lemma("twologs", flat, 1.0, idx);
        FAIL("expected rejection");
    } catch (const LemmaPreconditionError& e) {
        CHECK(std::string(e.what()).find("C1") != std::string::npos);
    }
    CHECK_THROWS_AS(default_lemma_indices(CoefficientFamily::power_law(1, 0.01), 1.0), LemmaPreconditionError);
}

TEST_CASE("lemma campaign: power law p = 1/2")
{
    const auto f = CoefficientFamily::power_law(1, 0.5);
    const auto idx = default_lemma_indices(f, 1.0);
    LemmaOptions opt;
    opt.t_points = 32;
    for (const auto& id : lemma_ids()) {
        CAPTURE(id);
        const auto r = verify_lemma(id, f, 1.0, idx, opt);
        CHECK(r.verdict == Verdict::Consistent);
        CHECK(r.n == idx);
        const auto& w = r.worst();
        CHECK(w.fit_exponent >= w.claimed - opt.slack);
        const auto j = r.to_json();
        CHECK(j.at("verdict") == "consistent");
        CHECK(j.at("lemma") == id);
    }
    // sharp bounds: the fitted exponent matches the displayed one
    for (const char* id : {"ztztt", "FG1", "F/G", "arcsin"})
        for (const auto& p : verify_lemma(id, f, 1.0, idx, opt).parts)
            CHECK(std::abs(p.fit_exponent - p.claimed) <= 0.1);
    // smooth power laws beat the basicn bound by one order (the |s| terms cancel to |ds|)
    for (const auto& p : verify_lemma("basicn", f, 1.0, idx, opt).parts)
        CHECK(p.fit_exponent == doctest::Approx(p.claimed + 1).epsilon(0.05));
}
