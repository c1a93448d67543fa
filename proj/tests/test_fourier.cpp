#include <doctest.h>

#include "oracles.hpp"
#include "orthoasym/fourier.hpp"

using namespace orthoasym;

TEST_CASE("c_0 vanishes and parity holds")
{
    for (double x : {0.05, 0.1, 0.2}) {
        const auto tab = cm_fft(x, 6, 128);
        CHECK(std::abs(tab.at(0)) <= 1e-10);
        double scale = 0;
        for (int m = 1; m <= 6; ++m)
            scale = std::max(scale, std::abs(tab.at(m)));
        for (int m = 1; m <= 6; ++m) {
            const auto c = tab.at(m);
            if (m % 2)
                CHECK(std::abs(c.imag()) <= 1e-10 * scale);
            else
                CHECK(std::abs(c.real()) <= 1e-10 * scale);
            CHECK(std::abs(tab.at(-m) - std::conj(c)) <= 1e-14);
        }
        CHECK(tab.error_estimate <= 1e-11);
    }
}

TEST_CASE("leading order (x/4)^m")
{
    const auto tab = cm_fft(0.01, 3, 64);
    for (int m = 1; m <= 3; ++m) {
        const double r = std::abs(tab.at(m)) / std::pow(0.01 / 4, m);
        CHECK(r == doctest::Approx(1.0).epsilon(0.05));
    }
}

TEST_CASE("audit mode computes negative m independently")
{
    FourierOptions opt;
    opt.audit = true;
    const auto a = cm_fft(0.1, 4, 64, opt);
    const auto b = cm_fft(0.1, 4, 64);
    for (int m = -4; m <= 4; ++m)
        CHECK(std::abs(a.at(m) - b.at(m)) < 1e-14);
}

TEST_CASE("fft preconditions")
{
    CHECK_THROWS(cm_fft(0.0, 4, 64));
    CHECK_THROWS(cm_fft(0.25, 4, 64));
    CHECK_THROWS(cm_fft(0.1, 4, 48));
    CHECK_THROWS(cm_fft(0.1, 8, 64));
}

TEST_CASE("contour agrees with the FFT")
{
    for (double x : {0.05, 0.1, 0.2}) {
        const auto tab = cm_fft(x, 4, 64);
        for (int m = 1; m <= 4; ++m) {
            CHECK(std::abs(cm_contour(x, m) - tab.at(m)) <= 1e-8);
            CHECK(std::abs(cm_contour(x, -m) - tab.at(-m)) <= 1e-8);
        }
    }
    CHECK(cm_contour(0.1, 0) == cdouble(0, 0));

    const auto p = cm_contour_parts(0.05, 1);
    CHECK(std::abs(p.circle) <= 1e-2 * std::abs(p.residue));
    CHECK(std::abs(p.residue) / (0.05 / 4) == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("geometry")
{
    const auto g = geometry(0.1);
    CHECK(std::abs(g.pl1) == doctest::Approx(oracle::pl1_abs_x01).epsilon(1e-12));
    CHECK(std::abs(g.pl1) * std::abs(g.pl2) == doctest::Approx(1.0).epsilon(1e-14));
    const double x4 = std::pow(0.1, 4);
    CHECK(g.arc_radius * g.arc_radius <= x4 / 4);
    CHECK(g.arc_radius * g.arc_radius == doctest::Approx(x4 / (4 + x4)).epsilon(1e-10));

    const auto r = residue_at_pl1(0.1);
    CHECK(std::abs(r.log_real_part) < 1e-12);
    // g* has a simple zero at pl1: compare its derivative with a central difference
    const double h = 1e-7;
    const auto fd = (g_star(0.1, g.pl1 + h) - g_star(0.1, g.pl1 - h)) / (2 * h);
    CHECK(std::abs(fd - r.dg_at_pole) < 1e-5 * std::abs(r.dg_at_pole));
    CHECK(std::abs(f_star(0.1, g.pl1) - r.f_at_pole) < 1e-12 * std::abs(r.f_at_pole));
}

TEST_CASE("double coefficients f_k^m")
{
    CHECK(std::abs(fkm(0.1, 1, 2) - std::conj(fkm(0.1, -1, -2))) <= 1e-12);
    // parity: real when m - k is even, imaginary otherwise
    CHECK(std::abs(fkm(0.1, 1, 1).imag()) < 1e-14);
    CHECK(std::abs(fkm(0.1, 1, 3).imag()) < 1e-14);
    CHECK(std::abs(fkm(0.1, 1, 2).real()) < 1e-14);

    std::vector<double> q;
    for (double x : {0.04, 0.02, 0.01})
        q.push_back(std::abs(fkm(x, 1, 1)) / (x * x));
    CHECK(q[2] <= 1.1 * q[0]);
    CHECK(q[1] <= 1.1 * q[0]);
    const double r1 = std::abs(fkm(0.08, 1, 3)) / std::abs(fkm(0.04, 1, 3));
    const double r2 = std::abs(fkm(0.04, 1, 3)) / std::abs(fkm(0.02, 1, 3));
    CHECK(r1 == doctest::Approx(16).epsilon(0.1));
    CHECK(r2 == doctest::Approx(16).epsilon(0.1));
}

TEST_CASE("monotonicity in x")
{
    const std::vector<double> xs{0.2, 0.1, 0.05, 0.025, 0.0125};
    CHECK(monotonicity_scan(1, xs).verdict == "monotone");
    const auto m2 = monotonicity_scan(2, xs);
    CHECK(m2.monotone_tail);
    CHECK_THROWS(monotonicity_scan(0, xs));
    CHECK_THROWS(monotonicity_scan(1, {0.01, 0.1}));
}
