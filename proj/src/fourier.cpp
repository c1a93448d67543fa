#include "orthoasym/fourier.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <fftw3.h>

#include "orthoasym/kernels.hpp"
#include "orthoasym/numeric.hpp"

namespace orthoasym {

namespace {

constexpr double two_pi = 2 * std::numbers::pi;
const cdouble I(0, 1);

std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

bool is_pow2(std::int64_t n) { return n > 0 && (n & (n - 1)) == 0; }

void check_x(double x, const char* who)
{
    if (!(x > 0 && x < 0.25))
        throw std::domain_error(std::string(who) + ": x must lie in (0, 1/4)");
}

// c_0..c_M of a real periodic function sampled on `n` points.
std::vector<cdouble> dft_real(const std::vector<double>& samples, int M)
{
    const int n = int(samples.size());
    std::vector<double> in(samples);
    fftw_complex* out = fftw_alloc_complex(std::size_t(n / 2 + 1));
    fftw_plan plan;
    {
        std::lock_guard lk(planner_mutex());
        plan = fftw_plan_dft_r2c_1d(n, in.data(), out, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::vector<cdouble> c(std::size_t(M + 1));
    for (int m = 0; m <= M; ++m)
        c[std::size_t(m)] = cdouble(out[m][0], out[m][1]) / double(n);
    {
        std::lock_guard lk(planner_mutex());
        fftw_destroy_plan(plan);
    }
    fftw_free(out);
    return c;
}

// Direct sum for one coefficient; used by the audit path.
template <class F>
cdouble direct_coefficient(F&& fn, long m, std::int64_t n)
{
    CompensatedSum<double> re, im;
    for (std::int64_t j = 0; j < n; ++j) {
        const double t = two_pi * double(j) / double(n);
        const cdouble v = fn(t) * std::polar(1.0, -double(m) * t);
        re.add(v.real());
        im.add(v.imag());
    }
    return cdouble(re.value(), im.value()) / double(n);
}

std::vector<double> h_samples(double x, std::int64_t n)
{
    std::vector<double> s(static_cast<std::size_t>(n));
    for (std::int64_t j = 0; j < n; ++j)
        s[std::size_t(j)] = kernels::h_value(x, two_pi * double(j) / double(n));
    return s;
}

} // namespace

std::string FourierTable::to_csv() const
{
    std::ostringstream os;
    os << "m,re,im,abs\n";
    for (int m = -M; m <= M; ++m) {
        const cdouble v = at(m);
        os << m << ',' << fmt17(v.real()) << ',' << fmt17(v.imag()) << ',' << fmt17(std::abs(v)) << '\n';
    }
    return os.str();
}

nlohmann::json FourierTable::sidecar() const
{
    return {{"x", x}, {"M", M}, {"grid", grid}, {"error_estimate", error_estimate}};
}

FourierTable cm_fft(double x, int M, std::int64_t grid, const FourierOptions& opt)
{
    check_x(x, "cm_fft");
    if (M < 1)
        throw std::invalid_argument("cm_fft: M must be >= 1");
    if (!is_pow2(grid) || grid < 16 * std::int64_t(M))
        throw std::invalid_argument("cm_fft: grid must be a power of two >= 16 M");

    std::int64_t n = grid;
    auto prev = dft_real(h_samples(x, n), M);
    double diff = 0;
    for (;;) {
        if (2 * n > opt.max_grid)
            throw std::runtime_error("cm_fft: no convergence before the grid cap");
        n *= 2;
        auto cur = dft_real(h_samples(x, n), M);
        diff = 0;
        for (int m = 0; m <= M; ++m)
            diff = std::max(diff, std::abs(cur[std::size_t(m)] - prev[std::size_t(m)]));
        prev = std::move(cur);
        if (diff < opt.tol)
            break;
    }

    FourierTable tab;
    tab.x = x;
    tab.M = M;
    tab.grid = n;
    tab.error_estimate = diff;
    tab.c.resize(std::size_t(2 * M + 1));
    for (int m = 0; m <= M; ++m)
        tab.c[std::size_t(M + m)] = prev[std::size_t(m)];
    for (int m = 1; m <= M; ++m) {
        if (opt.audit)
            tab.c[std::size_t(M - m)] =
                direct_coefficient([x](double t) { return cdouble(kernels::h_value(x, t)); }, -m, n);
        else
            tab.c[std::size_t(M - m)] = std::conj(prev[std::size_t(m)]);
    }
    return tab;
}

ContourGeometry geometry(double x)
{
    check_x(x, "geometry");
    const double x2 = x * x, x4 = x2 * x2;
    const double u = 1 - x2 / 2;
    const double q = std::sqrt(1 - x2 / 4);
    ContourGeometry g;
    const double k = x2 / (2 * (1 + x4 / 4));
    g.w1 = -k * cdouble(u, -x);
    g.w2 = k * cdouble(u, x);
    g.v1 = cdouble(1 - 2 / x2, 2 / x);
    g.v2 = cdouble(-1 + 2 / x2, 2 / x);
    g.pl1 = I * x / (2 * (1 + q));
    g.pl2 = I * 2.0 * (1 + q) / x;
    g.arc_radius = x2 / std::sqrt(4 + x4);
    if (!(std::abs(g.pl1) < 1 && std::abs(g.pl2) > 1))
        throw std::logic_error("geometry: poles on the wrong side of the unit circle");
    if (std::abs(g.w1) > x2 / 2 * (1 + 1e-12) || std::abs(g.w2) > x2 / 2 * (1 + 1e-12))
        throw std::logic_error("geometry: cut endpoints outside |z| <= x^2/2");
    return g;
}

cdouble f_star(double x, cdouble z)
{
    const double x2 = x * x, u = 1 - x2 / 2;
    const cdouble A = std::log(((cdouble(u, x)) * z + x2 / 2) / (cdouble(u, -x) * z - x2 / 2));
    const cdouble B = std::log((cdouble(u, -x) + x2 / 2 * z) / (cdouble(u, x) - x2 / 2 * z));
    return A + B;
}

cdouble g_star(double x, cdouble z)
{
    const double x2 = x * x, u = 1 - x2 / 2;
    const cdouble A = std::log(((cdouble(u, x)) * z + x2 / 2) / (cdouble(u, -x) * z - x2 / 2));
    const cdouble B = std::log((cdouble(u, -x) + x2 / 2 * z) / (cdouble(u, x) - x2 / 2 * z));
    return -I * A + I * B;
}

ResidueData residue_at_pl1(double x)
{
    check_x(x, "residue_at_pl1");
    const double x2 = x * x, x4 = x2 * x2;
    const double q = std::sqrt(1 - x2 / 4);
    ResidueData r;
    const cdouble arg(1 - 2 * x2 + x4 / 2, -2 * x * q * (1 - x2 / 2));
    const cdouble lg = std::log(arg);
    r.log_real_part = lg.real();
    if (std::abs(r.log_real_part) > 1e-12)
        throw std::logic_error("residue_at_pl1: log argument is off the unit circle");
    r.f_at_pole = 2.0 * lg;
    r.dg_at_pole = -8.0 * I * (1 - x2 / 2) * q * (1 + q);
    r.residue = r.f_at_pole / r.dg_at_pole;
    return r;
}

ContourParts cm_contour_parts(double x, int m, double tol)
{
    check_x(x, "cm_contour");
    if (m < 1)
        throw std::invalid_argument("cm_contour_parts: m must be >= 1");
    const double r = x * x;
    // (1/2pi) int z^m h*(z) dt on z = x^2 e^{it}
    auto integrand = [&](double t) {
        const cdouble z = std::polar(r, t);
        return std::pow(z, m) * f_star(x, z) / g_star(x, z);
    };
    auto trap = [&](std::int64_t n) {
        CompensatedSum<double> re, im;
        for (std::int64_t j = 0; j < n; ++j) {
            const cdouble v = integrand(two_pi * double(j) / double(n));
            re.add(v.real());
            im.add(v.imag());
        }
        return cdouble(re.value(), im.value()) / double(n);
    };
    std::int64_t n = 64;
    cdouble prev = trap(n);
    for (;;) {
        if (2 * n > (std::int64_t(1) << 20))
            throw std::runtime_error("cm_contour: small-circle quadrature did not converge");
        n *= 2;
        const cdouble cur = trap(n);
        const double d = std::abs(cur - prev);
        prev = cur;
        if (d <= tol * std::max(std::abs(cur), std::pow(r, m)))
            break;
    }
    ContourParts p;
    p.circle = prev;
    const auto g = geometry(x);
    p.residue = std::pow(g.pl1, m - 1) * residue_at_pl1(x).residue;
    p.total = p.circle + p.residue;
    p.grid = n;
    return p;
}

cdouble cm_contour(double x, int m)
{
    if (m == 0)
        return 0.0;
    if (m < 0)
        return cm_contour_parts(x, -m).total;
    return std::conj(cm_contour_parts(x, m).total);
}

cdouble fkm(double x, long m, long k, std::int64_t grid, const FourierOptions& opt)
{
    check_x(x, "fkm");
    if (m == 0)
        throw std::invalid_argument("fkm: m must be nonzero");
    if (!is_pow2(grid))
        throw std::invalid_argument("fkm: grid must be a power of two");
    // eps_m is a difference of O(1) quantities, so its roundoff is absolute
    constexpr double floor = 1e-14;
    auto eps = [&](double t) { return kernels::eps_value(m, x, t); };
    std::int64_t n = std::max<std::int64_t>(grid, 16 * (std::abs(k) + std::abs(m) + 1));
    while (!is_pow2(n))
        ++n;
    cdouble prev = direct_coefficient(eps, k, n);
    for (;;) {
        if (2 * n > opt.max_grid)
            throw std::runtime_error("fkm: no convergence before the grid cap");
        n *= 2;
        const cdouble cur = direct_coefficient(eps, k, n);
        const double d = std::abs(cur - prev);
        prev = cur;
        if (d <= std::max(opt.tol * std::abs(cur), floor))
            break;
    }
    return prev;
}

MonotonicityReport monotonicity_scan(int m, const std::vector<double>& xs)
{
    if (m == 0)
        throw std::invalid_argument("monotonicity_scan: c_0 vanishes identically");
    if (xs.size() < 2)
        throw std::invalid_argument("monotonicity_scan: need at least two grid points");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0 && xs[i] <= 0.2))
            throw std::invalid_argument("monotonicity_scan: x outside (0, 0.2]");
        if (i && !(xs[i] < xs[i - 1]))
            throw std::invalid_argument("monotonicity_scan: x-grid must be descending");
    }
    MonotonicityReport r;
    r.m = m;
    r.x = xs;
    const int am = std::abs(m);
    for (double x : xs)
        r.abs_c.push_back(std::abs(cm_fft(x, am, 16 * std::int64_t(1) << int(std::ceil(std::log2(am)))).at(am)));
    // walk back from the smallest x while |c_m| keeps decreasing towards it
    std::size_t start = xs.size() - 1;
    while (start > 0 && r.abs_c[start] < r.abs_c[start - 1])
        --start;
    r.monotone_all = start == 0;
    r.monotone_tail = start + 1 < xs.size();
    r.threshold = r.monotone_tail ? xs[start] : 0;
    r.verdict = r.monotone_all ? "monotone" : r.monotone_tail ? "monotone-tail" : "inconclusive";
    return r;
}

} // namespace orthoasym
