#include "orthoasym/phase.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "orthoasym/recurrence.hpp"

namespace orthoasym {

using cd = std::complex<double>;

ABPair<double> ab_coefficients(const CoefficientFamily& f, double omega, index_t n)
{
    if (n < 1)
        throw std::invalid_argument("ab_coefficients: n must be >= 1");
    return ab_as<double>(f, omega, n);
}

namespace {

// p_0 .. p_{last} for a symmetric run.
std::vector<double> poly_values(const CoefficientFamily& f, double omega, index_t last)
{
    std::vector<double> p(std::size_t(last + 1));
    run_recurrence(f, omega, std::max<index_t>(last - 1, 0), false, [&](index_t n, double pn, double pn1, double) {
        p[std::size_t(n)] = pn;
        if (n + 1 <= last)
            p[std::size_t(n + 1)] = pn1;
        return true;
    });
    return p;
}

inline double sign_of(index_t n) { return (n & 1) ? -1.0 : 1.0; }

} // namespace

cd en_direct(const CoefficientFamily& f, double omega, index_t n)
{
    if (n < 0)
        throw std::invalid_argument("en_direct: n must be >= 0");
    auto p = poly_values(f, omega, 2 * n + 1);
    return sign_of(n) * cd(p[std::size_t(2 * n)], p[std::size_t(2 * n + 1)]);
}

cd en_two_term_step(cd a, cd b, cd e_prev)
{
    if (e_prev == cd(0, 0))
        throw std::domain_error("en_two_term_step: E_prev is zero, phase undefined");
    return a * e_prev + b * std::conj(e_prev);
}

double lambda_seq(const CoefficientFamily& f, index_t n, int shift)
{
    if (n < 0)
        throw std::invalid_argument("lambda_seq: n must be >= 0");
    const index_t k = 2 * n + shift;
    const double den = 1.0 / f.gamma(k) + 1.0 / f.gamma(k + 1);
    if (n == 0)
        return 1.0 / den;
    return (1.0 / f.gamma(k - 2) + 1.0 / f.gamma(k - 1)) / den;
}

std::string to_string(Parity p) { return p == Parity::EvenPair ? "even-pair" : "odd-pair"; }

std::string PhaseTrace::to_csv() const
{
    std::ostringstream os;
    os << "n,abs_E,phi,delta,mu,S\n";
    for (std::size_t i = 0; i < Phi.size(); ++i)
        os << i << ',' << fmt17(E_abs[i]) << ',' << fmt17(Phi[i]) << ',' << fmt17(Delta[i]) << ',' << fmt17(mu[i])
           << ',' << fmt17(S[i]) << '\n';
    return os.str();
}

PhaseTrace unwind_phase(const CoefficientFamily& f, double omega, index_t N, Parity parity)
{
    if (!(omega > 0))
        throw std::invalid_argument("unwind_phase: omega must be positive (use the symmetry p_n(-w) = (-1)^n p_n(w))");
    if (N < 0)
        throw std::invalid_argument("unwind_phase: N must be >= 0");
    const int shift = parity == Parity::OddPair ? 1 : 0;
    const auto p = poly_values(f, omega, 2 * N + 1 + shift);
    auto E = [&](index_t n) {
        return sign_of(n) * cd(p[std::size_t(2 * n + shift)], p[std::size_t(2 * n + 1 + shift)]);
    };

    PhaseTrace tr;
    tr.omega = omega;
    tr.parity = parity;
    const std::size_t sz = std::size_t(N + 1);
    tr.E_abs.resize(sz);
    tr.Phi.resize(sz);
    tr.Delta.resize(sz);
    tr.mu.resize(sz);
    tr.S.resize(sz);

    std::vector<ABPair<double>> ab(sz);
    for (index_t n = 1; n <= N; ++n)
        ab[std::size_t(n)] = ab_as<double>(f, omega, n, shift);
    tr.burn_in = N + 1;
    for (index_t n = N; n >= 1; --n) {
        const auto& c = ab[std::size_t(n)];
        if (c.a.imag() > std::abs(c.b))
            tr.burn_in = n;
        else
            break;
    }

    constexpr double two_pi = 2 * std::numbers::pi;
    CompensatedSum<double> phi, logmu, S;
    const cd e0 = E(0);
    {
        double a0 = std::arg(e0);
        if (a0 <= 0)
            a0 += two_pi;
        phi.add(a0);
        tr.Phi[0] = phi.value();
        tr.Delta[0] = a0;
        tr.mu[0] = std::abs(e0);
        tr.E_abs[0] = tr.mu[0];
        logmu.add(std::log(tr.mu[0]));
        S.add(2 * std::log(tr.mu[0]) + std::log(lambda_seq(f, 0, shift)));
        tr.S[0] = S.value();
    }
    for (index_t n = 1; n <= N; ++n) {
        const std::size_t i = std::size_t(n);
        const cd ep = E(n - 1), en = E(n);
        tr.E_abs[i] = std::abs(en);
        if (ep == cd(0, 0)) {
            // phase undefined for one step; continue from the direct value
            tr.zero_pairs.push_back(n - 1);
            double a = std::arg(en) - std::fmod(tr.Phi[i - 1], two_pi);
            a = std::fmod(a, two_pi);
            if (a <= 0)
                a += two_pi;
            tr.Delta[i] = a;
            phi.add(a);
            tr.Phi[i] = phi.value();
            tr.mu[i] = std::numeric_limits<double>::quiet_NaN();
            tr.S[i] = tr.S[i - 1];
            continue;
        }
        // e^{-2 i Phi_{n-1}} = conj(E_{n-1}) / E_{n-1}
        const cd rot = std::conj(ep) / ep;
        const cd z = ab[i].a + ab[i].b * rot;
        const double m = std::abs(z);
        double d = std::arg(z);
        if (n >= tr.burn_in) {
            if (!(d > 0 && d < std::numbers::pi))
                throw PhaseError(n, "Delta outside (0, pi) after burn-in");
        } else if (d <= 0) {
            d += two_pi;
        }
        tr.Delta[i] = d;
        phi.add(d);
        tr.Phi[i] = phi.value();
        tr.mu[i] = m;
        logmu.add(std::log(m));
        S.add(2 * std::log(m) + std::log(lambda_seq(f, n, shift)));
        tr.S[i] = S.value();

        const double rec = std::exp(logmu.value());
        const double err = std::abs(rec - tr.E_abs[i]) / tr.E_abs[i];
        tr.max_reconstruction_error = std::max(tr.max_reconstruction_error, err);
        if (err > 1e-8)
            throw PhaseError(n, "reconstructed |E_n| disagrees with the direct value");
    }
    return tr;
}

DeltaAsymptotics delta_asymptotics(const CoefficientFamily& f, double omega, double tol, index_t min_pairs,
                                   index_t max_pairs)
{
    if (!(omega > 0))
        throw std::invalid_argument("delta_asymptotics: omega must be positive");
    constexpr double two_pi = 2 * std::numbers::pi;
    DeltaAsymptotics out;
    index_t last_bad = -1;
    double g_odd = 1, prev_delta = 0;
    cd e_prev;
    // residual envelope per dyadic block [2^k, 2^{k+1})
    std::vector<double> blk_res(64, 0.0), blk_g(64, 0.0);
    std::vector<index_t> blk_end(64, 0);
    run_recurrence(f, omega, 2 * max_pairs + 1, false, [&](index_t k, double pk, double pk1, double gk) {
        if (k & 1) {
            g_odd = gk;
            return true;
        }
        const index_t n = k / 2;
        const cd e = sign_of(n) * cd(pk, pk1);
        out.horizon = n;
        if (n >= 1 && e_prev != cd(0, 0)) {
            double d = std::arg(e * std::conj(e_prev));
            if (d <= 0)
                d += two_pi;
            const double ratio = d * g_odd / omega;
            out.last_ratio = ratio;
            if (std::abs(ratio - 1) > tol)
                last_bad = n;
            if (n >= 2) {
                const double res = std::abs(prev_delta + d - 2 * omega / g_odd);
                int b = 0;
                while ((index_t(2) << b) <= n)
                    ++b;
                if (blk_g[std::size_t(b)] == 0)
                    blk_g[std::size_t(b)] = g_odd;
                blk_res[std::size_t(b)] = std::max(blk_res[std::size_t(b)], res);
                blk_end[std::size_t(b)] = n;
            }
            prev_delta = d;
        }
        e_prev = e;
        if (n >= min_pairs && n >= 2 * (last_bad + 1)) {
            out.found = true;
            return false;
        }
        return true;
    });
    out.N0 = last_bad + 1;
    std::vector<double> lx, ly;
    for (int b = 4; b < 64; ++b) {
        const index_t full_end = (index_t(2) << b) - 1;
        if (blk_g[std::size_t(b)] == 0 || blk_end[std::size_t(b)] < full_end)
            continue;
        if (omega / blk_g[std::size_t(b)] >= 0.25 || blk_res[std::size_t(b)] <= 0)
            continue;
        out.block_gamma.push_back(blk_g[std::size_t(b)]);
        out.block_residual.push_back(blk_res[std::size_t(b)]);
        lx.push_back(std::log(blk_g[std::size_t(b)]));
        ly.push_back(std::log(blk_res[std::size_t(b)]));
    }
    if (lx.size() >= 3 && lx.back() - lx.front() > std::log(2.0)) {
        out.sum_fit = fit_line(lx, ly);
        out.sum_order = -out.sum_fit.slope;
    }
    return out;
}

} // namespace orthoasym
