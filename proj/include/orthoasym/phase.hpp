#pragma once

#include <complex>
#include <string>
#include <vector>

#include "orthoasym/coeffs.hpp"
#include "orthoasym/numeric.hpp"
#include "orthoasym/quad.hpp"

namespace orthoasym {

template <class R>
struct ABPair {
    complex_t<R> a, b;
};

/// a_n, b_n from g0 = gamma_{2n-2}, g1 = gamma_{2n-1}, g2 = gamma_{2n}.
template <class R>
ABPair<R> ab_from_gammas(const R& g0, const R& g1, const R& g2, const R& w)
{
    const R w2 = w * w / (R(2) * g1 * g2);
    const R r1 = g1 / (R(2) * g2);
    const R r2 = g0 / (R(2) * g1);
    const R i1 = w / (R(2) * g1);
    const R i2 = w * g0 / (R(2) * g1 * g2);
    return {complex_t<R>(-w2 + r1 + r2, i1 + i2), complex_t<R>(w2 - r1 + r2, -i1 + i2)};
}

/// a_n, b_n of the pair decomposition; `shift` = 1 selects the odd pairing.
template <class R>
ABPair<R> ab_as(const CoefficientFamily& f, const R& w, index_t n, int shift = 0)
{
    const index_t k = 2 * n - 2 + shift;
    return ab_from_gammas<R>(f.gamma_as<R>(k), f.gamma_as<R>(k + 1), f.gamma_as<R>(k + 2), w);
}

ABPair<double> ab_coefficients(const CoefficientFamily& f, double omega, index_t n);

/// E_n = (-1)^n (p_{2n} + i p_{2n+1}) from a three-term run.
std::complex<double> en_direct(const CoefficientFamily& f, double omega, index_t n);

/// a E + b conj(E). Throws std::domain_error when E_prev == 0 (phase undefined).
std::complex<double> en_two_term_step(std::complex<double> a, std::complex<double> b, std::complex<double> e_prev);

/// lambda_0 = 1/(1/g0 + 1/g1); lambda_n = (1/g_{2n-2} + 1/g_{2n-1}) / (1/g_{2n} + 1/g_{2n+1}).
double lambda_seq(const CoefficientFamily& f, index_t n, int shift = 0);

enum class Parity { EvenPair, OddPair };
std::string to_string(Parity p);

class PhaseError : public std::runtime_error {
public:
    PhaseError(index_t index, const std::string& what)
        : std::runtime_error(what + " at n = " + std::to_string(index)), index_(index)
    {
    }
    index_t index() const { return index_; }

private:
    index_t index_;
};

struct PhaseTrace {
    double omega = 0;
    Parity parity = Parity::EvenPair;
    index_t burn_in = 0; ///< from here on Im a_n > |b_n| for every recorded n
    std::vector<double> E_abs, Phi, Delta, mu, S;
    std::vector<index_t> zero_pairs; ///< indices where E_n == 0 was met
    double max_reconstruction_error = 0;

    index_t size() const { return index_t(Phi.size()); }
    std::string to_csv() const;
};

/// Unwound phase for pairs n = 0..N. omega must be positive.
PhaseTrace unwind_phase(const CoefficientFamily& f, double omega, index_t N, Parity parity = Parity::EvenPair);

/**
 * Streaming check that Delta_n gamma_{2n-1}/omega stays within 1 +- tol from some N0 on,
 * plus the decay order of |Delta_{n-1} + Delta_n - 2 omega/gamma_{2n-1}|.
 * The run stops once n >= max(min_pairs, 2*N0) or at max_pairs.
 */
struct DeltaAsymptotics {
    bool found = false;        ///< N0 confirmed over [N0, 2 N0]
    index_t N0 = 0;
    index_t horizon = 0;       ///< pairs actually examined
    double last_ratio = 0;
    LineFit sum_fit;           ///< log residual envelope vs log gamma_{2n-1}
    double sum_order = 0;      ///< -sum_fit.slope
    std::vector<double> block_gamma, block_residual;
};

DeltaAsymptotics delta_asymptotics(const CoefficientFamily& f, double omega, double tol, index_t min_pairs,
                                   index_t max_pairs);

} // namespace orthoasym
