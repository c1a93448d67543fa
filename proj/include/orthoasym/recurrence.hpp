#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "orthoasym/coeffs.hpp"
#include "orthoasym/numeric.hpp"

namespace orthoasym {

/// Non-finite polynomial value; `index` is the first bad n.
class OverflowError : public std::runtime_error {
public:
    OverflowError(index_t index, double omega)
        : std::runtime_error("non-finite p_n at n = " + std::to_string(index) + " (omega = " + fmt17(omega) + ")"),
          index_(index)
    {
    }
    index_t index() const { return index_; }

private:
    index_t index_;
};

struct CheckpointRow {
    index_t n = 0;
    double p_n = 0, p_np1 = 0, sum_p2 = 0, sum_invgamma = 0;
};

struct EvalTrace {
    index_t n = 0;          ///< last index reached (N)
    double p_prev = 0;      ///< p_{N-1}
    double p_curr = 1;      ///< p_N
    double p_next = 0;      ///< p_{N+1}
    double sum_p2 = 0;      ///< sum_{k<=N} p_k^2
    double sum_invgamma = 0;///< sum_{k<=N} 1/gamma_k
    double omega = 0;
    index_t stride = 1;
    std::vector<CheckpointRow> rows;

    std::string to_csv() const;
};

/**
 * Streaming driver for
 *   gamma_n p_{n+1} = (omega + beta_n) p_n - gamma_{n-1} p_{n-1},  p_{-1} = 0, p_0 = 1.
 * `visit(n, p_n, p_{n+1}, gamma_n)` is called for n = 0..N; returning false stops early.
 * With `use_offsets` false, beta_n is never consulted.
 */
template <class Visit>
void run_recurrence(const CoefficientFamily& f, double omega, index_t N, bool use_offsets, Visit&& visit)
{
    double pm = 0.0, pc = 1.0;
    double gprev = f.gamma(-1);
    for (index_t n = 0; n <= N; ++n) {
        const double gn = f.gamma(n);
        const double w = use_offsets ? omega + f.offset(n) : omega;
        const double pn = (w * pc - gprev * pm) / gn;
        if (!std::isfinite(pn))
            throw OverflowError(n + 1, omega);
        if (!visit(n, pc, pn, gn))
            return;
        pm = pc;
        pc = pn;
        gprev = gn;
    }
}

EvalTrace eval_symmetric(const CoefficientFamily& f, double omega, index_t N, index_t stride);
EvalTrace eval_nonsymmetric(const CoefficientFamily& f, double omega, index_t N, index_t stride);

/// Relative residual of the two-point Christoffel-Darboux identity at level n.
double cd_residual(const CoefficientFamily& f, double omega, double sigma, index_t n);

/// nu_n = sum p_k^2 / sum 1/gamma_k at checkpoints (every `stride`, plus N).
std::vector<std::pair<index_t, double>> christoffel_ratio(const CoefficientFamily& f, double omega, index_t N,
                                                          index_t stride = 0);

} // namespace orthoasym
