#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "orthoasym/coeffs.hpp"
#include "orthoasym/numeric.hpp"

namespace orthoasym {

enum class LimitMethod { TailAverage, Cesaro, Ratio };
std::string to_string(LimitMethod m);

struct LimitEstimate {
    double value = 0;
    index_t n_lo = 0, n_hi = 0;
    double fluctuation = 0; ///< (max - min)/value over the window
    LimitMethod method = LimitMethod::Ratio;
    bool converged = false;

    nlohmann::json to_json() const;
};

struct LimitOptions {
    double max_fluctuation = 0.05;
    double equality_tolerance = 0.02;
    bool check_family = true;
    index_t condition_horizon = 100000;
};

/// Cesaro-smoothed tail average of gamma_n (p_n^2 + p_{n+1}^2) over [N/2, N]. N >= 10^4.
LimitEstimate beta_limit(const CoefficientFamily& f, double omega, index_t N, const LimitOptions& opt = {});

/**
 * Limit of nu_n = sum p_k^2 / sum 1/gamma_k. The window [N/2, N] is fitted by
 * nu = L + A / D_n (D_n = sum 1/gamma_k) and L is reported; the fluctuation is
 * the raw spread of nu over the window. N = 0 returns gamma_0, unconverged.
 */
LimitEstimate ratio_limit(const CoefficientFamily& f, double omega, index_t N, const LimitOptions& opt = {});

/// The ratio_limit estimator on given samples nu_n and 1/D_n from the window [lo, hi].
LimitEstimate ratio_window_estimate(const std::vector<double>& inv_d, const std::vector<double>& nu, index_t lo,
                                    index_t hi, double max_fluctuation);

/// |ratio - beta/2| / ratio.
double limit_equality_gap(const LimitEstimate& ratio, const LimitEstimate& beta);

struct GrowthFit {
    double exponent = 0;
    double expected = 0; ///< 1 - p
    LineFit fit;
};

/// Slope of log sum p_k^2 vs log(n+1) over [N/100, N]. Power-law families only, N >= 10^5.
GrowthFit growth_exponent(const CoefficientFamily& f, double omega, index_t N);

struct UniformityPoint {
    double omega = 0;
    bool ok = false;       ///< false when the estimate failed (see error)
    LimitEstimate estimate;
    std::string error;
};

struct UniformityReport {
    std::string family;
    double B = 0;
    index_t N = 0;
    std::vector<UniformityPoint> points;
    double m_B = 0, M_B = 0;     ///< min/max over converged points
    double max_fluctuation = 0;
    bool all_converged = false;

    nlohmann::json to_json() const;
};

/// ratio_limit on `points` equispaced omegas in [-B, B] (points >= 16).
UniformityReport uniformity_scan(const CoefficientFamily& f, double B, int points, index_t N,
                                 const LimitOptions& opt = {}, unsigned workers = 0);

enum class Stability { Stable, Unstable, Inconclusive };
std::string to_string(Stability s);

struct StabilityVerdict {
    double rho = 0;
    Stability classification = Stability::Inconclusive;
    bool overflow = false;
    index_t overflow_index = -1;
    double tail_change = 0;     ///< |nu_N - nu_{N/10}| / nu_N
    double width_start = 0;     ///< mean relative envelope width near N/10
    double width_end = 0;       ///< same over the last windows
    std::string reason;
    std::vector<index_t> n;     ///< window ends
    std::vector<double> env_lo, env_hi, nu;

    /// "stable", "unstable", "unstable-overflow" or "inconclusive".
    std::string label() const;
    std::string to_csv() const; ///< n,env_lo,env_hi,nu
    nlohmann::json to_json(double omega) const;
};

struct ConjectureOptions {
    double max_tail_change = 0.05;
    index_t windows = 100;
};

/// Non-symmetric runs with beta_n = rho gamma_n for each rho in the grid.
std::vector<StabilityVerdict> conjecture_scan(const CoefficientFamily& f, const std::vector<double>& rhos,
                                              double omega, index_t N, const ConjectureOptions& opt = {},
                                              unsigned workers = 0);

} // namespace orthoasym
