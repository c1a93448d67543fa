#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "orthoasym/coeffs.hpp"
#include "orthoasym/limits.hpp"

namespace orthoasym {

/// A finite trigonometric sum f(t) = sum_k q_k e^{i omega_k t}.
class TrigSignal {
public:
    struct Term {
        double omega;
        std::complex<double> q;
    };

    TrigSignal() = default;
    /// Throws std::invalid_argument on repeated or non-finite frequencies.
    explicit TrigSignal(std::vector<Term> terms);
    static TrigSignal exponential(double omega, std::complex<double> q = 1.0);

    const std::vector<Term>& terms() const { return terms_; }
    double band() const;
    bool is_zero() const;
    std::complex<double> operator()(double t) const;
    /// D_t: each amplitude multiplied by i omega_k.
    TrigSignal derivative() const;

    TrigSignal operator+(const TrigSignal& g) const;
    TrigSignal operator*(std::complex<double> a) const;

    /// Config form: list of {omega, re, im}.
    static TrigSignal from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

private:
    std::vector<Term> terms_;
};

/// K_n[f]: amplitudes multiplied by i^n p_n(omega_k); n = -1 gives the zero signal.
TrigSignal apply_K(const CoefficientFamily& fam, index_t n, const TrigSignal& f);

/// gamma_n (|K_n f(t)|^2 + |K_{n+1} f(t)|^2).
double local_energy(const CoefficientFamily& fam, const TrigSignal& f, index_t n, double t);

/// nu_n^f(t) for n = 0..N.
std::vector<double> nu_seq(const CoefficientFamily& fam, const TrigSignal& f, index_t N, double t);

/// sigma_N^{fg}(t) = sum_k K_k[f](t) conj(K_k[g](t)) / sum 1/gamma_k.
std::complex<double> inner_product(const CoefficientFamily& fam, const TrigSignal& f, const TrigSignal& g, index_t N,
                                   double t);

struct NormReport {
    LimitEstimate estimate; ///< of the norm itself (value = sqrt of the nu limit)
    double nu_limit = 0;    ///< estimated limit of nu^f at t = 0
    double t_spread = 0;    ///< relative spread of nu_N^f over a 5-point t-grid
    nlohmann::json to_json() const;
};

/// sqrt of the limit of nu_n^f(0), estimated like ratio_limit.
NormReport norm(const CoefficientFamily& fam, const TrigSignal& f, index_t N, double max_fluctuation = 0.05);

struct CDCheck {
    double max_abs = 0;  ///< max |lhs - rhs| over the grid
    double max_rel = 0;  ///< max_abs / magnitude of the summands
};

/// Both sides of the operator Christoffel-Darboux identity on a t-grid.
CDCheck operator_cd_check(const CoefficientFamily& fam, const TrigSignal& f, const TrigSignal& g, index_t n,
                          const std::vector<double>& ts);

/// Max termwise residual of gamma_n K_{n+1} = D_t K_n + gamma_{n-1} K_{n-1}, n = 0..N.
double operator_recurrence_residual(const CoefficientFamily& fam, const TrigSignal& f, index_t N);

struct OrthogonalityReport {
    double omega = 0, sigma = 0;
    std::vector<index_t> n;
    std::vector<double> ratio; ///< sum p_k(omega) p_k(sigma) / sum 1/gamma_k
    std::vector<double> bound; ///< gamma_n |p_{n+1}(w)p_n(s) - p_{n+1}(s)p_n(w)| / |w - s| / sum 1/gamma_k

    /// |ratio| at the checkpoint nearest to n.
    double ratio_at(index_t n) const;
    std::string to_csv() const; ///< n,ratio,bound
    nlohmann::json to_json() const;
};

/// Checkpoints at 1, 2, 5 times powers of ten up to N, plus N.
OrthogonalityReport orthogonality_check(const CoefficientFamily& fam, double omega, double sigma, index_t N);

} // namespace orthoasym
