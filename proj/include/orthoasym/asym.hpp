#pragma once

#include <complex>
#include <string>
#include <vector>

#include <json.hpp>

#include "orthoasym/coeffs.hpp"
#include "orthoasym/kernels.hpp"
#include "orthoasym/numeric.hpp"
#include "orthoasym/phase.hpp"

namespace orthoasym {

// Kernel functions; |x| < 1/4 is required (std::domain_error otherwise).
double f_kernel(double x, double t);
double g_kernel(double x, double t);
double h_kernel(double x, double t);
/// The simplified log/arctan form of h, for cross-checking.
double h_kernel_simplified(double x, double t);
std::complex<double> l_kernel(long m, double x, double t);
std::complex<double> eps_kernel(long m, double x, double t);

template <class R>
struct FGHValues {
    R F{}, G{}, H{};
    R cut_distance{}; ///< min over the log arguments of pi - |arg z|
};

/// F_n(t), G_n(t), H_n(t) evaluated exactly from a_n, b_n, a_{n-1}, b_{n-1}, lambda_{n-1}.
template <class R>
FGHValues<R> fgh_exact_as(const CoefficientFamily& f, const R& w, index_t n, const R& t)
{
    using C = complex_t<R>;
    using std::abs;
    using std::log;
    const auto cur = ab_as<R>(f, w, n);
    const auto prev = ab_as<R>(f, w, n - 1);
    const C e = cis(t), em = cis(R(-t));
    const C z1 = cur.a + cur.b * em;               // a_n + b_n e^{-it}
    const C z1c = conj(cur.a) + conj(cur.b) * e;   // its conjugate
    const C z2 = prev.a - conj(prev.b) * e;        // a_{n-1} - conj(b_{n-1}) e^{it}
    const C z2c = conj(prev.a) - prev.b * em;
    const R g4 = f.gamma_as<R>(2 * n - 4), g3 = f.gamma_as<R>(2 * n - 3);
    const R g2 = f.gamma_as<R>(2 * n - 2), g1 = f.gamma_as<R>(2 * n - 1);
    const R lam = (R(1) / g4 + R(1) / g3) / (R(1) / g2 + R(1) / g1);
    const R ab2 = abs(prev.a) * abs(prev.a) - abs(prev.b) * abs(prev.b);
    const C L1c = log(z1c), L1 = log(z1), L2c = log(z2c), L2 = log(z2);
    const C I(0, 1);
    FGHValues<R> out;
    out.F = (C(R(2) * log(ab2) + R(2) * log(lam)) + L1c + L1 - L2c - L2).real();
    out.G = (I * (L1c - L1 + L2c - L2)).real();
    out.H = out.F / out.G;
    const R pi = pi_v<R>();
    out.cut_distance = pi;
    for (const C* z : {&z1, &z1c, &z2, &z2c}) {
        using std::atan2;
        const R d = pi - abs(atan2(z->imag(), z->real()));
        if (d < out.cut_distance)
            out.cut_distance = d;
    }
    return out;
}

/// L_n(m,t) from the exact a, b coefficients.
template <class R>
complex_t<R> Ln_exact_as(const CoefficientFamily& f, const R& w, index_t n, long m, const R& t)
{
    using C = complex_t<R>;
    const auto cur = ab_as<R>(f, w, n);
    const auto prev = ab_as<R>(f, w, n - 1);
    const C e = cis(t), em = cis(R(-t));
    const C r1 = (conj(prev.a) - prev.b * em) / (prev.a - conj(prev.b) * e);
    const C r2 = (cur.a + cur.b * em) / (conj(cur.a) + conj(cur.b) * e);
    return C(0, 1) * (ipow(r1, m) - ipow(r2, m));
}

struct FGHResult {
    double F = 0, G = 0, H = 0;
    double x = 0;             ///< omega / gamma_{2n-1}
    bool in_disc = true;      ///< |x| < 1/4
    bool near_cut = false;    ///< some log argument within 1e-12 of the branch cut
    double cut_distance = 0;
};

FGHResult Fn_Gn_Hn_exact(const CoefficientFamily& f, double omega, index_t n, double t);

// ---------------------------------------------------------------------------
// lemma residual campaign

const std::vector<std::string>& lemma_ids();

enum class Verdict { Consistent, Inconsistent };
std::string to_string(Verdict v);

struct LemmaPart {
    std::string name;
    std::vector<double> residual; ///< per sample index (max over t, and m where applicable)
    std::vector<double> bound;    ///< the displayed order evaluated at each index
    double fit_exponent = 0;      ///< decay exponent of residual vs gamma_{2n-1}
    double fit_stderr = 0;
    double claimed = 0;           ///< decay exponent of the bound vs gamma_{2n-1}
    Verdict verdict = Verdict::Consistent;
};

struct LemmaResidualReport {
    std::string lemma;
    std::string family;
    double omega = 0;
    std::vector<index_t> n;
    std::vector<double> gamma; ///< gamma_{2n-1}
    std::vector<LemmaPart> parts;
    Verdict verdict = Verdict::Consistent;

    /// The part with the smallest margin fit_exponent - claimed.
    const LemmaPart& worst() const;
    nlohmann::json to_json() const;
};

class LemmaPreconditionError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

struct LemmaOptions {
    int t_points = 256;
    std::vector<long> m_values{1, 2, 3};
    double slack = 0.3;
    int min_points = 8;
    double min_gamma_ratio = 8;
    bool check_family = true;
    index_t condition_horizon = 100000;
};

/**
 * Dyadic sample indices n = 2^k starting where omega/gamma_{2n-1} < 1/4 and
 * extending until at least `min_points` + 4 points and a gamma ratio of 16 (k <= 60).
 * Throws LemmaPreconditionError when no index in range satisfies the disc condition.
 */
std::vector<index_t> default_lemma_indices(const CoefficientFamily& f, double omega);

LemmaResidualReport verify_lemma(const std::string& lemma, const CoefficientFamily& f, double omega,
                                 const std::vector<index_t>& indices, const LemmaOptions& opt = {});

} // namespace orthoasym
