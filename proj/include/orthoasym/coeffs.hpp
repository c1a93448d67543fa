#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "orthoasym/quad.hpp"

namespace orthoasym {

using index_t = std::int64_t;

enum class FamilyKind { PowerLaw, HermiteExact, FreudLeading, DetourPerturbed, CustomTable };
enum class OffsetKind { Zero, RhoProportional, CustomTable };

std::string to_string(FamilyKind k);
std::string to_string(OffsetKind k);

/// Bad configuration value; `key` is the dotted path of the offending entry.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& what)
        : std::runtime_error(key + ": " + what), key_(std::move(key))
    {
    }
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

/**
 * Generator of recursion coefficients gamma_n (and optional offsets beta_n).
 *
 * Immutable after construction; copies share the nested base and tables.
 * gamma(-1) is always 1.
 */
class CoefficientFamily {
public:
    static CoefficientFamily power_law(double c, double p);
    static CoefficientFamily hermite_exact();
    static CoefficientFamily freud_leading(double beta_w);
    static CoefficientFamily detour(const CoefficientFamily& base, index_t period, index_t depth);
    static CoefficientFamily custom_table(std::vector<double> table);

    CoefficientFamily with_rho_offsets(double rho) const;
    CoefficientFamily with_offset_table(std::vector<double> table) const;
    CoefficientFamily without_offsets() const;

    double gamma(index_t n) const { return gamma_as<double>(n); }
    quad gamma_q(index_t n) const { return gamma_as<quad>(n); }

    template <class R>
    R gamma_as(index_t n) const;

    /// beta_n of the non-symmetric recurrence.
    double offset(index_t n) const;

    /// Largest valid index, or -1 when unbounded.
    index_t max_index() const;
    /// Detour index map sigma(n); identity for the other kinds.
    index_t base_index(index_t n) const;

    FamilyKind kind() const { return kind_; }
    OffsetKind offset_kind() const { return offset_kind_; }
    double c() const { return c_; }
    double p() const { return p_; }
    double beta_w() const { return beta_w_; }
    double rho() const { return rho_; }
    index_t period() const { return period_; }
    index_t depth() const { return depth_; }
    const CoefficientFamily& base() const;
    const std::vector<double>& table() const;

    /// Short stable identifier used in reports, e.g. "power-law(c=1,p=0.5)".
    std::string id() const;

    nlohmann::json to_config() const;
    /// Parses the key-value config. Errors carry key paths relative to `prefix`.
    static CoefficientFamily from_config(const nlohmann::json& cfg, const std::string& prefix = "family");

private:
    CoefficientFamily() = default;
    double base_gamma_double(index_t n) const;

    FamilyKind kind_ = FamilyKind::HermiteExact;
    double c_ = 1, p_ = 0.5, beta_w_ = 2;
    index_t period_ = 0, depth_ = 0;
    std::shared_ptr<const CoefficientFamily> base_;
    std::shared_ptr<const std::vector<double>> table_;
    OffsetKind offset_kind_ = OffsetKind::Zero;
    double rho_ = 0;
    std::shared_ptr<const std::vector<double>> offset_table_;
};

template <class R>
R CoefficientFamily::gamma_as(index_t n) const
{
    using std::pow;
    using std::sqrt;
    if (n == -1)
        return R(1);
    if (n < -1)
        throw std::out_of_range("gamma: index below -1");
    switch (kind_) {
    case FamilyKind::PowerLaw:
        return R(c_) * pow(R(n + 1), R(p_));
    case FamilyKind::HermiteExact:
        return sqrt(R(n + 1) / R(2));
    case FamilyKind::FreudLeading:
        return pow(R(n + 1), R(1) / R(beta_w_)) / R(2);
    case FamilyKind::DetourPerturbed:
        return base_->gamma_as<R>(base_index(n));
    case FamilyKind::CustomTable:
        if (n >= index_t(table_->size()))
            throw std::out_of_range("gamma: index " + std::to_string(n) + " beyond custom table of length " +
                                    std::to_string(table_->size()));
        return R((*table_)[std::size_t(n)]);
    }
    return R(0);
}

struct Differences {
    double s = 0;  ///< gamma_{n+1} - gamma_n
    double ds = 0; ///< s_{n+1} - s_n
};

Differences finite_differences(const CoefficientFamily& f, index_t n);

/// epsilon_n = (gamma_{2n-2} gamma_{2n} - gamma_{2n-1}^2) / gamma_{2n-1}, n >= 1.
double epsilon(const CoefficientFamily& f, index_t n);
/// The equivalent finite-difference form ds_{2n-2} - s_{2n-2} s_{2n-1} / gamma_{2n-1}.
double epsilon_identity(const CoefficientFamily& f, index_t n);
/// eta_n = |s_{2n-4}| + |s_{2n-3}| + |s_{2n-2}| + |s_{2n-1}|, n >= 2.
double eta(const CoefficientFamily& f, index_t n);

template <class R>
R diff_s(const CoefficientFamily& f, index_t n)
{
    return f.gamma_as<R>(n + 1) - f.gamma_as<R>(n);
}
template <class R>
R diff_ds(const CoefficientFamily& f, index_t n)
{
    return diff_s<R>(f, n + 1) - diff_s<R>(f, n);
}
template <class R>
R eta_as(const CoefficientFamily& f, index_t n)
{
    using std::abs;
    return abs(diff_s<R>(f, 2 * n - 4)) + abs(diff_s<R>(f, 2 * n - 3)) + abs(diff_s<R>(f, 2 * n - 2)) +
           abs(diff_s<R>(f, 2 * n - 1));
}

enum class Status { Consistent, Violated, Inconclusive };
std::string to_string(Status s);

struct ConditionEntry {
    std::string id;        ///< "C1".."C7"
    std::string statement; ///< short human-readable condition
    Status status = Status::Inconclusive;
    index_t witness = -1;  ///< concrete index when violated
    std::map<std::string, double> diagnostics;
};

/// Finite-horizon heuristic report; it never claims a condition is proven.
struct ConditionReport {
    index_t horizon = 0;
    std::vector<ConditionEntry> entries;
    index_t n0 = 0;
    index_t m0 = 1;
    double kappa = 0; ///< 0 when none detected

    const ConditionEntry& at(const std::string& id) const;
    bool any_violated() const;
    bool all_consistent() const;
    nlohmann::json to_json() const;
};

ConditionReport check_conditions(const CoefficientFamily& f, index_t horizon);

/// An operation refused its input (family fails a condition, range too small, ...).
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Throws PreconditionError("rejected: family fails Ck") for the first violated condition.
void require_conditions(const CoefficientFamily& f, index_t horizon);

} // namespace orthoasym
