#include "orthoasym/coeffs.hpp"

#include <algorithm>
#include <cassert>
#include <cstdio>
#include <limits>

#include "orthoasym/numeric.hpp"

namespace orthoasym {

using nlohmann::json;

std::string to_string(FamilyKind k)
{
    switch (k) {
    case FamilyKind::PowerLaw: return "power-law";
    case FamilyKind::HermiteExact: return "hermite-exact";
    case FamilyKind::FreudLeading: return "freud-leading";
    case FamilyKind::DetourPerturbed: return "detour-perturbed";
    case FamilyKind::CustomTable: return "custom-table";
    }
    return "?";
}

std::string to_string(OffsetKind k)
{
    switch (k) {
    case OffsetKind::Zero: return "zero";
    case OffsetKind::RhoProportional: return "rho-proportional";
    case OffsetKind::CustomTable: return "custom-table";
    }
    return "?";
}

std::string to_string(Status s)
{
    switch (s) {
    case Status::Consistent: return "consistent";
    case Status::Violated: return "violated";
    case Status::Inconclusive: return "inconclusive";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// construction

CoefficientFamily CoefficientFamily::power_law(double c, double p)
{
    if (!(c > 0) || !std::isfinite(c))
        throw ConfigError("c", "scale must be positive and finite");
    if (!(p > 0 && p < 1))
        throw ConfigError("p", "exponent must lie in (0,1)");
    CoefficientFamily f;
    f.kind_ = FamilyKind::PowerLaw;
    f.c_ = c;
    f.p_ = p;
    return f;
}

CoefficientFamily CoefficientFamily::hermite_exact()
{
    CoefficientFamily f;
    f.kind_ = FamilyKind::HermiteExact;
    return f;
}

CoefficientFamily CoefficientFamily::freud_leading(double beta_w)
{
    if (!(beta_w > 1) || !std::isfinite(beta_w))
        throw ConfigError("beta_w", "weight exponent must exceed 1");
    CoefficientFamily f;
    f.kind_ = FamilyKind::FreudLeading;
    f.beta_w_ = beta_w;
    return f;
}

CoefficientFamily CoefficientFamily::detour(const CoefficientFamily& base, index_t period, index_t depth)
{
    if (depth < 1)
        throw ConfigError("detour.depth", "must be a positive integer");
    if (period < depth + 2)
        throw ConfigError("detour.period", "must be at least detour.depth + 2");
    if (base.kind_ == FamilyKind::CustomTable)
        throw ConfigError("base.kind", "detours over a finite table are not supported");
    CoefficientFamily f;
    f.kind_ = FamilyKind::DetourPerturbed;
    f.base_ = std::make_shared<const CoefficientFamily>(base.without_offsets());
    f.period_ = period;
    f.depth_ = depth;
    return f;
}

CoefficientFamily CoefficientFamily::custom_table(std::vector<double> table)
{
    if (table.empty())
        throw ConfigError("table", "must not be empty");
    for (std::size_t i = 0; i < table.size(); ++i)
        if (!(table[i] > 0) || !std::isfinite(table[i]))
            throw ConfigError("table[" + std::to_string(i) + "]", "entries must be positive and finite");
    CoefficientFamily f;
    f.kind_ = FamilyKind::CustomTable;
    f.table_ = std::make_shared<const std::vector<double>>(std::move(table));
    return f;
}

CoefficientFamily CoefficientFamily::with_rho_offsets(double rho) const
{
    if (!std::isfinite(rho))
        throw ConfigError("offsets.rho", "must be finite");
    CoefficientFamily f = *this;
    f.offset_kind_ = OffsetKind::RhoProportional;
    f.rho_ = rho;
    f.offset_table_.reset();
    return f;
}

CoefficientFamily CoefficientFamily::with_offset_table(std::vector<double> table) const
{
    for (std::size_t i = 0; i < table.size(); ++i)
        if (!std::isfinite(table[i]))
            throw ConfigError("offsets.table[" + std::to_string(i) + "]", "must be finite");
    CoefficientFamily f = *this;
    f.offset_kind_ = OffsetKind::CustomTable;
    f.rho_ = 0;
    f.offset_table_ = std::make_shared<const std::vector<double>>(std::move(table));
    return f;
}

CoefficientFamily CoefficientFamily::without_offsets() const
{
    CoefficientFamily f = *this;
    f.offset_kind_ = OffsetKind::Zero;
    f.rho_ = 0;
    f.offset_table_.reset();
    return f;
}

// ---------------------------------------------------------------------------
// access

index_t CoefficientFamily::base_index(index_t n) const
{
    if (kind_ != FamilyKind::DetourPerturbed || n < 0)
        return n;
    // Each block of `period` base indices is emitted as
    //   k, ..., k+q-d-2, k+q-1, k+q-d-1, ..., k+q-2
    // i.e. jump ahead once, then go back for the d skipped values.
    const index_t q = period_, d = depth_;
    const index_t k = (n / q) * q, r = n % q;
    if (r < q - d - 1)
        return k + r;
    if (r == q - d - 1)
        return k + q - 1;
    return k + r - 1;
}

double CoefficientFamily::offset(index_t n) const
{
    switch (offset_kind_) {
    case OffsetKind::Zero: return 0.0;
    case OffsetKind::RhoProportional: return rho_ * gamma(n);
    case OffsetKind::CustomTable:
        if (n < 0 || n >= index_t(offset_table_->size()))
            throw std::out_of_range("offset: index " + std::to_string(n) + " beyond offset table");
        return (*offset_table_)[std::size_t(n)];
    }
    return 0.0;
}

index_t CoefficientFamily::max_index() const
{
    index_t m = -1;
    if (kind_ == FamilyKind::CustomTable)
        m = index_t(table_->size()) - 1;
    if (offset_kind_ == OffsetKind::CustomTable) {
        index_t mo = index_t(offset_table_->size()) - 1;
        m = m < 0 ? mo : std::min(m, mo);
    }
    return m;
}

const CoefficientFamily& CoefficientFamily::base() const
{
    if (!base_)
        throw std::logic_error("family has no base");
    return *base_;
}

const std::vector<double>& CoefficientFamily::table() const
{
    if (!table_)
        throw std::logic_error("family has no table");
    return *table_;
}

namespace {

std::string short_num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace

std::string CoefficientFamily::id() const
{
    std::string s;
    switch (kind_) {
    case FamilyKind::PowerLaw: s = "power-law(c=" + short_num(c_) + ",p=" + short_num(p_) + ")"; break;
    case FamilyKind::HermiteExact: s = "hermite-exact"; break;
    case FamilyKind::FreudLeading: s = "freud-leading(beta_w=" + short_num(beta_w_) + ")"; break;
    case FamilyKind::DetourPerturbed:
        s = "detour(q=" + std::to_string(period_) + ",d=" + std::to_string(depth_) + ")[" + base_->id() + "]";
        break;
    case FamilyKind::CustomTable: s = "custom-table(len=" + std::to_string(table_->size()) + ")"; break;
    }
    if (offset_kind_ == OffsetKind::RhoProportional)
        s += "+rho=" + short_num(rho_);
    else if (offset_kind_ == OffsetKind::CustomTable)
        s += "+offset-table";
    return s;
}

// ---------------------------------------------------------------------------
// config

json CoefficientFamily::to_config() const
{
    json j;
    j["kind"] = to_string(kind_);
    switch (kind_) {
    case FamilyKind::PowerLaw:
        j["c"] = c_;
        j["p"] = p_;
        break;
    case FamilyKind::FreudLeading: j["beta_w"] = beta_w_; break;
    case FamilyKind::DetourPerturbed:
        j["base"] = base_->to_config();
        j["detour"] = {{"period", period_}, {"depth", depth_}};
        break;
    case FamilyKind::CustomTable: j["table"] = *table_; break;
    case FamilyKind::HermiteExact: break;
    }
    if (offset_kind_ == OffsetKind::RhoProportional)
        j["offsets"] = {{"kind", "rho-proportional"}, {"rho", rho_}};
    else if (offset_kind_ == OffsetKind::CustomTable)
        j["offsets"] = {{"kind", "custom-table"}, {"table", *offset_table_}};
    return j;
}

namespace {

double get_number(const json& cfg, const std::string& key, const std::string& path, double fallback, bool required)
{
    if (!cfg.contains(key)) {
        if (required)
            throw ConfigError(path, "missing required key");
        return fallback;
    }
    const json& v = cfg.at(key);
    if (!v.is_number())
        throw ConfigError(path, "expected a number");
    return v.get<double>();
}

index_t get_index(const json& cfg, const std::string& key, const std::string& path)
{
    if (!cfg.contains(key))
        throw ConfigError(path, "missing required key");
    const json& v = cfg.at(key);
    if (!v.is_number_integer())
        throw ConfigError(path, "expected an integer");
    return v.get<index_t>();
}

std::vector<double> get_table(const json& cfg, const std::string& key, const std::string& path)
{
    if (!cfg.contains(key))
        throw ConfigError(path, "missing required key");
    const json& v = cfg.at(key);
    if (!v.is_array())
        throw ConfigError(path, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number())
            throw ConfigError(path + "[" + std::to_string(i) + "]", "expected a number");
        out.push_back(v[i].get<double>());
    }
    return out;
}

template <class F>
auto rethrow_prefixed(const std::string& prefix, F&& fn) -> decltype(fn())
{
    try {
        return fn();
    } catch (const ConfigError& e) {
        if (e.key().rfind(prefix, 0) == 0)
            throw;
        std::string what = e.what();
        auto colon = what.find(": ");
        throw ConfigError(prefix + "." + e.key(), colon == std::string::npos ? what : what.substr(colon + 2));
    }
}

} // namespace

CoefficientFamily CoefficientFamily::from_config(const json& cfg, const std::string& prefix)
{
    if (!cfg.is_object())
        throw ConfigError(prefix, "expected an object");
    if (!cfg.contains("kind") || !cfg.at("kind").is_string())
        throw ConfigError(prefix + ".kind", "missing or not a string");
    const std::string kind = cfg.at("kind").get<std::string>();

    CoefficientFamily f = rethrow_prefixed(prefix, [&]() -> CoefficientFamily {
        if (kind == "power-law") {
            double c = get_number(cfg, "c", prefix + ".c", 1.0, false);
            double p = get_number(cfg, "p", prefix + ".p", 0, true);
            return power_law(c, p);
        }
        if (kind == "hermite-exact")
            return hermite_exact();
        if (kind == "freud-leading")
            return freud_leading(get_number(cfg, "beta_w", prefix + ".beta_w", 0, true));
        if (kind == "detour-perturbed") {
            if (!cfg.contains("base"))
                throw ConfigError(prefix + ".base", "missing required key");
            CoefficientFamily base = from_config(cfg.at("base"), prefix + ".base");
            index_t q = 0, d = 0;
            if (cfg.contains("detour")) {
                const json& dj = cfg.at("detour");
                if (!dj.is_object())
                    throw ConfigError(prefix + ".detour", "expected an object");
                q = get_index(dj, "period", prefix + ".detour.period");
                d = get_index(dj, "depth", prefix + ".detour.depth");
            } else {
                // flat dotted keys are accepted too
                q = get_index(cfg, "detour.period", prefix + ".detour.period");
                d = get_index(cfg, "detour.depth", prefix + ".detour.depth");
            }
            return detour(base, q, d);
        }
        if (kind == "custom-table")
            return custom_table(get_table(cfg, "table", prefix + ".table"));
        throw ConfigError(prefix + ".kind", "unknown family kind '" + kind + "'");
    });

    if (cfg.contains("offsets")) {
        const json& oj = cfg.at("offsets");
        if (!oj.is_object() || !oj.contains("kind") || !oj.at("kind").is_string())
            throw ConfigError(prefix + ".offsets.kind", "missing or not a string");
        const std::string ok = oj.at("kind").get<std::string>();
        f = rethrow_prefixed(prefix, [&]() -> CoefficientFamily {
            if (ok == "zero")
                return f.without_offsets();
            if (ok == "rho-proportional")
                return f.with_rho_offsets(get_number(oj, "rho", prefix + ".offsets.rho", 0, true));
            if (ok == "custom-table")
                return f.with_offset_table(get_table(oj, "table", prefix + ".offsets.table"));
            throw ConfigError(prefix + ".offsets.kind", "unknown offsets kind '" + ok + "'");
        });
    }
    return f;
}

// ---------------------------------------------------------------------------
// derived sequences

Differences finite_differences(const CoefficientFamily& f, index_t n)
{
    if (n < 0)
        throw std::out_of_range("finite_differences: n must be >= 0");
    const double g0 = f.gamma(n), g1 = f.gamma(n + 1), g2 = f.gamma(n + 2);
    Differences d;
    d.s = g1 - g0;
    d.ds = (g2 - g1) - d.s;
    return d;
}

double epsilon_identity(const CoefficientFamily& f, index_t n)
{
    const double s0 = diff_s<double>(f, 2 * n - 2);
    const double s1 = diff_s<double>(f, 2 * n - 1);
    return (s1 - s0) - s0 * s1 / f.gamma(2 * n - 1);
}

double epsilon(const CoefficientFamily& f, index_t n)
{
    if (n < 1)
        throw std::out_of_range("epsilon: n must be >= 1");
    const double ga = f.gamma(2 * n - 2), gb = f.gamma(2 * n - 1), gc = f.gamma(2 * n);
    const double e = (ga * gc - gb * gb) / gb;
#ifndef NDEBUG
    // Both forms lose digits to cancellation at the scale of gamma itself.
    const double alt = epsilon_identity(f, n);
    const double scale = std::max({1.0, ga, gb, gc});
    assert(std::abs(e - alt) <= 1e-12 * scale);
#endif
    return e;
}

double eta(const CoefficientFamily& f, index_t n)
{
    if (n < 2)
        throw std::out_of_range("eta: n must be >= 2");
    return eta_as<double>(f, n);
}

// ---------------------------------------------------------------------------
// condition checks

const ConditionEntry& ConditionReport::at(const std::string& id) const
{
    for (const auto& e : entries)
        if (e.id == id)
            return e;
    throw std::out_of_range("no condition " + id);
}

bool ConditionReport::any_violated() const
{
    return std::any_of(entries.begin(), entries.end(), [](const auto& e) { return e.status == Status::Violated; });
}

bool ConditionReport::all_consistent() const
{
    return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.status == Status::Consistent; });
}

json ConditionReport::to_json() const
{
    json j;
    j["horizon"] = horizon;
    j["n0"] = n0;
    j["m0"] = m0;
    j["kappa"] = kappa;
    json arr = json::array();
    for (const auto& e : entries) {
        json ej;
        ej["id"] = e.id;
        ej["statement"] = e.statement;
        ej["status"] = to_string(e.status);
        if (e.witness >= 0)
            ej["witness"] = e.witness;
        json d = json::object();
        for (const auto& [k, v] : e.diagnostics)
            d[k] = v;
        ej["diagnostics"] = d;
        arr.push_back(ej);
    }
    j["conditions"] = arr;
    return j;
}

namespace {

constexpr double kExponentMargin = 0.005;

// Log-spaced sample of indices in [lo, hi].
std::vector<index_t> log_indices(index_t lo, index_t hi, int count)
{
    std::vector<index_t> out;
    const double a = std::log(double(lo)), b = std::log(double(hi));
    for (int i = 0; i < count; ++i) {
        index_t v = index_t(std::llround(std::exp(a + (b - a) * i / (count - 1))));
        if (out.empty() || v > out.back())
            out.push_back(v);
    }
    return out;
}

// Slope of log2(block sum) over the trailing octave blocks of `terms`.
double octave_slope(const std::vector<double>& terms, int blocks, std::vector<double>* sums_out)
{
    const index_t n = index_t(terms.size());
    int top = 0;
    while ((index_t(2) << top) <= n)
        ++top;
    // blocks [2^j, 2^{j+1}) fully inside [0, n)
    std::vector<double> xs, ys;
    for (int j = std::max(1, top - blocks); j < top; ++j) {
        CompensatedSum<double> s;
        for (index_t i = index_t(1) << j; i < (index_t(2) << j); ++i)
            s.add(terms[std::size_t(i)]);
        xs.push_back(j);
        ys.push_back(s.value());
    }
    if (sums_out)
        *sums_out = ys;
    bool all_zero = std::all_of(ys.begin(), ys.end(), [](double v) { return v == 0; });
    if (all_zero)
        return -std::numeric_limits<double>::infinity();
    for (double& y : ys)
        y = std::log2(std::max(y, std::numeric_limits<double>::min()));
    return fit_line(xs, ys).slope;
}

} // namespace

ConditionReport check_conditions(const CoefficientFamily& f, index_t N)
{
    if (N < 100)
        throw std::invalid_argument("check_conditions: horizon must be at least 100");
    if (f.max_index() >= 0 && f.max_index() < N + 2)
        throw std::invalid_argument("check_conditions: horizon " + std::to_string(N) +
                                    " exceeds the custom table (need N+2 <= last index)");
    ConditionReport rep;
    rep.horizon = N;

    std::vector<double> g(std::size_t(N + 3));
    for (index_t n = 0; n <= N + 2; ++n)
        g[std::size_t(n)] = f.gamma(n);
    auto s_at = [&](index_t n) { return g[std::size_t(n + 1)] - g[std::size_t(n)]; };

    // Tail decay exponent of 1/gamma, shared by C1, C4, C5.
    const auto idx = log_indices(std::max<index_t>(N / 10, 1), N, 64);
    std::vector<double> lx, lg;
    for (index_t n : idx) {
        lx.push_back(std::log(double(n + 1)));
        lg.push_back(std::log(g[std::size_t(n)]));
    }
    const double growth = fit_line(lx, lg).slope; // gamma ~ n^growth

    {
        ConditionEntry e{"C1", "gamma_n -> infinity", Status::Inconclusive, -1, {}};
        const double gN = g[std::size_t(N)], gh = g[std::size_t(N / 2)];
        e.diagnostics["tail_loglog_slope"] = growth;
        e.diagnostics["gamma_N"] = gN;
        e.diagnostics["gamma_N_half"] = gh;
        if (growth > 1e-6 && gN > gh)
            e.status = Status::Consistent;
        else if (growth <= 1e-12 && gN <= gh) {
            e.status = Status::Violated;
            e.witness = N;
        }
        rep.entries.push_back(e);
    }
    {
        ConditionEntry e{"C2", "s_n -> 0", Status::Inconclusive, -1, {}};
        double prev = 0, last = 0;
        index_t arg_last = N / 10;
        for (index_t n = std::max<index_t>(N / 100, 0); n < N / 10; ++n)
            prev = std::max(prev, std::abs(s_at(n)));
        for (index_t n = N / 10; n <= N; ++n) {
            double v = std::abs(s_at(n));
            if (v > last) {
                last = v;
                arg_last = n;
            }
        }
        e.diagnostics["max_abs_s_last_decade"] = last;
        e.diagnostics["max_abs_s_previous_decade"] = prev;
        if (last == 0 || last < prev)
            e.status = Status::Consistent;
        else if (last > prev) {
            e.status = Status::Violated;
            e.witness = arg_last;
        }
        rep.entries.push_back(e);
    }
    {
        ConditionEntry e{"C3", "almost increasing", Status::Inconclusive, -1, {}};
        // bad[n] = largest m with gamma_{n+m} <= gamma_n inside the horizon.
        std::vector<double> sufmin(std::size_t(N + 2));
        sufmin[std::size_t(N + 1)] = std::numeric_limits<double>::infinity();
        for (index_t j = N; j >= 0; --j)
            sufmin[std::size_t(j)] = std::min(sufmin[std::size_t(j + 1)], g[std::size_t(j)]);
        std::vector<index_t> bad(std::size_t(N + 1), 0);
        for (index_t n = 0; n < N; ++n) {
            const double gn = g[std::size_t(n)];
            if (sufmin[std::size_t(n + 1)] > gn)
                continue;
            index_t lo = n + 1, hi = N; // sufmin[lo] <= gn, find the last such j
            while (lo < hi) {
                index_t mid = lo + (hi - lo + 1) / 2;
                if (sufmin[std::size_t(mid)] <= gn)
                    lo = mid;
                else
                    hi = mid - 1;
            }
            bad[std::size_t(n)] = lo - n;
        }
        std::vector<index_t> sufmax(std::size_t(N + 2), 0);
        for (index_t n = N; n >= 0; --n)
            sufmax[std::size_t(n)] = std::max(sufmax[std::size_t(n + 1)], bad[std::size_t(n)]);
        const index_t m0_tail = 1 + sufmax[std::size_t(N / 2)];
        index_t n0 = 0;
        while (n0 < N / 2 && 1 + sufmax[std::size_t(n0)] > m0_tail)
            ++n0;
        rep.n0 = n0;
        rep.m0 = m0_tail;
        e.diagnostics["n0"] = double(n0);
        e.diagnostics["m0"] = double(m0_tail);
        e.diagnostics["m0_from_zero"] = double(1 + sufmax[0]);
        if (m0_tail > N / 4) {
            e.status = Status::Violated;
            index_t w = N / 2;
            while (w < N && bad[std::size_t(w)] != m0_tail - 1)
                ++w;
            e.witness = w;
            e.diagnostics["witness_partner"] = double(w + bad[std::size_t(w)]);
        } else if (m0_tail <= std::max<index_t>(10, N / 100))
            e.status = Status::Consistent;
        rep.entries.push_back(e);
    }
    const double decay = growth; // 1/gamma ~ n^-decay
    {
        ConditionEntry e{"C4", "sum 1/gamma_n diverges", Status::Inconclusive, -1, {}};
        CompensatedSum<double> D;
        for (index_t n = 0; n <= N; ++n)
            D.add(1.0 / g[std::size_t(n)]);
        e.diagnostics["term_decay_exponent"] = decay;
        e.diagnostics["partial_sum"] = D.value();
        if (decay < 1 - kExponentMargin)
            e.status = Status::Consistent;
        else if (decay > 1 + kExponentMargin) {
            e.status = Status::Violated;
            e.witness = N;
        }
        rep.entries.push_back(e);
    }
    {
        ConditionEntry e{"C5", "sum gamma_n^-kappa converges for some kappa > 1", Status::Inconclusive, -1, {}};
        e.diagnostics["term_decay_exponent"] = decay;
        if (decay <= 1e-3) {
            e.status = Status::Violated;
            e.witness = N;
        } else {
            for (int k = 2; k <= 1000; ++k)
                if (k * decay > 1 + kExponentMargin) {
                    rep.kappa = k;
                    break;
                }
            if (rep.kappa > 0) {
                e.status = Status::Consistent;
                CompensatedSum<double> S;
                for (index_t n = 0; n <= N; ++n)
                    S.add(std::pow(g[std::size_t(n)], -rep.kappa));
                e.diagnostics["kappa"] = rep.kappa;
                e.diagnostics["partial_sum"] = S.value();
            }
        }
        rep.entries.push_back(e);
    }
    auto tail_test = [&](const char* id, const char* stmt, auto term) {
        ConditionEntry e{id, stmt, Status::Inconclusive, -1, {}};
        std::vector<double> t(std::size_t(N + 1));
        CompensatedSum<double> S;
        for (index_t n = 0; n <= N; ++n) {
            t[std::size_t(n)] = term(n);
            S.add(t[std::size_t(n)]);
        }
        std::vector<double> sums;
        const double slope = octave_slope(t, 6, &sums);
        e.diagnostics["octave_sum_log2_slope"] = std::isfinite(slope) ? slope : -1e300;
        e.diagnostics["partial_sum"] = S.value();
        if (!sums.empty())
            e.diagnostics["last_octave_sum"] = sums.back();
        if (slope < -kExponentMargin)
            e.status = Status::Consistent;
        else if (slope > kExponentMargin) {
            e.status = Status::Violated;
            e.witness = N;
        }
        rep.entries.push_back(e);
    };
    tail_test("C6", "sum |s_n|/gamma_n^2 converges",
              [&](index_t n) { return std::abs(s_at(n)) / (g[std::size_t(n)] * g[std::size_t(n)]); });
    tail_test("C7", "sum |ds_n|/gamma_n converges",
              [&](index_t n) { return std::abs(s_at(n + 1) - s_at(n)) / g[std::size_t(n)]; });
    return rep;
}

void require_conditions(const CoefficientFamily& f, index_t horizon)
{
    if (f.max_index() >= 0)
        horizon = std::min(horizon, f.max_index() - 2);
    const auto rep = check_conditions(f, horizon);
    for (const auto& e : rep.entries)
        if (e.status == Status::Violated)
            throw PreconditionError("rejected: family fails " + e.id);
}

} // namespace orthoasym
