#include "orthoasym/limits.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "orthoasym/parallel.hpp"
#include "orthoasym/recurrence.hpp"

namespace orthoasym {

std::string to_string(LimitMethod m)
{
    switch (m) {
    case LimitMethod::TailAverage: return "tail-average";
    case LimitMethod::Cesaro: return "cesaro";
    case LimitMethod::Ratio: return "ratio";
    }
    return "?";
}

std::string to_string(Stability s)
{
    switch (s) {
    case Stability::Stable: return "stable";
    case Stability::Unstable: return "unstable";
    case Stability::Inconclusive: return "inconclusive";
    }
    return "?";
}

nlohmann::json LimitEstimate::to_json() const
{
    return {{"value", value},
            {"window", {n_lo, n_hi}},
            {"fluctuation", fluctuation},
            {"method", to_string(method)},
            {"converged", converged}};
}

namespace {

void precheck(const CoefficientFamily& f, const LimitOptions& opt)
{
    if (opt.check_family)
        require_conditions(f, opt.condition_horizon);
}

double rel_spread(const std::vector<double>& v, double ref)
{
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return ref != 0 ? (*hi - *lo) / std::abs(ref) : std::numeric_limits<double>::infinity();
}

} // namespace

LimitEstimate beta_limit(const CoefficientFamily& f, double omega, index_t N, const LimitOptions& opt)
{
    if (N < 10000)
        throw std::invalid_argument("beta_limit: N must be >= 10^4");
    precheck(f, opt);
    const index_t lo = N / 2;
    CompensatedSum<double> acc;
    index_t count = 0;
    std::vector<double> means; // running Cesaro means over the last half of the window
    run_recurrence(f, omega, N, false, [&](index_t n, double pn, double pn1, double gn) {
        if (n < lo)
            return true;
        acc.add(gn * (pn * pn + pn1 * pn1));
        ++count;
        if (n >= lo + (N - lo) / 2)
            means.push_back(acc.value() / double(count));
        return true;
    });
    LimitEstimate e;
    e.method = LimitMethod::Cesaro;
    e.n_lo = lo;
    e.n_hi = N;
    e.value = means.back();
    e.fluctuation = rel_spread(means, e.value);
    e.converged = std::isfinite(e.value) && e.fluctuation <= opt.max_fluctuation;
    return e;
}

LimitEstimate ratio_limit(const CoefficientFamily& f, double omega, index_t N, const LimitOptions& opt)
{
    if (N < 0)
        throw std::invalid_argument("ratio_limit: N must be >= 0");
    LimitEstimate e;
    e.method = LimitMethod::Ratio;
    if (N == 0) {
        e.value = f.gamma(0);
        e.converged = false;
        return e;
    }
    precheck(f, opt);
    const index_t lo = N / 2;
    const index_t stride = std::max<index_t>(1, (N - lo) / 512);
    std::vector<double> inv_d, nu;
    CompensatedSum<double> sp, sg;
    run_recurrence(f, omega, N, false, [&](index_t n, double pn, double, double gn) {
        sp.add(pn * pn);
        sg.add(1.0 / gn);
        if (n >= lo && ((n - lo) % stride == 0 || n == N)) {
            inv_d.push_back(1.0 / sg.value());
            nu.push_back(sp.value() / sg.value());
        }
        return true;
    });
    e = ratio_window_estimate(inv_d, nu, lo, N, opt.max_fluctuation);
    e.converged = e.converged && N >= 10000;
    return e;
}

LimitEstimate ratio_window_estimate(const std::vector<double>& inv_d, const std::vector<double>& nu, index_t lo,
                                    index_t hi, double max_fluctuation)
{
    if (nu.empty() || nu.size() != inv_d.size())
        throw std::invalid_argument("ratio_window_estimate: empty or mismatched samples");
    LimitEstimate e;
    e.method = LimitMethod::Ratio;
    e.n_lo = lo;
    e.n_hi = hi;
    if (std::all_of(nu.begin(), nu.end(), [](double v) { return v == 0; })) {
        e.converged = true;
        return e;
    }
    e.value = nu.size() >= 3 ? fit_line(inv_d, nu).intercept : nu.back();
    e.fluctuation = rel_spread(nu, e.value);
    e.converged = std::isfinite(e.value) && e.fluctuation <= max_fluctuation;
    return e;
}

double limit_equality_gap(const LimitEstimate& ratio, const LimitEstimate& beta)
{
    return std::abs(ratio.value - beta.value / 2) / std::abs(ratio.value);
}

GrowthFit growth_exponent(const CoefficientFamily& f, double omega, index_t N)
{
    if (f.kind() != FamilyKind::PowerLaw)
        throw PreconditionError("growth_exponent: power-law family required");
    if (N < 100000)
        throw std::invalid_argument("growth_exponent: N must be >= 10^5");
    // 200 log-spaced sample points over the last two decades
    const index_t lo = N / 100;
    std::vector<index_t> marks;
    for (int i = 0; i < 200; ++i) {
        const index_t n = index_t(std::llround(double(lo) * std::pow(double(N) / double(lo), i / 199.0)));
        if (marks.empty() || n > marks.back())
            marks.push_back(n);
    }
    std::vector<double> lx, ly;
    CompensatedSum<double> sp;
    std::size_t next = 0;
    run_recurrence(f, omega, N, false, [&](index_t n, double pn, double, double) {
        sp.add(pn * pn);
        if (next < marks.size() && n == marks[next]) {
            lx.push_back(std::log(double(n + 1)));
            ly.push_back(std::log(sp.value()));
            ++next;
        }
        return true;
    });
    GrowthFit g;
    g.fit = fit_line(lx, ly);
    g.exponent = g.fit.slope;
    g.expected = 1 - f.p();
    return g;
}

nlohmann::json UniformityReport::to_json() const
{
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : points) {
        nlohmann::json j{{"omega", p.omega}, {"ok", p.ok}};
        if (p.ok) {
            j["value"] = p.estimate.value;
            j["fluctuation"] = p.estimate.fluctuation;
            j["converged"] = p.estimate.converged;
            j["window"] = {p.estimate.n_lo, p.estimate.n_hi};
        } else {
            j["error"] = p.error;
        }
        pts.push_back(j);
    }
    return {{"family", family}, {"B", B},         {"N", N}, {"m_B", m_B}, {"M_B", M_B}, {"max_fluctuation", max_fluctuation},
            {"all_converged", all_converged}, {"points", pts}};
}

UniformityReport uniformity_scan(const CoefficientFamily& f, double B, int points, index_t N, const LimitOptions& opt,
                                 unsigned workers)
{
    if (points < 16)
        throw std::invalid_argument("uniformity_scan: at least 16 grid points required");
    if (!(B > 0))
        throw std::invalid_argument("uniformity_scan: B must be positive");
    precheck(f, opt);
    LimitOptions inner = opt;
    inner.check_family = false;

    UniformityReport rep;
    rep.family = f.id();
    rep.B = B;
    rep.N = N;
    const auto grid = linspace(-B, B, std::size_t(points));
    // symmetric families: the limit is even in omega, so evaluate |omega| once
    std::vector<double> keys;
    for (double w : grid)
        keys.push_back(std::abs(w));
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    auto results = parallel_map<UniformityPoint>(
        keys.size(),
        [&](std::size_t i) {
            UniformityPoint p;
            p.omega = keys[i];
            try {
                p.estimate = ratio_limit(f, keys[i], N, inner);
                p.ok = true;
            } catch (const std::exception& e) {
                p.error = e.what();
            }
            return p;
        },
        workers);

    rep.all_converged = true;
    bool first = true;
    for (double w : grid) {
        const auto it = std::lower_bound(keys.begin(), keys.end(), std::abs(w));
        UniformityPoint p = results[std::size_t(it - keys.begin())];
        p.omega = w;
        rep.points.push_back(p);
        if (!p.ok || !p.estimate.converged) {
            rep.all_converged = false;
            if (!p.ok)
                continue;
        }
        rep.max_fluctuation = std::max(rep.max_fluctuation, p.estimate.fluctuation);
        if (!p.estimate.converged)
            continue;
        if (first) {
            rep.m_B = rep.M_B = p.estimate.value;
            first = false;
        }
        rep.m_B = std::min(rep.m_B, p.estimate.value);
        rep.M_B = std::max(rep.M_B, p.estimate.value);
    }
    return rep;
}

std::string StabilityVerdict::label() const
{
    if (overflow && classification == Stability::Unstable)
        return "unstable-overflow";
    return to_string(classification);
}

std::string StabilityVerdict::to_csv() const
{
    std::ostringstream os;
    os << "n,env_lo,env_hi,nu\n";
    for (std::size_t i = 0; i < n.size(); ++i)
        os << n[i] << ',' << fmt17(env_lo[i]) << ',' << fmt17(env_hi[i]) << ',' << fmt17(nu[i]) << '\n';
    return os.str();
}

nlohmann::json StabilityVerdict::to_json(double omega) const
{
    nlohmann::json j{{"rho", rho},
                     {"omega", omega},
                     {"classification", label()},
                     {"tail_change", std::isfinite(tail_change) ? nlohmann::json(tail_change) : nlohmann::json(fmt17(tail_change))},
                     {"width_start", width_start},
                     {"width_end", width_end},
                     {"reason", reason}};
    if (overflow)
        j["overflow_index"] = overflow_index;
    return j;
}

namespace {

StabilityVerdict classify(const CoefficientFamily& base, double rho, double omega, index_t N,
                          const ConjectureOptions& opt)
{
    StabilityVerdict v;
    v.rho = rho;
    const auto f = base.with_rho_offsets(rho);
    const index_t W = std::max<index_t>(1, N / opt.windows);
    CompensatedSum<double> sp, sg;
    double lo = std::numeric_limits<double>::infinity(), hi = 0;
    index_t last = -1;
    try {
        run_recurrence(f, omega, N, true, [&](index_t n, double pn, double pn1, double gn) {
            const double b = gn * (pn * pn + pn1 * pn1);
            if (!std::isfinite(b) || !std::isfinite(sp.value() + pn * pn))
                throw OverflowError(n, omega);
            sp.add(pn * pn);
            sg.add(1.0 / gn);
            last = n;
            lo = std::min(lo, b);
            hi = std::max(hi, b);
            if ((n + 1) % W == 0 || n == N) {
                v.n.push_back(n);
                v.env_lo.push_back(lo);
                v.env_hi.push_back(hi);
                v.nu.push_back(sp.value() / sg.value());
                lo = std::numeric_limits<double>::infinity();
                hi = 0;
            }
            return true;
        });
    } catch (const OverflowError& e) {
        // keep the trace up to the last finite value
        if (hi > 0 && (v.n.empty() || v.n.back() < last)) {
            v.n.push_back(last);
            v.env_lo.push_back(lo);
            v.env_hi.push_back(hi);
            v.nu.push_back(sp.value() / sg.value());
        }
        v.overflow = true;
        v.overflow_index = e.index();
        v.classification = Stability::Unstable;
        v.tail_change = std::numeric_limits<double>::infinity();
        v.reason = "non-finite values at n = " + std::to_string(e.index());
        if (std::abs(std::abs(rho) - 2) < 1e-12) {
            v.classification = Stability::Inconclusive;
            v.reason += "; |rho| = 2 is the conjectured boundary";
        }
        return v;
    }

    const double nu_end = v.nu.back();
    // nu at the first window end reaching N/10
    std::size_t i10 = 0;
    while (i10 + 1 < v.n.size() && v.n[i10] < N / 10)
        ++i10;
    v.tail_change = std::abs(nu_end - v.nu[i10]) / std::abs(nu_end);

    auto width = [&](std::size_t a, std::size_t b) {
        double s = 0;
        for (std::size_t i = a; i < b; ++i)
            s += (v.env_hi[i] - v.env_lo[i]) / (v.env_hi[i] + v.env_lo[i]);
        return s / double(b - a);
    };
    const std::size_t k = std::max<std::size_t>(1, v.n.size() / 10);
    v.width_start = width(i10, std::min(v.n.size(), i10 + k));
    v.width_end = width(v.n.size() - k, v.n.size());
    const double amp_start = v.env_hi[i10], amp_end = v.env_hi.back();

    const bool envelopes_ok = v.width_end <= 1.25 * v.width_start + 0.01 && amp_end <= 1.5 * amp_start;
    const bool diverging = v.tail_change > 0.5 || amp_end > 10 * amp_start;
    if (std::abs(std::abs(rho) - 2) < 1e-12) {
        v.classification = Stability::Inconclusive;
        v.reason = "|rho| = 2 is the conjectured boundary";
    } else if (v.tail_change <= opt.max_tail_change && envelopes_ok) {
        v.classification = Stability::Stable;
        v.reason = "nu settled and envelopes do not widen";
    } else if (diverging) {
        v.classification = Stability::Unstable;
        v.reason = "nu or the envelope grows over the last decade";
    } else {
        v.classification = Stability::Inconclusive;
        v.reason = "envelopes ambiguous";
    }
    return v;
}

} // namespace

std::vector<StabilityVerdict> conjecture_scan(const CoefficientFamily& f, const std::vector<double>& rhos, double omega,
                                              index_t N, const ConjectureOptions& opt, unsigned workers)
{
    if (f.max_index() >= 0)
        throw PreconditionError("conjecture_scan: an unbounded family is required");
    if (N < 1000)
        throw std::invalid_argument("conjecture_scan: N must be >= 1000");
    std::vector<double> sorted(rhos);
    std::sort(sorted.begin(), sorted.end());
    return parallel_map<StabilityVerdict>(
        sorted.size(), [&](std::size_t i) { return classify(f, sorted[i], omega, N, opt); }, workers);
}

} // namespace orthoasym
