#include "orthoasym/chromatic.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "orthoasym/numeric.hpp"

namespace orthoasym {

using cd = std::complex<double>;

TrigSignal::TrigSignal(std::vector<Term> terms) : terms_(std::move(terms))
{
    std::set<double> seen;
    for (const auto& t : terms_) {
        if (!std::isfinite(t.omega) || !std::isfinite(t.q.real()) || !std::isfinite(t.q.imag()))
            throw std::invalid_argument("TrigSignal: non-finite term");
        if (!seen.insert(t.omega).second)
            throw std::invalid_argument("TrigSignal: repeated frequency " + fmt17(t.omega));
    }
}

TrigSignal TrigSignal::exponential(double omega, cd q) { return TrigSignal({{omega, q}}); }

double TrigSignal::band() const
{
    double b = 0;
    for (const auto& t : terms_)
        b = std::max(b, std::abs(t.omega));
    return b;
}

bool TrigSignal::is_zero() const
{
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.q == cd(0); });
}

cd TrigSignal::operator()(double t) const
{
    cd s = 0;
    for (const auto& k : terms_)
        s += k.q * std::polar(1.0, k.omega * t);
    return s;
}

TrigSignal TrigSignal::derivative() const
{
    auto out = terms_;
    for (auto& k : out)
        k.q *= cd(0, k.omega);
    return TrigSignal(std::move(out));
}

TrigSignal TrigSignal::operator+(const TrigSignal& g) const
{
    auto out = terms_;
    for (const auto& k : g.terms_) {
        auto it = std::find_if(out.begin(), out.end(), [&](const Term& a) { return a.omega == k.omega; });
        if (it != out.end())
            it->q += k.q;
        else
            out.push_back(k);
    }
    return TrigSignal(std::move(out));
}

TrigSignal TrigSignal::operator*(cd a) const
{
    auto out = terms_;
    for (auto& k : out)
        k.q *= a;
    return TrigSignal(std::move(out));
}

TrigSignal TrigSignal::from_json(const nlohmann::json& j)
{
    const nlohmann::json& list = j.is_object() && j.contains("terms") ? j.at("terms") : j;
    if (!list.is_array())
        throw ConfigError("signal", "expected a list of {omega, re, im} terms");
    std::vector<Term> terms;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const auto& e = list[i];
        const std::string key = "signal[" + std::to_string(i) + "]";
        if (!e.is_object() || !e.contains("omega") || !e.at("omega").is_number())
            throw ConfigError(key + ".omega", "number required");
        const double re = e.value("re", 0.0), im = e.value("im", 0.0);
        terms.push_back({e.at("omega").get<double>(), cd(re, im)});
    }
    try {
        return TrigSignal(std::move(terms));
    } catch (const std::invalid_argument& ex) {
        throw ConfigError("signal", ex.what());
    }
}

nlohmann::json TrigSignal::to_json() const
{
    auto j = nlohmann::json::array();
    for (const auto& k : terms_)
        j.push_back({{"omega", k.omega}, {"re", k.q.real()}, {"im", k.q.imag()}});
    return j;
}

namespace {

cd ipow_i(index_t n)
{
    switch (((n % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
    }
}

// p_n(omega_k) for every term frequency, advanced in lockstep.
class PolyStream {
public:
    PolyStream(const CoefficientFamily& fam, const TrigSignal& f) : fam_(fam)
    {
        for (const auto& k : f.terms())
            w_.push_back(k.omega);
        pm_.assign(w_.size(), 0.0);
        pc_.assign(w_.size(), 1.0);
    }
    index_t n() const { return n_; }
    /// p_n(omega_k)
    double p(std::size_t k) const { return pc_[k]; }
    double p_prev(std::size_t k) const { return pm_[k]; }
    void advance()
    {
        const double gn = fam_.gamma(n_), gp = fam_.gamma(n_ - 1);
        for (std::size_t k = 0; k < w_.size(); ++k) {
            const double nx = (w_[k] * pc_[k] - gp * pm_[k]) / gn;
            pm_[k] = pc_[k];
            pc_[k] = nx;
        }
        ++n_;
    }

private:
    const CoefficientFamily& fam_;
    std::vector<double> w_, pm_, pc_;
    index_t n_ = 0;
};

// K_n f(t) from the current stream state.
cd k_value(const TrigSignal& f, const PolyStream& ps, double t)
{
    cd s = 0;
    const auto& terms = f.terms();
    for (std::size_t k = 0; k < terms.size(); ++k)
        s += terms[k].q * ps.p(k) * std::polar(1.0, terms[k].omega * t);
    return ipow_i(ps.n()) * s;
}

cd dk_value(const TrigSignal& f, const PolyStream& ps, double t)
{
    cd s = 0;
    const auto& terms = f.terms();
    for (std::size_t k = 0; k < terms.size(); ++k)
        s += cd(0, terms[k].omega) * terms[k].q * ps.p(k) * std::polar(1.0, terms[k].omega * t);
    return ipow_i(ps.n()) * s;
}

} // namespace

TrigSignal apply_K(const CoefficientFamily& fam, index_t n, const TrigSignal& f)
{
    if (n < -1)
        throw std::invalid_argument("apply_K: n must be >= -1");
    if (n == -1)
        return TrigSignal();
    PolyStream ps(fam, f);
    while (ps.n() < n)
        ps.advance();
    auto terms = f.terms();
    const cd in = ipow_i(n);
    for (std::size_t k = 0; k < terms.size(); ++k)
        terms[k].q *= in * ps.p(k);
    return TrigSignal(std::move(terms));
}

double local_energy(const CoefficientFamily& fam, const TrigSignal& f, index_t n, double t)
{
    if (n < 0)
        throw std::invalid_argument("local_energy: n must be >= 0");
    PolyStream ps(fam, f);
    while (ps.n() < n)
        ps.advance();
    const double a = std::norm(k_value(f, ps, t));
    ps.advance();
    const double b = std::norm(k_value(f, ps, t));
    return fam.gamma(n) * (a + b);
}

std::vector<double> nu_seq(const CoefficientFamily& fam, const TrigSignal& f, index_t N, double t)
{
    if (N < 0)
        throw std::invalid_argument("nu_seq: N must be >= 0");
    std::vector<double> out;
    out.reserve(std::size_t(N + 1));
    PolyStream ps(fam, f);
    CompensatedSum<double> num, den;
    for (index_t n = 0; n <= N; ++n) {
        num.add(std::norm(k_value(f, ps, t)));
        den.add(1.0 / fam.gamma(n));
        out.push_back(num.value() / den.value());
        ps.advance();
    }
    return out;
}

cd inner_product(const CoefficientFamily& fam, const TrigSignal& f, const TrigSignal& g, index_t N, double t)
{
    if (N < 0)
        throw std::invalid_argument("inner_product: N must be >= 0");
    PolyStream pf(fam, f), pg(fam, g);
    CompensatedSum<double> re, im, den;
    for (index_t n = 0; n <= N; ++n) {
        const cd v = k_value(f, pf, t) * std::conj(k_value(g, pg, t));
        re.add(v.real());
        im.add(v.imag());
        den.add(1.0 / fam.gamma(n));
        pf.advance();
        pg.advance();
    }
    return cd(re.value(), im.value()) / den.value();
}

nlohmann::json NormReport::to_json() const
{
    auto j = estimate.to_json();
    j["nu_limit"] = nu_limit;
    j["t_spread"] = t_spread;
    return j;
}

NormReport norm(const CoefficientFamily& fam, const TrigSignal& f, index_t N, double max_fluctuation)
{
    if (N < 2)
        throw std::invalid_argument("norm: N must be >= 2");
    const index_t lo = N / 2;
    const index_t stride = std::max<index_t>(1, (N - lo) / 512);
    // t = 0 for the estimate; the other four points audit t-independence
    const std::vector<double> ts{0.0, -2.0, -1.0, 1.0, 2.0};
    std::vector<double> inv_d, nu;
    std::vector<CompensatedSum<double>> num(ts.size());
    CompensatedSum<double> den;
    PolyStream ps(fam, f);
    for (index_t n = 0; n <= N; ++n) {
        for (std::size_t i = 0; i < ts.size(); ++i)
            num[i].add(std::norm(k_value(f, ps, ts[i])));
        den.add(1.0 / fam.gamma(n));
        if (n >= lo && ((n - lo) % stride == 0 || n == N)) {
            inv_d.push_back(1.0 / den.value());
            nu.push_back(num[0].value() / den.value());
        }
        ps.advance();
    }
    NormReport r;
    const auto e = ratio_window_estimate(inv_d, nu, lo, N, max_fluctuation);
    r.nu_limit = e.value;
    r.estimate = e;
    r.estimate.value = std::sqrt(std::max(0.0, e.value));
    double lo_v = std::numeric_limits<double>::infinity(), hi_v = 0;
    for (auto& s : num) {
        lo_v = std::min(lo_v, s.value());
        hi_v = std::max(hi_v, s.value());
    }
    r.t_spread = hi_v > 0 ? (hi_v - lo_v) / hi_v : 0;
    return r;
}

CDCheck operator_cd_check(const CoefficientFamily& fam, const TrigSignal& f, const TrigSignal& g, index_t n,
                          const std::vector<double>& ts)
{
    if (n < 0)
        throw std::invalid_argument("operator_cd_check: n must be >= 0");
    std::vector<cd> lhs(ts.size(), 0.0);
    std::vector<double> mag(ts.size(), 0.0);
    PolyStream pf(fam, f), pg(fam, g);
    for (index_t m = 0; m <= n; ++m) {
        for (std::size_t i = 0; i < ts.size(); ++i) {
            const cd a = dk_value(f, pf, ts[i]) * k_value(g, pg, ts[i]);
            const cd b = k_value(f, pf, ts[i]) * dk_value(g, pg, ts[i]);
            lhs[i] += a + b;
            mag[i] += std::abs(a) + std::abs(b);
        }
        pf.advance();
        pg.advance();
    }
    // streams now sit at n+1; rebuild K_n values from the previous polynomials
    CDCheck out;
    const double gn = fam.gamma(n);
    for (std::size_t i = 0; i < ts.size(); ++i) {
        auto prev_value = [&](const TrigSignal& s, const PolyStream& ps) {
            cd v = 0;
            const auto& terms = s.terms();
            for (std::size_t k = 0; k < terms.size(); ++k)
                v += terms[k].q * ps.p_prev(k) * std::polar(1.0, terms[k].omega * ts[i]);
            return ipow_i(n) * v;
        };
        const cd kf1 = k_value(f, pf, ts[i]), kg1 = k_value(g, pg, ts[i]);
        const cd kf = prev_value(f, pf), kg = prev_value(g, pg);
        const cd rhs = gn * (kf1 * kg + kf * kg1);
        const double d = std::abs(lhs[i] - rhs);
        const double scale = std::max(mag[i], std::abs(rhs));
        out.max_abs = std::max(out.max_abs, d);
        if (scale > 0)
            out.max_rel = std::max(out.max_rel, d / scale);
    }
    return out;
}

double operator_recurrence_residual(const CoefficientFamily& fam, const TrigSignal& f, index_t N)
{
    // compare signals built by apply_K-style amplitude products, termwise
    PolyStream ps(fam, f);
    std::vector<cd> km1(f.terms().size(), 0.0); // K_{-1} = 0
    double worst = 0;
    const auto& terms = f.terms();
    for (index_t n = 0; n <= N; ++n) {
        std::vector<cd> kn(terms.size()), kn1(terms.size());
        for (std::size_t k = 0; k < terms.size(); ++k)
            kn[k] = terms[k].q * ipow_i(n) * ps.p(k);
        const double gn = fam.gamma(n), gp = fam.gamma(n - 1);
        ps.advance();
        for (std::size_t k = 0; k < terms.size(); ++k) {
            kn1[k] = terms[k].q * ipow_i(n + 1) * ps.p(k);
            const cd lhs = gn * kn1[k];
            const cd d_kn = cd(0, terms[k].omega) * kn[k];
            const cd rhs = d_kn + gp * km1[k];
            const double scale = std::abs(lhs) + std::abs(d_kn) + std::abs(gp * km1[k]);
            if (scale > 0)
                worst = std::max(worst, std::abs(lhs - rhs) / scale);
        }
        km1 = kn;
    }
    return worst;
}

double OrthogonalityReport::ratio_at(index_t m) const
{
    if (n.empty())
        throw std::logic_error("OrthogonalityReport: empty");
    std::size_t best = 0;
    for (std::size_t i = 1; i < n.size(); ++i)
        if (std::llabs(n[i] - m) < std::llabs(n[best] - m))
            best = i;
    return std::abs(ratio[best]);
}

std::string OrthogonalityReport::to_csv() const
{
    std::ostringstream os;
    os << "n,ratio,bound\n";
    for (std::size_t i = 0; i < n.size(); ++i)
        os << n[i] << ',' << fmt17(ratio[i]) << ',' << fmt17(bound[i]) << '\n';
    return os.str();
}

nlohmann::json OrthogonalityReport::to_json() const
{
    return {{"omega", omega}, {"sigma", sigma}, {"n", n}, {"ratio", ratio}, {"bound", bound}};
}

OrthogonalityReport orthogonality_check(const CoefficientFamily& fam, double omega, double sigma, index_t N)
{
    if (omega == sigma)
        throw std::invalid_argument("orthogonality_check: omega == sigma");
    if (N < 1)
        throw std::invalid_argument("orthogonality_check: N must be >= 1");
    std::vector<index_t> marks;
    for (index_t p = 1; p <= N; p *= 10)
        for (index_t k : {1, 2, 5})
            if (k * p <= N)
                marks.push_back(k * p);
    if (marks.back() != N)
        marks.push_back(N);
    std::sort(marks.begin(), marks.end());
    marks.erase(std::unique(marks.begin(), marks.end()), marks.end());

    OrthogonalityReport r;
    r.omega = omega;
    r.sigma = sigma;
    double aw_m = 0, aw = 1, as_m = 0, as = 1; // p_{n-1}, p_n at omega and sigma
    CompensatedSum<double> s, den;
    std::size_t next = 0;
    for (index_t n = 0; n <= N; ++n) {
        const double gn = fam.gamma(n), gp = fam.gamma(n - 1);
        const double aw1 = (omega * aw - gp * aw_m) / gn;
        const double as1 = (sigma * as - gp * as_m) / gn;
        s.add(aw * as);
        den.add(1.0 / gn);
        if (next < marks.size() && n == marks[next]) {
            r.n.push_back(n);
            r.ratio.push_back(s.value() / den.value());
            r.bound.push_back(gn * std::abs(aw1 * as - as1 * aw) / std::abs(omega - sigma) / den.value());
            ++next;
        }
        aw_m = aw;
        aw = aw1;
        as_m = as;
        as = as1;
    }
    return r;
}

} // namespace orthoasym
