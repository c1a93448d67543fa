#include "orthoasym/asym.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>

namespace orthoasym {

using cd = std::complex<double>;
namespace K = kernels;

namespace {

void check_disc(double x, const char* who)
{
    if (!(std::abs(x) < 0.25))
        throw std::domain_error(std::string(who) + ": |x| must be < 1/4");
}

} // namespace

double f_kernel(double x, double t)
{
    check_disc(x, "f_kernel");
    const auto v = K::fg_complex(x, t);
    if (std::abs(v.f.imag()) > 1e-12)
        throw std::logic_error("f_kernel: imaginary part above 1e-12");
    return v.f.real();
}

double g_kernel(double x, double t)
{
    check_disc(x, "g_kernel");
    const auto v = K::fg_complex(x, t);
    if (std::abs(v.g.imag()) > 1e-12)
        throw std::logic_error("g_kernel: imaginary part above 1e-12");
    return v.g.real();
}

double h_kernel(double x, double t)
{
    check_disc(x, "h_kernel");
    return K::h_value(x, t);
}

double h_kernel_simplified(double x, double t)
{
    check_disc(x, "h_kernel_simplified");
    if (std::abs(x) < 1e-4)
        return K::h_series(x, t);
    return K::h_simplified(x, t);
}

cd l_kernel(long m, double x, double t)
{
    if (m == 0)
        throw std::invalid_argument("l_kernel: m must be nonzero");
    check_disc(x, "l_kernel");
    return K::l_value(m, x, t);
}

cd eps_kernel(long m, double x, double t)
{
    if (m == 0)
        throw std::invalid_argument("eps_kernel: m must be nonzero");
    check_disc(x, "eps_kernel");
    return K::eps_value(m, x, t);
}

FGHResult Fn_Gn_Hn_exact(const CoefficientFamily& f, double omega, index_t n, double t)
{
    if (n < 2)
        throw std::invalid_argument("Fn_Gn_Hn_exact: n must be >= 2");
    const auto v = fgh_exact_as<quad>(f, quad(omega), n, quad(t));
    FGHResult r;
    r.F = double(v.F);
    r.G = double(v.G);
    r.H = double(v.H);
    r.x = omega / f.gamma(2 * n - 1);
    r.in_disc = std::abs(r.x) < 0.25;
    r.cut_distance = double(v.cut_distance);
    r.near_cut = r.cut_distance < 1e-12;
    return r;
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& lemma_ids()
{
    static const std::vector<std::string> ids{"basicn", "basicm", "ztztt", "lgztztt", "twologs", "FG1",
                                              "serG",   "asdel",  "recG",  "F/G",     "lm",      "lm3",
                                              "LG",     "arcsin"};
    return ids;
}

std::string to_string(Verdict v) { return v == Verdict::Consistent ? "consistent" : "inconsistent"; }

const LemmaPart& LemmaResidualReport::worst() const
{
    if (parts.empty())
        throw std::logic_error("LemmaResidualReport: no parts");
    return *std::min_element(parts.begin(), parts.end(), [](const LemmaPart& a, const LemmaPart& b) {
        return a.fit_exponent - a.claimed < b.fit_exponent - b.claimed;
    });
}

namespace {

nlohmann::json num(double v)
{
    if (std::isfinite(v))
        return v;
    return fmt17(v);
}

nlohmann::json nums(const std::vector<double>& v)
{
    auto j = nlohmann::json::array();
    for (double d : v)
        j.push_back(num(d));
    return j;
}

} // namespace

nlohmann::json LemmaResidualReport::to_json() const
{
    nlohmann::json j;
    j["lemma"] = lemma;
    j["family"] = family;
    j["omega"] = omega;
    j["n"] = n;
    j["gamma"] = nums(gamma);
    const auto& w = worst();
    j["residual"] = nums(w.residual);
    j["fit_exponent"] = num(w.fit_exponent);
    j["claimed"] = num(w.claimed);
    j["verdict"] = to_string(verdict);
    auto ps = nlohmann::json::array();
    for (const auto& p : parts) {
        nlohmann::json pj;
        pj["name"] = p.name;
        pj["residual"] = nums(p.residual);
        pj["bound"] = nums(p.bound);
        pj["fit_exponent"] = num(p.fit_exponent);
        pj["fit_stderr"] = num(p.fit_stderr);
        pj["claimed"] = num(p.claimed);
        pj["verdict"] = to_string(p.verdict);
        ps.push_back(pj);
    }
    j["parts"] = ps;
    return j;
}

std::vector<index_t> default_lemma_indices(const CoefficientFamily& f, double omega)
{
    constexpr int kmax = 60;
    int k0 = -1;
    for (int k = 2; k <= kmax; ++k) {
        const index_t n = index_t(1) << k;
        if (std::abs(omega) / f.gamma(2 * n - 1) < 0.25) {
            k0 = k;
            break;
        }
    }
    if (k0 < 0)
        throw LemmaPreconditionError("omega/gamma_{2n-1} < 1/4 is not reached for n <= 2^60");
    const double g0 = f.gamma((index_t(2) << k0) - 1);
    std::vector<index_t> out;
    for (int k = k0; k <= kmax; ++k) {
        const index_t n = index_t(1) << k;
        out.push_back(n);
        const double ratio = f.gamma(2 * n - 1) / g0;
        if (out.size() >= 12 && ratio >= 16)
            break;
    }
    return out;
}

namespace {

using C = cquad;

// Everything the residual formulas need at one index n.
struct Sample {
    quad w, G, x, u;
    quad s1, s2, s3, s4, ds2, ds3, ds4, eta, eps;
    ABPair<quad> an, am;
    quad lam; // lambda_{n-1}
};

Sample make_sample(const CoefficientFamily& f, const quad& w, index_t n)
{
    Sample s;
    s.w = w;
    s.G = f.gamma_q(2 * n - 1);
    s.x = w / s.G;
    s.u = quad(1) - s.x * s.x / 2;
    s.s1 = diff_s<quad>(f, 2 * n - 1);
    s.s2 = diff_s<quad>(f, 2 * n - 2);
    s.s3 = diff_s<quad>(f, 2 * n - 3);
    s.s4 = diff_s<quad>(f, 2 * n - 4);
    s.ds2 = s.s1 - s.s2;
    s.ds3 = s.s2 - s.s3;
    s.ds4 = s.s3 - s.s4;
    s.eta = eta_as<quad>(f, n);
    const quad g0 = f.gamma_q(2 * n - 2), g2 = f.gamma_q(2 * n);
    s.eps = (g0 * g2 - s.G * s.G) / s.G;
    s.an = ab_as<quad>(f, w, n);
    s.am = ab_as<quad>(f, w, n - 1);
    const quad g4 = f.gamma_q(2 * n - 4), g3 = f.gamma_q(2 * n - 3);
    s.lam = (quad(1) / g4 + quad(1) / g3) / (quad(1) / g0 + quad(1) / s.G);
    return s;
}

// The exact t-dependent quantities built from a_n, b_n, a_{n-1}, b_{n-1}.
struct Exact {
    C z1, z1c, z2, z2c; // a_n + b_n e^{-it}, conj, a_{n-1} - conj(b_{n-1}) e^{it}, conj
    quad F, G;
};

Exact exact_at(const Sample& s, const quad& t)
{
    Exact e;
    const C ep = cis(t), em = cis(quad(-t));
    e.z1 = s.an.a + s.an.b * em;
    e.z1c = conj(s.an.a) + conj(s.an.b) * ep;
    e.z2 = s.am.a - conj(s.am.b) * ep;
    e.z2c = conj(s.am.a) - s.am.b * em;
    const quad ab2 = abs(s.am.a) * abs(s.am.a) - abs(s.am.b) * abs(s.am.b);
    const C L1c = log(e.z1c), L1 = log(e.z1), L2c = log(e.z2c), L2 = log(e.z2);
    e.F = (C(quad(2) * log(ab2) + quad(2) * log(s.lam)) + L1c + L1 - L2c - L2).real();
    e.G = (C(0, 1) * (L1c - L1 + L2c - L2)).real();
    return e;
}

struct PartSpec {
    std::string name;
    // residual at (sample, t, m); t-independent parts ignore t and m
    std::function<quad(const Sample&, const quad&, long)> residual;
    std::function<quad(const Sample&)> bound;
    bool t_dependent = true;
    bool m_dependent = false;
};

quad bound_eta_G2(const Sample& s) { return s.eta / (s.G * s.G); }
quad bound_eta_G3(const Sample& s) { return s.eta / (s.G * s.G * s.G); }
quad bound_eta_G(const Sample& s) { return s.eta / s.G; }
quad bound_eta(const Sample& s) { return s.eta; }

std::vector<PartSpec> lemma_parts(const std::string& id)
{
    using std::abs;
    std::vector<PartSpec> P;
    auto add = [&](std::string name, auto res, auto bnd, bool tdep, bool mdep = false) {
        P.push_back({std::move(name), res, bnd, tdep, mdep});
    };
    const quad half(0.5);

    if (id == "basicn") {
        auto bS = [](const Sample& s) { return abs(s.s1) / (s.G * s.G); };
        auto bS3 = [](const Sample& s) { return abs(s.s1) / (s.G * s.G * s.G); };
        add("Re a_n", [=](const Sample& s, const quad&, long) {
            return abs(s.an.a.real() - (s.u - (s.s1 + s.s2) * half / s.G));
        }, bS, false);
        add("Im a_n", [=](const Sample& s, const quad&, long) {
            return abs(s.an.a.imag() - s.x * (quad(1) - (s.s1 + s.s2) * half / s.G));
        }, bS3, false);
        add("Re b_n", [=](const Sample& s, const quad&, long) {
            return abs(s.an.b.real() - (s.x * s.x * half + s.ds2 * half / s.G));
        }, bS, false);
        add("Im b_n", [=](const Sample& s, const quad&, long) {
            return abs(s.an.b.imag() + s.w * (s.s1 + s.s2) * half / (s.G * s.G));
        }, bS3, false);
    } else if (id == "basicm") {
        add("Re a_{n-1}", [=](const Sample& s, const quad&, long) {
            return abs(s.am.a.real() - (s.u - (s.s3 + s.s4) * half / s.G));
        }, bound_eta_G2, false);
        add("Im a_{n-1}", [=](const Sample& s, const quad&, long) {
            return abs(s.am.a.imag() - s.x * (quad(1) + (s.s3 + s.s4) * half / s.G + (s.ds3 + s.ds4) / s.G));
        }, bound_eta_G3, false);
        add("Re b_{n-1}", [=](const Sample& s, const quad&, long) {
            return abs(s.am.b.real() - (s.x * s.x * half + s.ds4 * half / s.G));
        }, bound_eta_G2, false);
        add("Im b_{n-1}", [=](const Sample& s, const quad&, long) {
            return abs(s.am.b.imag() + s.w * (s.s4 + s.s3) * half / (s.G * s.G));
        }, bound_eta_G3, false);
    } else if (id == "ztztt" || id == "lgztztt") {
        const bool lg = id == "lgztztt";
        add("a_n + b_n e^{-it}", [=](const Sample& s, const quad& t, long) {
            const C lead = C(s.u, s.x) + s.x * s.x * half * cis(quad(-t));
            const C rest = C(s.ds2 * cos(t) * half / s.G - (s.s2 + s.s1) * half / s.G, -s.ds2 * sin(t) * half / s.G);
            const C z = s.an.a + s.an.b * cis(quad(-t));
            return lg ? abs(log(z) - (log(lead) + rest)) : abs(z - (lead + rest));
        }, bound_eta_G2, true);
        add("a_{n-1} - conj(b_{n-1}) e^{it}", [=](const Sample& s, const quad& t, long) {
            const C lead = C(s.u, s.x) - s.x * s.x * half * cis(t);
            const C rest = C(-s.ds4 * cos(t) * half / s.G - (s.s4 + s.s3) * half / s.G, -s.ds4 * sin(t) * half / s.G);
            const C z = s.am.a - conj(s.am.b) * cis(t);
            return lg ? abs(log(z) - (log(lead) + rest)) : abs(z - (lead + rest));
        }, bound_eta_G2, true);
    } else if (id == "twologs") {
        add("ln(|a|^2 - |b|^2)", [=](const Sample& s, const quad&, long) {
            const quad ab2 = abs(s.am.a) * abs(s.am.a) - abs(s.am.b) * abs(s.am.b);
            return abs(log(ab2) + (s.s4 + s.s3) / s.G);
        }, bound_eta_G2, false);
        add("ln lambda_{n-1}", [=](const Sample& s, const quad&, long) {
            return abs(log(s.lam) - (s.s4 + quad(2) * s.s3 + s.s2) * half / s.G);
        }, bound_eta_G2, false);
    } else if (id == "FG1") {
        add("F_n", [=](const Sample& s, const quad& t, long) {
            const auto e = exact_at(s, t);
            const quad fk = K::fg_complex(s.x, t).f.real();
            return abs(e.F - fk - (s.ds4 + s.ds2) * cos(t) / s.G + (s.ds3 + s.ds2) / s.G);
        }, bound_eta_G2, true);
        add("G_n", [=](const Sample& s, const quad& t, long) {
            const auto e = exact_at(s, t);
            const quad gk = K::fg_complex(s.x, t).g.real();
            return abs(e.G - gk + (s.ds4 + s.ds2) * sin(t) / s.G);
        }, bound_eta_G2, true);
    } else if (id == "serG") {
        add("(G/omega) G_n - 4", [=](const Sample& s, const quad& t, long) {
            return abs(exact_at(s, t).G / s.x - quad(4));
        }, [](const Sample& s) { return quad(1) / s.G; }, true);
    } else if (id == "asdel") {
        add("G_n/2 - 2 omega/G", [=](const Sample& s, const quad& t, long) {
            return abs(exact_at(s, t).G * half - quad(2) * s.x);
        }, [](const Sample& s) { return quad(1) / (s.G * s.G); }, true);
    } else if (id == "recG") {
        add("1/G_n", [=](const Sample& s, const quad& t, long) {
            const quad gk = K::fg_complex(s.x, t).g.real();
            return abs(quad(1) / exact_at(s, t).G - quad(1) / gk -
                       s.G * (s.ds4 + s.ds2) * sin(t) / (quad(16) * s.w * s.w));
        }, bound_eta, true);
    } else if (id == "F/G") {
        add("H_n", [=](const Sample& s, const quad& t, long) {
            const auto e = exact_at(s, t);
            return abs(e.F / e.G - K::h_value(s.x, t) -
                       ((s.ds2 + s.ds4) * cos(t) - s.ds3 - s.ds2) / (quad(4) * s.w));
        }, bound_eta_G, true);
    } else if (id == "lm") {
        add("conj-ratio n-1", [=](const Sample& s, const quad& t, long) {
            const C r = (conj(s.am.a) - s.am.b * cis(quad(-t))) / (s.am.a - conj(s.am.b) * cis(t));
            const quad h2 = s.x * s.x * half;
            const C main = (C(s.u, -s.x) - h2 * cis(quad(-t))) / (C(s.u, s.x) - h2 * cis(t));
            return abs(r - main - C(0, s.ds4 * sin(t) / s.G));
        }, bound_eta_G2, true);
        add("ratio n", [=](const Sample& s, const quad& t, long) {
            const C r = (s.an.a + s.an.b * cis(quad(-t))) / (conj(s.an.a) + conj(s.an.b) * cis(t));
            const quad h2 = s.x * s.x * half;
            const C main = (C(s.u, s.x) + h2 * cis(quad(-t))) / (C(s.u, -s.x) + h2 * cis(t));
            return abs(r - main + C(0, s.ds2 * sin(t) / s.G));
        }, bound_eta_G2, true);
    } else if (id == "lm3") {
        add("L_n(m,t)", [=](const Sample& s, const quad& t, long m) {
            const C r1 = (conj(s.am.a) - s.am.b * cis(quad(-t))) / (s.am.a - conj(s.am.b) * cis(t));
            const C r2 = (s.an.a + s.an.b * cis(quad(-t))) / (conj(s.an.a) + conj(s.an.b) * cis(t));
            const C L = C(0, 1) * (ipow(r1, m) - ipow(r2, m));
            return abs(L - K::l_value(m, s.x, t) + C(quad(m) * (s.ds4 + s.ds2) * sin(t) / s.G));
        }, bound_eta_G2, true, true);
    } else if (id == "LG") {
        add("L_n/(m G_n)", [=](const Sample& s, const quad& t, long m) {
            const C r1 = (conj(s.am.a) - s.am.b * cis(quad(-t))) / (s.am.a - conj(s.am.b) * cis(t));
            const C r2 = (s.an.a + s.an.b * cis(quad(-t))) / (conj(s.an.a) + conj(s.an.b) * cis(t));
            const C L = C(0, 1) * (ipow(r1, m) - ipow(r2, m));
            const quad Gn = exact_at(s, t).G;
            const quad gk = K::fg_complex(s.x, t).g.real();
            const quad D = (s.ds4 + s.ds2) * sin(t);
            return abs(L / (quad(m) * Gn) - K::l_value(m, s.x, t) / (quad(m) * gk) +
                       C(D * D / (quad(16) * s.w * s.w)));
        }, bound_eta_G, true, true);
    } else if (id == "arcsin") {
        add("arcsin(|b_n|/|a_n|)", [=](const Sample& s, const quad&, long) {
            return abs(asin(abs(s.an.b) / abs(s.an.a)));
        }, [](const Sample& s) { return abs(s.eps) / s.G + quad(1) / (s.G * s.G); }, false);
    } else {
        throw std::invalid_argument("verify_lemma: unknown lemma id '" + id + "'");
    }
    return P;
}

// Decay exponent: minus the least-squares slope of log y against log G, zeros dropped.
LineFit decay_fit(const std::vector<double>& G, const std::vector<double>& y)
{
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (y[i] > 0 && std::isfinite(y[i])) {
            lx.push_back(std::log(G[i]));
            ly.push_back(std::log(y[i]));
        }
    if (lx.size() < 2)
        return {};
    return fit_line(lx, ly);
}

} // namespace

LemmaResidualReport verify_lemma(const std::string& lemma, const CoefficientFamily& f, double omega,
                                 const std::vector<index_t>& indices, const LemmaOptions& opt)
{
    auto specs = lemma_parts(lemma);
    if (!(omega > 0))
        throw std::invalid_argument("verify_lemma: omega must be positive");
    if (opt.check_family) {
        try {
            require_conditions(f, opt.condition_horizon);
        } catch (const PreconditionError& e) {
            throw LemmaPreconditionError(e.what());
        }
    }
    if (int(indices.size()) < opt.min_points)
        throw LemmaPreconditionError("at least " + std::to_string(opt.min_points) + " sample indices are required");
    for (index_t n : indices) {
        if (n < 2)
            throw std::invalid_argument("verify_lemma: sample indices must be >= 2");
        if (!(omega / f.gamma(2 * n - 1) < 0.25))
            throw LemmaPreconditionError("omega/gamma_{2n-1} >= 1/4 at n = " + std::to_string(n));
    }

    LemmaResidualReport rep;
    rep.lemma = lemma;
    rep.family = f.id();
    rep.omega = omega;
    rep.n = indices;
    for (index_t n : indices)
        rep.gamma.push_back(f.gamma(2 * n - 1));
    const auto [gmin, gmax] = std::minmax_element(rep.gamma.begin(), rep.gamma.end());
    if (!(*gmax / *gmin >= opt.min_gamma_ratio))
        throw LemmaPreconditionError("insufficient dynamic range in gamma over the index set (ratio " +
                                     fmt17(*gmax / *gmin) + ", need >= " + fmt17(opt.min_gamma_ratio) + ")");

    const quad w(omega);
    const quad two_pi = 2 * pi_v<quad>();
    std::vector<quad> tgrid;
    for (int j = 0; j < opt.t_points; ++j)
        tgrid.push_back(two_pi * quad(j) / quad(opt.t_points) - pi_v<quad>());

    rep.parts.resize(specs.size());
    for (std::size_t p = 0; p < specs.size(); ++p)
        rep.parts[p].name = specs[p].name;

    for (index_t n : indices) {
        const Sample s = make_sample(f, w, n);
        for (std::size_t p = 0; p < specs.size(); ++p) {
            const auto& sp = specs[p];
            quad worst = 0;
            const std::vector<long> ms = sp.m_dependent ? opt.m_values : std::vector<long>{1};
            for (long m : ms) {
                if (sp.t_dependent) {
                    for (const auto& t : tgrid)
                        worst = std::max(worst, sp.residual(s, t, m));
                } else {
                    worst = std::max(worst, sp.residual(s, quad(0), m));
                }
            }
            rep.parts[p].residual.push_back(double(worst));
            rep.parts[p].bound.push_back(double(sp.bound(s)));
        }
    }

    rep.verdict = Verdict::Consistent;
    for (auto& part : rep.parts) {
        const auto bf = decay_fit(rep.gamma, part.bound);
        part.claimed = -bf.slope;
        const bool all_zero =
            std::all_of(part.residual.begin(), part.residual.end(), [](double r) { return r == 0; });
        if (all_zero) {
            part.fit_exponent = std::numeric_limits<double>::infinity();
            part.verdict = Verdict::Consistent;
            continue;
        }
        const auto rf = decay_fit(rep.gamma, part.residual);
        part.fit_exponent = -rf.slope;
        part.fit_stderr = rf.slope_stderr;
        part.verdict = part.fit_exponent >= part.claimed - opt.slack ? Verdict::Consistent : Verdict::Inconsistent;
        if (part.verdict == Verdict::Inconsistent)
            rep.verdict = Verdict::Inconsistent;
    }
    return rep;
}

} // namespace orthoasym
