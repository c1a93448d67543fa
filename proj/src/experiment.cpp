#include "orthoasym/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <boost/version.hpp>
#include <fftw3.h>

#include "orthoasym/asym.hpp"
#include "orthoasym/chromatic.hpp"
#include "orthoasym/fourier.hpp"
#include "orthoasym/limits.hpp"
#include "orthoasym/parallel.hpp"
#include "orthoasym/phase.hpp"
#include "orthoasym/recurrence.hpp"

namespace orthoasym {

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {
constexpr const char* kVersion = "0.1.0";
}

std::vector<CoefficientFamily> corpus()
{
    std::vector<CoefficientFamily> out;
    const double ps[] = {0.01, 0.25, 0.5, 0.75, 0.99};
    for (double p : ps)
        out.push_back(CoefficientFamily::power_law(1, p));
    for (double p : ps)
        out.push_back(CoefficientFamily::detour(CoefficientFamily::power_law(1, p), 50, 3));
    return out;
}

const std::vector<std::string>& experiment_commands()
{
    static const std::vector<std::string> c{"check-conditions", "eval",        "phase-trace", "lemma-verify",
                                            "fourier-cm",       "fourier-fkm", "limits",      "uniformity",
                                            "conjecture",       "chromatic"};
    return c;
}

json ExperimentSpec::to_json() const
{
    return {{"command", command}, {"family", family}, {"params", params}, {"out_dir", out_dir}, {"workers", workers}};
}

ExperimentSpec ExperimentSpec::from_json(const json& j)
{
    if (!j.is_object())
        throw ConfigError("spec", "expected an object");
    ExperimentSpec s;
    if (!j.contains("command") || !j.at("command").is_string())
        throw ConfigError("command", "missing or not a string");
    s.command = j.at("command").get<std::string>();
    if (j.contains("family"))
        s.family = j.at("family");
    if (j.contains("params")) {
        if (!j.at("params").is_object())
            throw ConfigError("params", "expected an object");
        s.params = j.at("params");
    }
    if (j.contains("out_dir")) {
        if (!j.at("out_dir").is_string())
            throw ConfigError("out_dir", "expected a string");
        s.out_dir = j.at("out_dir").get<std::string>();
    }
    if (j.contains("workers")) {
        if (!j.at("workers").is_number_unsigned())
            throw ConfigError("workers", "expected a non-negative integer");
        s.workers = j.at("workers").get<unsigned>();
    }
    return s;
}

// ---------------------------------------------------------------------------
// argument helpers

std::vector<double> parse_grid(const std::string& s)
{
    auto num = [&](const std::string& t) {
        std::size_t pos = 0;
        double v = 0;
        try {
            v = std::stod(t, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos == 0 || pos != t.size())
            throw ConfigError("grid", "cannot parse number '" + t + "' in '" + s + "'");
        return v;
    };
    std::vector<std::string> parts;
    const char sep = s.find(':') != std::string::npos ? ':' : ',';
    std::stringstream ss(s);
    for (std::string tok; std::getline(ss, tok, sep);)
        parts.push_back(tok);
    if (sep == ':') {
        if (parts.size() != 3)
            throw ConfigError("grid", "expected start:stop:count, got '" + s + "'");
        const double n = num(parts[2]);
        if (n < 1 || n != std::floor(n))
            throw ConfigError("grid", "count must be a positive integer in '" + s + "'");
        return linspace(num(parts[0]), num(parts[1]), std::size_t(n));
    }
    std::vector<double> out;
    for (const auto& p : parts)
        out.push_back(num(p));
    if (out.empty())
        throw ConfigError("grid", "empty grid");
    return out;
}

json parse_family_arg(const std::string& arg)
{
    if (arg == "corpus")
        return "corpus";
    if (!arg.empty() && arg.front() == '{') {
        try {
            return json::parse(arg);
        } catch (const json::parse_error& e) {
            throw ConfigError("family", std::string("inline JSON: ") + e.what());
        }
    }
    if (fs::exists(arg)) {
        std::ifstream in(arg);
        json j;
        try {
            j = json::parse(in);
        } catch (const json::parse_error& e) {
            throw ConfigError("family", arg + ": " + e.what());
        }
        return j.contains("family") ? j.at("family") : j;
    }
    // kind[:key=value,...]
    const auto colon = arg.find(':');
    std::string kind = arg.substr(0, colon);
    if (kind == "hermite")
        kind = "hermite-exact";
    if (kind == "detour")
        kind = "detour-perturbed";
    json kv = json::object();
    if (colon != std::string::npos) {
        std::stringstream ss(arg.substr(colon + 1));
        for (std::string tok; std::getline(ss, tok, ',');) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos)
                throw ConfigError("family", "expected key=value, got '" + tok + "'");
            const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
            try {
                std::size_t pos = 0;
                const double v = std::stod(val, &pos);
                if (pos != val.size())
                    throw std::invalid_argument(val);
                kv[key] = v;
            } catch (const std::invalid_argument&) {
                kv[key] = val;
            }
        }
    }
    json cfg = json::object();
    json offsets;
    for (auto it = kv.begin(); it != kv.end(); ++it) {
        if (it.key() == "rho")
            offsets = {{"kind", "rho-proportional"}, {"rho", it.value()}};
    }
    if (kind == "detour-perturbed") {
        json base{{"kind", "power-law"}, {"c", kv.value("c", json(1.0))}, {"p", kv.value("p", json(0.5))}};
        if (kv.contains("base"))
            base = {{"kind", kv.at("base")}};
        cfg = {{"kind", kind},
               {"base", base},
               {"detour", {{"period", kv.value("period", kv.value("q", json(50)))},
                           {"depth", kv.value("depth", kv.value("d", json(3)))}}}};
    } else {
        cfg["kind"] = kind;
        for (auto it = kv.begin(); it != kv.end(); ++it)
            if (it.key() != "rho")
                cfg[it.key()] = it.value();
    }
    // whole-number doubles become integers so index keys validate
    for (auto* obj : {&cfg, cfg.contains("detour") ? &cfg["detour"] : nullptr}) {
        if (!obj)
            continue;
        for (auto& [k, v] : obj->items())
            if (v.is_number_float() && (k == "period" || k == "depth") && v.get<double>() == std::floor(v.get<double>()))
                v = json(std::int64_t(v.get<double>()));
    }
    if (!offsets.is_null())
        cfg["offsets"] = offsets;
    return cfg;
}

std::vector<CoefficientFamily> families_from(const json& family)
{
    if (family.is_null())
        throw ConfigError("family", "missing");
    if (family.is_string()) {
        if (family.get<std::string>() == "corpus")
            return corpus();
        return families_from(parse_family_arg(family.get<std::string>()));
    }
    if (family.is_array()) {
        std::vector<CoefficientFamily> out;
        for (std::size_t i = 0; i < family.size(); ++i)
            out.push_back(CoefficientFamily::from_config(family[i], "family[" + std::to_string(i) + "]"));
        return out;
    }
    return {CoefficientFamily::from_config(family, "family")};
}

// ---------------------------------------------------------------------------
// deterministic JSON text

namespace {

void dump_rec(const json& j, std::ostringstream& os, int indent)
{
    const std::string pad(std::size_t(indent + 2), ' '), end_pad(std::size_t(indent), ' ');
    switch (j.type()) {
    case json::value_t::object: {
        if (j.empty()) {
            os << "{}";
            return;
        }
        os << "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first)
                os << ",\n";
            first = false;
            os << pad << json(it.key()).dump() << ": ";
            dump_rec(it.value(), os, indent + 2);
        }
        os << '\n' << end_pad << '}';
        return;
    }
    case json::value_t::array: {
        if (j.empty()) {
            os << "[]";
            return;
        }
        // scalar arrays stay on one line
        const bool flat = std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
        os << '[';
        bool first = true;
        for (const auto& e : j) {
            if (!first)
                os << (flat ? ", " : ",");
            first = false;
            if (!flat)
                os << '\n' << pad;
            dump_rec(e, os, indent + 2);
        }
        if (!flat)
            os << '\n' << end_pad;
        os << ']';
        return;
    }
    case json::value_t::number_float: {
        const double v = j.get<double>();
        if (std::isfinite(v))
            os << fmt17(v);
        else
            os << '"' << fmt17(v) << '"';
        return;
    }
    default:
        os << j.dump();
    }
}

} // namespace

std::string dump_json(const json& j)
{
    std::ostringstream os;
    dump_rec(j, os, 0);
    os << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------
// commands

namespace {

struct Ctx {
    const ExperimentSpec& spec;
    RunResult& res;
    bool inconsistent = false;

    double num(const std::string& key, double def) const
    {
        if (!spec.params.contains(key))
            return def;
        const auto& v = spec.params.at(key);
        if (!v.is_number())
            throw ConfigError("params." + key, "number required");
        return v.get<double>();
    }
    index_t index(const std::string& key, index_t def) const
    {
        const double v = num(key, double(def));
        if (v != std::floor(v) || v < 0)
            throw ConfigError("params." + key, "non-negative integer required");
        return index_t(v);
    }
    std::string str(const std::string& key, const std::string& def) const
    {
        if (!spec.params.contains(key))
            return def;
        const auto& v = spec.params.at(key);
        if (!v.is_string())
            throw ConfigError("params." + key, "string required");
        return v.get<std::string>();
    }
    std::vector<double> grid(const std::string& key, const std::string& def) const
    {
        if (!spec.params.contains(key))
            return parse_grid(def);
        const auto& v = spec.params.at(key);
        try {
            if (v.is_number())
                return {v.get<double>()};
            if (v.is_array()) {
                std::vector<double> out;
                for (const auto& e : v) {
                    if (!e.is_number())
                        throw ConfigError("grid", "numbers required");
                    out.push_back(e.get<double>());
                }
                return out;
            }
            if (v.is_string())
                return parse_grid(v.get<std::string>());
        } catch (const ConfigError& e) {
            throw ConfigError("params." + key, e.what());
        }
        throw ConfigError("params." + key, "grid must be a number, list or string");
    }

    void write(const std::string& name, const std::string& text)
    {
        std::ofstream out(fs::path(spec.out_dir) / name, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot write " + (fs::path(spec.out_dir) / name).string());
        out << text;
        res.artifacts.push_back(name);
    }
    void write_json(const std::string& name, const json& j) { write(name, dump_json(j)); }
};

std::string rho_tag(double v)
{
    std::string s = fmt17(v);
    std::replace(s.begin(), s.end(), '-', 'm');
    return s;
}

void cmd_check_conditions(Ctx& c)
{
    const auto fams = families_from(c.spec.family);
    const index_t N = c.index("N", 100000);
    auto reports = parallel_map<ConditionReport>(
        fams.size(), [&](std::size_t i) { return check_conditions(fams[i], N); }, c.spec.workers);
    json out = json::array();
    int violated = 0;
    for (std::size_t i = 0; i < fams.size(); ++i) {
        json j = reports[i].to_json();
        j["family"] = fams[i].id();
        out.push_back(j);
        if (reports[i].any_violated())
            ++violated;
    }
    c.write_json("conditions.json", out);
    c.inconsistent = violated > 0;
    c.res.summary = std::to_string(fams.size()) + " families, " + std::to_string(violated) + " with a violated condition";
}

void cmd_eval(Ctx& c)
{
    const auto fams = families_from(c.spec.family);
    if (fams.size() != 1)
        throw ConfigError("family", "eval takes a single family");
    const double w = c.num("omega", 1.0);
    const index_t N = c.index("N", 1000), stride = c.index("stride", 1);
    const bool nonsym = c.str("mode", "symmetric") == "nonsymmetric";
    const auto tr = nonsym ? eval_nonsymmetric(fams[0], w, N, stride) : eval_symmetric(fams[0], w, N, stride);
    c.write("eval.csv", tr.to_csv());
    c.write_json("eval.json", {{"family", fams[0].id()},
                               {"omega", w},
                               {"N", N},
                               {"p_N", tr.p_curr},
                               {"p_Np1", tr.p_next},
                               {"sum_p2", tr.sum_p2},
                               {"sum_invgamma", tr.sum_invgamma}});
    c.res.summary = "evaluated " + std::to_string(N + 1) + " terms";
}

void cmd_phase_trace(Ctx& c)
{
    const auto fams = families_from(c.spec.family);
    if (fams.size() != 1)
        throw ConfigError("family", "phase-trace takes a single family");
    const double w = c.num("omega", 1.0);
    const index_t N = c.index("N", 1000);
    const std::string par = c.str("parity", "even-pair");
    if (par != "even-pair" && par != "odd-pair")
        throw ConfigError("params.parity", "expected even-pair or odd-pair");
    const auto parity = par == "odd-pair" ? Parity::OddPair : Parity::EvenPair;
    try {
        const auto tr = unwind_phase(fams[0], w, N, parity);
        c.write("phase.csv", tr.to_csv());
        c.write_json("phase.json", {{"family", fams[0].id()},
                                    {"omega", w},
                                    {"N", N},
                                    {"parity", to_string(parity)},
                                    {"burn_in", tr.burn_in},
                                    {"zero_pairs", tr.zero_pairs},
                                    {"max_reconstruction_error", tr.max_reconstruction_error}});
        c.res.summary = "burn-in at n = " + std::to_string(tr.burn_in);
    } catch (const PhaseError& e) {
        c.inconsistent = true;
        c.write_json("phase.json", {{"family", fams[0].id()}, {"omega", w}, {"N", N}, {"error", e.what()}, {"index", e.index()}});
        c.res.summary = e.what();
    }
}

void cmd_lemma_verify(Ctx& c)
{
    const auto fams = families_from(c.spec.family);
    const std::string lemma = c.str("lemma", "all");
    std::vector<std::string> lemmas;
    if (lemma == "all")
        lemmas = lemma_ids();
    else {
        const auto& ids = lemma_ids();
        if (std::find(ids.begin(), ids.end(), lemma) == ids.end())
            throw ConfigError("params.lemma", "unknown lemma id '" + lemma + "'");
        lemmas = {lemma};
    }
    const auto omegas = c.grid("omega", "0.5,1,2");
    LemmaOptions opt;
    opt.t_points = int(c.index("t_points", 256));

    struct Task {
        std::size_t fam;
        double w;
        std::string lemma;
    };
    std::vector<Task> tasks;
    for (std::size_t f = 0; f < fams.size(); ++f)
        for (double w : omegas)
            for (const auto& l : lemmas)
                tasks.push_back({f, w, l});
    // the family precondition once per family, not per task
    std::vector<std::string> fam_error(fams.size());
    for (std::size_t f = 0; f < fams.size(); ++f) {
        try {
            require_conditions(fams[f], opt.condition_horizon);
        } catch (const PreconditionError& e) {
            fam_error[f] = e.what();
        }
    }
    opt.check_family = false;
    auto results = parallel_map<json>(
        tasks.size(),
        [&](std::size_t i) -> json {
            const auto& t = tasks[i];
            json base{{"lemma", t.lemma}, {"family", fams[t.fam].id()}, {"omega", t.w}};
            if (!fam_error[t.fam].empty()) {
                base["error"] = fam_error[t.fam];
                return base;
            }
            try {
                std::vector<index_t> idx;
                if (c.spec.params.contains("n")) {
                    for (const auto& v : c.spec.params.at("n"))
                        idx.push_back(v.get<index_t>());
                } else {
                    idx = default_lemma_indices(fams[t.fam], t.w);
                }
                return verify_lemma(t.lemma, fams[t.fam], t.w, idx, opt).to_json();
            } catch (const std::exception& e) {
                base["error"] = e.what();
                return base;
            }
        },
        c.spec.workers);
    int bad = 0, errs = 0;
    for (const auto& r : results) {
        if (r.contains("error")) {
            ++errs;
            c.res.errors.push_back(r.at("family").get<std::string>() + " " + r.at("lemma").get<std::string>() +
                                   " omega=" + fmt17(r.at("omega").get<double>()) + ": " +
                                   r.at("error").get<std::string>());
        } else if (r.at("verdict") != "consistent") {
            ++bad;
        }
    }
    c.write_json("lemma.json", results);
    c.inconsistent = bad > 0;
    c.res.summary = std::to_string(tasks.size()) + " lemma checks, " + std::to_string(bad) + " inconsistent, " +
                    std::to_string(errs) + " failed";
}

void cmd_fourier_cm(Ctx& c)
{
    const double x = c.num("x", 0.1);
    const int M = int(c.index("M", 8));
    std::int64_t grid = c.index("grid", 0);
    if (grid == 0) {
        grid = 16;
        while (grid < 16 * std::int64_t(M))
            grid *= 2;
    }
    const auto tab = cm_fft(x, M, grid);
    json side = tab.sidecar();
    json contour = json::array();
    double worst_gap = 0, parity_err = 0, herm_err = 0, scale = 0;
    for (int m = 1; m <= M; ++m)
        scale = std::max(scale, std::abs(tab.at(m)));
    for (int m = 1; m <= M; ++m) {
        const auto v = tab.at(m);
        parity_err = std::max(parity_err, (m % 2 == 0 ? std::abs(v.real()) : std::abs(v.imag())) / scale);
        herm_err = std::max(herm_err, std::abs(tab.at(-m) - std::conj(v)));
        if (m <= 4) {
            const auto k = cm_contour(x, m);
            worst_gap = std::max(worst_gap, std::abs(k - v));
            contour.push_back({{"m", m}, {"re", k.real()}, {"im", k.imag()}, {"gap", std::abs(k - v)}});
        }
    }
    side["c0_abs"] = std::abs(tab.at(0));
    side["parity_error"] = parity_err;
    side["hermitian_error"] = herm_err;
    side["contour"] = contour;
    side["contour_max_gap"] = worst_gap;
    c.write("fourier_cm.csv", tab.to_csv());
    c.write_json("fourier_cm.json", side);
    c.inconsistent = std::abs(tab.at(0)) > 1e-10 || parity_err > 1e-10 || herm_err > 1e-12 || worst_gap > 1e-8;
    c.res.summary = "c_m up to m = " + std::to_string(M) + ", contour gap " + fmt17(worst_gap);
}

void cmd_fourier_fkm(Ctx& c)
{
    const double x = c.num("x", 0.1);
    const long m = long(c.num("m", 1)), k = long(c.num("k", 1));
    const auto v = fkm(x, m, k);
    const auto mirror = std::conj(fkm(x, -m, -k));
    const bool same_parity = ((m - k) % 2) == 0;
    const double off = same_parity ? std::abs(v.imag()) : std::abs(v.real());
    const double conj_gap = std::abs(v - mirror);
    c.write_json("fourier_fkm.json", {{"x", x},
                                      {"m", m},
                                      {"k", k},
                                      {"re", v.real()},
                                      {"im", v.imag()},
                                      {"abs", std::abs(v)},
                                      {"conjugation_gap", conj_gap},
                                      {"parity_residual", off},
                                      {"expected", same_parity ? "real" : "imaginary"}});
    c.inconsistent = conj_gap > 1e-12 || off > 1e-12;
    c.res.summary = "f_k^m = " + fmt17(v.real()) + " + " + fmt17(v.imag()) + "i";
}

void cmd_limits(Ctx& c)
{
    const auto fams = families_from(c.spec.family);
    if (fams.size() != 1)
        throw ConfigError("family", "limits takes a single family");
    const auto& f = fams[0];
    const auto ws = c.grid("omega_grid", "-2:2:17");
    const index_t N = c.index("N", 100000);
    LimitOptions opt;
    opt.max_fluctuation = c.num("max_fluctuation", opt.max_fluctuation);
    opt.equality_tolerance = c.num("equality_tolerance", opt.equality_tolerance);
    require_conditions(f, opt.condition_horizon);
    opt.check_family = false;
    auto rows = parallel_map<json>(
        ws.size(),
        [&](std::size_t i) -> json {
            const double w = ws[i];
            const auto r = ratio_limit(f, w, N, opt);
            const auto b = beta_limit(f, w, N, opt);
            const double gap = limit_equality_gap(r, b);
            return {{"omega", w},
                    {"value", r.value},
                    {"fluctuation", r.fluctuation},
                    {"converged", r.converged},
                    {"window", {r.n_lo, r.n_hi}},
                    {"beta", b.to_json()},
                    {"L", 2 * r.value},
                    {"equality_gap", gap},
                    {"equality_ok", gap <= opt.equality_tolerance}};
        },
        c.spec.workers);
    int bad = 0;
    for (const auto& r : rows)
        if (!r.at("converged").get<bool>() || !r.at("equality_ok").get<bool>() ||
            !r.at("beta").at("converged").get<bool>())
            ++bad;
    c.write_json("limits.json", {{"family", f.id()}, {"N", N}, {"points", rows}});
    c.inconsistent = bad > 0;
    c.res.summary = std::to_string(ws.size()) + " omegas, " + std::to_string(bad) + " not converged";
}

void cmd_uniformity(Ctx& c)
{
    const auto fams = families_from(c.spec.family);
    if (fams.size() != 1)
        throw ConfigError("family", "uniformity takes a single family");
    LimitOptions opt;
    opt.max_fluctuation = c.num("max_fluctuation", opt.max_fluctuation);
    const auto rep = uniformity_scan(fams[0], c.num("B", 2.0), int(c.index("points", 17)), c.index("N", 100000),
                                     opt, c.spec.workers);
    c.write_json("uniformity.json", rep.to_json());
    c.inconsistent = !rep.all_converged;
    c.res.summary = "m_B = " + fmt17(rep.m_B) + ", M_B = " + fmt17(rep.M_B);
}

void cmd_conjecture(Ctx& c)
{
    const auto fams = families_from(c.spec.family);
    if (fams.size() != 1)
        throw ConfigError("family", "conjecture takes a single family");
    const auto rhos = c.grid("rho_grid", "0,1,2.5");
    const double w = c.num("omega", 1.0);
    ConjectureOptions opt;
    opt.max_tail_change = c.num("max_tail_change", opt.max_tail_change);
    const auto res = conjecture_scan(fams[0], rhos, w, c.index("N", 100000), opt, c.spec.workers);
    json out = json::array();
    for (const auto& v : res) {
        out.push_back(v.to_json(w));
        c.write("conjecture_rho_" + rho_tag(v.rho) + ".csv", v.to_csv());
    }
    c.write_json("conjecture.json", {{"family", fams[0].id()}, {"omega", w}, {"scan", out}});
    std::string s;
    for (const auto& v : res)
        s += (s.empty() ? "" : ", ") + std::string("rho=") + fmt17(v.rho) + ": " + v.label();
    c.res.summary = s;
}

TrigSignal load_signal(const std::string& path, const std::string& key)
{
    json j;
    std::ifstream in(path);
    if (!in)
        throw ConfigError(key, "cannot open signal file '" + path + "'");
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(key, path + ": " + e.what());
    }
    return TrigSignal::from_json(j);
}

void cmd_chromatic(Ctx& c)
{
    const auto fams = families_from(c.spec.family);
    if (fams.size() != 1)
        throw ConfigError("family", "chromatic takes a single family");
    const auto& fam = fams[0];
    const std::string mode = c.str("mode", "norm");
    const index_t N = c.index("N", 100000);
    auto signal = [&](const std::string& key) {
        const auto& p = c.spec.params;
        if (!p.contains(key))
            throw ConfigError("params." + key, "missing signal");
        if (p.at(key).is_string())
            return load_signal(p.at(key).get<std::string>(), "params." + key);
        try {
            return TrigSignal::from_json(p.at(key));
        } catch (const ConfigError& e) {
            throw ConfigError("params." + key, e.what());
        }
    };
    if (mode == "norm") {
        const auto f = signal("signal");
        const auto r = norm(fam, f, N);
        json j = r.to_json();
        j["family"] = fam.id();
        j["signal"] = f.to_json();
        c.write_json("chromatic_norm.json", j);
        c.inconsistent = !r.estimate.converged;
        c.res.summary = "norm = " + fmt17(r.estimate.value);
    } else if (mode == "orthogonality") {
        double w = c.num("omega", NAN), s = c.num("sigma", NAN);
        if (std::isnan(w) || std::isnan(s)) {
            const auto f = signal("signal");
            if (f.terms().size() < 2)
                throw ConfigError("params.signal", "orthogonality needs two frequencies (or omega and sigma)");
            w = f.terms()[0].omega;
            s = f.terms()[1].omega;
        }
        const auto r = orthogonality_check(fam, w, s, N);
        const double early = r.ratio_at(std::max<index_t>(1, N / 100)), late = r.ratio_at(N);
        json j = r.to_json();
        j["family"] = fam.id();
        j["decay_factor"] = late > 0 ? early / late : std::numeric_limits<double>::infinity();
        c.write("chromatic_orthogonality.csv", r.to_csv());
        c.write_json("chromatic_orthogonality.json", j);
        c.inconsistent = !(late < early);
        c.res.summary = "ratio " + fmt17(early) + " -> " + fmt17(late);
    } else if (mode == "cd") {
        const auto f = signal("signal");
        const auto g = c.spec.params.contains("signal2") ? signal("signal2") : f;
        const index_t n = c.index("n", 50);
        const auto ts = linspace(-3, 3, 25);
        const auto r = operator_cd_check(fam, f, g, n, ts);
        const double rec = operator_recurrence_residual(fam, f, n);
        c.write_json("chromatic_cd.json", {{"family", fam.id()},
                                           {"n", n},
                                           {"cd_max_abs", r.max_abs},
                                           {"cd_max_rel", r.max_rel},
                                           {"recurrence_residual", rec}});
        c.inconsistent = r.max_rel > 1e-10 || rec > 1e-10;
        c.res.summary = "operator C-D residual " + fmt17(r.max_rel);
    } else {
        throw ConfigError("params.mode", "expected norm, orthogonality or cd");
    }
}

} // namespace

RunResult run(const ExperimentSpec& spec)
{
    RunResult res;
    const auto t0 = std::chrono::steady_clock::now();
    Ctx c{spec, res};
    try {
        std::error_code ec;
        fs::create_directories(spec.out_dir, ec);
        if (spec.command == "check-conditions")
            cmd_check_conditions(c);
        else if (spec.command == "eval")
            cmd_eval(c);
        else if (spec.command == "phase-trace")
            cmd_phase_trace(c);
        else if (spec.command == "lemma-verify")
            cmd_lemma_verify(c);
        else if (spec.command == "fourier-cm")
            cmd_fourier_cm(c);
        else if (spec.command == "fourier-fkm")
            cmd_fourier_fkm(c);
        else if (spec.command == "limits")
            cmd_limits(c);
        else if (spec.command == "uniformity")
            cmd_uniformity(c);
        else if (spec.command == "conjecture")
            cmd_conjecture(c);
        else if (spec.command == "chromatic")
            cmd_chromatic(c);
        else
            throw ConfigError("command", "unknown command '" + spec.command + "'");
    } catch (const ConfigError& e) {
        res.errors.push_back(e.what());
    } catch (const std::exception& e) {
        res.errors.push_back(e.what());
    }
    if (!res.errors.empty())
        res.exit_code = 1;
    else if (c.inconsistent)
        res.exit_code = 2;

    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    json manifest{{"spec", spec.to_json()},
                  {"versions",
                   {{"orthoasym", kVersion}, {"compiler", __VERSION__}, {"boost", BOOST_LIB_VERSION}, {"fftw", std::string(fftw_version)}}},
                  {"artifacts", res.artifacts},
                  {"errors", res.errors},
                  {"exit_code", res.exit_code},
                  {"wall_seconds", wall}};
    try {
        std::ofstream out(fs::path(spec.out_dir) / "manifest.json", std::ios::binary);
        out << dump_json(manifest);
    } catch (...) {
    }
    return res;
}

} // namespace orthoasym
