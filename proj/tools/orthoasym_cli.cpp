#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "orthoasym/experiment.hpp"

using nlohmann::json;
using namespace orthoasym;

namespace {

struct Flags {
    std::string family;
    std::map<std::string, double> num;
    std::map<std::string, std::string> str;
};

// A numeric flag only lands in params when given on the command line.
void add_num(CLI::App* app, Flags& fl, const std::string& flag, const std::string& key, const std::string& help)
{
    app->add_option_function<double>(flag, [&fl, key](double v) { fl.num[key] = v; }, help);
}

CLI::Option* add_str(CLI::App* app, Flags& fl, const std::string& flag, const std::string& key, const std::string& help)
{
    return app->add_option_function<std::string>(flag, [&fl, key](const std::string& v) { fl.str[key] = v; }, help);
}

json load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config", "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        // e.what() carries line and column
        throw ConfigError("config", path + ": " + e.what());
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"orthoasym: numerical experiments on orthonormal polynomial recurrences"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config, out_dir;
    int workers = -1;
    app.add_option("--config", config, "experiment spec JSON; command-line flags override its params");
    app.add_option("--out", out_dir, "output directory (default .)");
    app.add_option("--workers", workers, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);

    Flags fl;
    auto sub = [&](const std::string& name, const std::string& help) {
        auto* s = app.add_subcommand(name, help);
        s->add_option("--family", fl.family, "family: config file, inline JSON, 'corpus' or kind:key=value,...");
        return s;
    };

    auto* cc = sub("check-conditions", "check the structural conditions C1..C7");
    add_num(cc, fl, "--N", "N", "horizon");

    auto* ev = sub("eval", "evaluate p_n(omega) and accumulated sums");
    add_num(ev, fl, "--omega", "omega", "evaluation point");
    add_num(ev, fl, "--N", "N", "last index");
    add_num(ev, fl, "--stride", "stride", "row stride in the CSV");
    add_str(ev, fl, "--mode", "mode", "symmetric | nonsymmetric");

    auto* ph = sub("phase-trace", "unwound phase of E_n = (-1)^n (p_2n + i p_2n+1)");
    add_num(ph, fl, "--omega", "omega", "evaluation point");
    add_num(ph, fl, "--N", "N", "number of pairs");
    add_str(ph, fl, "--parity", "parity", "even-pair | odd-pair");

    auto* lv = sub("lemma-verify", "residual campaign for the asymptotic lemmas");
    add_str(lv, fl, "--lemma", "lemma", "lemma id or 'all'");
    add_str(lv, fl, "--omega", "omega", "omega grid, 'a:b:n' or comma list");
    add_num(lv, fl, "--t-points", "t_points", "t samples on [-pi, pi)");

    auto* fc = sub("fourier-cm", "Fourier coefficients c_m(x) by FFT, checked against the contour formula");
    add_num(fc, fl, "--x", "x", "x in (0, 1/4)");
    add_num(fc, fl, "--M", "M", "largest |m|");
    add_num(fc, fl, "--grid", "grid", "initial FFT size (power of two)");

    auto* fk = sub("fourier-fkm", "double Fourier coefficient f_k^m(x)");
    add_num(fk, fl, "--x", "x", "x in (0, 1/4)");
    add_num(fk, fl, "--m", "m", "m");
    add_num(fk, fl, "--k", "k", "k");

    auto* li = sub("limits", "ratio and beta limits over an omega grid");
    add_str(li, fl, "--omega-grid", "omega_grid", "'a:b:n' or comma list");
    add_num(li, fl, "--N", "N", "horizon");

    auto* un = sub("uniformity", "ratio limit bounds on [-B, B]");
    add_num(un, fl, "--B", "B", "half-width");
    add_num(un, fl, "--points", "points", "grid size (>= 16)");
    add_num(un, fl, "--N", "N", "horizon");

    auto* cj = sub("conjecture", "stability scan for beta_n = rho gamma_n");
    add_str(cj, fl, "--rho-grid", "rho_grid", "'a:b:n' or comma list");
    add_num(cj, fl, "--omega", "omega", "evaluation point");
    add_num(cj, fl, "--N", "N", "horizon");

    auto* ch = sub("chromatic", "chromatic-derivative norm, orthogonality and C-D checks");
    add_str(ch, fl, "--signal", "signal", "signal JSON file");
    add_str(ch, fl, "--signal2", "signal2", "second signal for --mode cd");
    add_str(ch, fl, "--mode", "mode", "norm | orthogonality | cd")->check(CLI::IsMember({"norm", "orthogonality", "cd"}));
    add_num(ch, fl, "--omega", "omega", "first frequency for orthogonality");
    add_num(ch, fl, "--sigma", "sigma", "second frequency for orthogonality");
    add_num(ch, fl, "--N", "N", "horizon");
    add_num(ch, fl, "--n", "n", "index for --mode cd");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    ExperimentSpec spec;
    try {
        if (!config.empty()) {
            spec = ExperimentSpec::from_json(load_config(config));
        }
        const std::string cmd = app.get_subcommands().front()->get_name();
        if (!config.empty() && spec.command != cmd)
            throw ConfigError("command", "config says '" + spec.command + "' but '" + cmd + "' was requested");
        spec.command = cmd;
        if (!fl.family.empty())
            spec.family = parse_family_arg(fl.family);
        for (const auto& [k, v] : fl.num)
            spec.params[k] = (v == std::floor(v) && std::abs(v) < 9e15) ? json(std::int64_t(v)) : json(v);
        for (const auto& [k, v] : fl.str)
            spec.params[k] = v;
        if (!out_dir.empty())
            spec.out_dir = out_dir;
        if (workers >= 0)
            spec.workers = unsigned(workers);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }

    const auto res = run(spec);
    for (const auto& e : res.errors)
        std::cerr << "error: " << e << '\n';
    if (!res.summary.empty())
        std::cout << spec.command << ": " << res.summary << '\n';
    for (const auto& a : res.artifacts)
        std::cout << "  wrote " << a << '\n';
    return res.exit_code;
}
