#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "orthoasym/experiment.hpp"

using namespace orthoasym;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {
std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}
fs::path scratch(const std::string& name)
{
    auto p = fs::temp_directory_path() / ("orthoasym_test_" + name);
    fs::remove_all(p);
    return p;
}
} // namespace

TEST_CASE("corpus")
{
    const auto c = corpus();
    REQUIRE(c.size() == 10);
    const double ps[] = {0.01, 0.25, 0.5, 0.75, 0.99};
    for (int i = 0; i < 5; ++i) {
        CHECK(c[std::size_t(i)].kind() == FamilyKind::PowerLaw);
        CHECK(c[std::size_t(i)].p() == ps[i]);
        CHECK(c[std::size_t(i + 5)].kind() == FamilyKind::DetourPerturbed);
        CHECK(c[std::size_t(i + 5)].base().p() == ps[i]);
        const auto r = check_conditions(c[std::size_t(i + 5)], 10000);
        CHECK(r.m0 > 1);
        CHECK_FALSE(r.any_violated());
    }
}

TEST_CASE("grids")
{
    CHECK(parse_grid("-2:2:5") == std::vector<double>{-2, -1, 0, 1, 2});
    CHECK(parse_grid("0,1,2.5") == std::vector<double>{0, 1, 2.5});
    CHECK_THROWS_AS(parse_grid("1:2"), ConfigError);
    CHECK_THROWS_AS(parse_grid("a,b"), ConfigError);
    CHECK_THROWS_AS(parse_grid("0:1:0"), ConfigError);
}

TEST_CASE("family arguments")
{
    CHECK(parse_family_arg("corpus") == "corpus");
    auto f = families_from(parse_family_arg("power-law:p=0.5,c=2"));
    REQUIRE(f.size() == 1);
    CHECK(f[0].gamma(3) == doctest::Approx(4.0));
    f = families_from(parse_family_arg("hermite"));
    CHECK(f[0].kind() == FamilyKind::HermiteExact);
    f = families_from(parse_family_arg("detour:p=0.75,period=50,depth=3"));
    CHECK(f[0].id() == corpus()[8].id());
    f = families_from(parse_family_arg("power-law:p=0.5,rho=1"));
    CHECK(f[0].offset(4) == f[0].gamma(4));
    f = families_from(parse_family_arg(R"({"kind":"freud-leading","beta_w":4})"));
    CHECK(f[0].kind() == FamilyKind::FreudLeading);
    try {
        families_from(parse_family_arg("power-law:p=1.5"));
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.key() == "family.p");
    }
    CHECK_THROWS_AS(parse_family_arg(R"({"kind": )"), ConfigError);
}

TEST_CASE("spec round trip")
{
    ExperimentSpec s;
    s.command = "limits";
    s.family = parse_family_arg("hermite");
    s.params = {{"N", 100000}, {"omega_grid", "-2:2:5"}};
    s.out_dir = "out";
    s.workers = 3;
    const auto back = ExperimentSpec::from_json(s.to_json());
    CHECK(back.to_json() == s.to_json());
    CHECK_THROWS_AS(ExperimentSpec::from_json(json{{"family", "corpus"}}), ConfigError);
    CHECK_THROWS_AS(ExperimentSpec::from_json(json{{"command", "eval"}, {"workers", -1}}), ConfigError);
}

TEST_CASE("float formatting")
{
    CHECK(dump_json(json{{"a", 0.1}}) == "{\n  \"a\": 0.10000000000000001\n}\n");
    CHECK(dump_json(json{{"a", INFINITY}}).find("\"inf\"") != std::string::npos);
    CHECK(dump_json(json::array({1, 2})) == "[1, 2]\n");
}

TEST_CASE("run: exit codes and artifacts")
{
    ExperimentSpec s;
    s.command = "check-conditions";
    s.family = "corpus";
    s.params = {{"N", 10000}};
    s.out_dir = scratch("cc").string();
    auto r = run(s);
    CHECK(r.exit_code == 0);
    CHECK(r.artifacts == std::vector<std::string>{"conditions.json"});
    CHECK(fs::exists(fs::path(s.out_dir) / "manifest.json"));

    s.family = parse_family_arg("power-law:p=1.5");
    r = run(s);
    CHECK(r.exit_code == 1);
    REQUIRE_FALSE(r.errors.empty());
    CHECK(r.errors[0].rfind("family.p", 0) == 0);

    s.command = "bogus";
    CHECK(run(s).exit_code == 1);

    // a constant table violates C1
    s.command = "check-conditions";
    s.family = json{{"kind", "custom-table"}, {"table", std::vector<double>(20000, 1.0)}};
    CHECK(run(s).exit_code == 2);

    // an inconsistent lemma verdict
    s.command = "lemma-verify";
    s.family = parse_family_arg("detour:p=0.99");
    s.params = {{"lemma", "serG"}, {"omega", 1.0}, {"t_points", 16}};
    r = run(s);
    CHECK(r.exit_code == 2);

    // per-task failures are collected, not fatal to the others
    s.family = json::array({parse_family_arg("power-law:p=0.01"), parse_family_arg("power-law:p=0.5")});
    s.params = {{"lemma", "basicn"}, {"omega", 1.0}, {"t_points", 16}};
    r = run(s);
    CHECK(r.exit_code == 1);
    const auto lj = json::parse(slurp(fs::path(s.out_dir) / "lemma.json"));
    REQUIRE(lj.size() == 2);
    CHECK(lj[0].contains("error"));
    CHECK(lj[1].at("verdict") == "consistent");
}

TEST_CASE("run: deterministic artifacts across worker counts")
{
    ExperimentSpec s;
    s.command = "lemma-verify";
    s.family = json::array({parse_family_arg("power-law:p=0.5"), parse_family_arg("hermite")});
    s.params = {{"lemma", "all"}, {"omega", "1,2"}, {"t_points", 16}};
    s.out_dir = scratch("det1").string();
    s.workers = 1;
    run(s);
    const auto a = slurp(fs::path(s.out_dir) / "lemma.json");
    s.out_dir = scratch("det2").string();
    s.workers = 4;
    run(s);
    CHECK(slurp(fs::path(s.out_dir) / "lemma.json") == a);
}
