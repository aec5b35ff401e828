#include "doctest.h"

#include "qmsieve/cli/cli.hpp"
#include "qmsieve/classgroup/class_group.hpp"
#include "qmsieve/version.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qms;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path fresh_dir(std::string const& name)
{
    fs::path d = fs::temp_directory_path() / ("qmsieve-test-" + name);
    fs::remove_all(d);
    return d;
}

} // namespace

TEST_CASE("field spec grammar")
{
    CHECK(parse_field_spec("Q") == FieldSpec::rationals());
    CHECK(parse_field_spec("realquad:5") == FieldSpec::real_quadratic(Int(5)));
    CHECK(parse_field_spec("k:quad:-7") == FieldSpec::multiquadratic({Int(-7)}));
    CHECK(parse_field_spec("multiquad:2,-17") == FieldSpec::multiquadratic({Int(2), Int(-17)}));
    CHECK(parse_field_spec("poly:-1,-2,1,1") == FieldSpec::totally_real_poly(IntPolynomial({-1, -2, 1, 1})));
    CHECK(parse_field_spec("relquad:poly:-1,-2,1,1:-17") ==
          FieldSpec::relative_quadratic(FieldSpec::totally_real_poly(IntPolynomial({-1, -2, 1, 1})),
                                        {Int(-17), Int(0), Int(0)}));
    CHECK(parse_field_spec("relquad:realquad:2:-1,0") ==
          FieldSpec::relative_quadratic(FieldSpec::real_quadratic(Int(2)), {Int(-1), Int(0)}));
    CHECK_THROWS_AS(parse_field_spec("realquad:x"), InvalidInput);
    CHECK_THROWS_AS(parse_field_spec("relquad:realquad:2:1,2,3"), InvalidInput);
    CHECK_THROWS_AS(parse_field_spec("cubic:3"), InvalidInput);

    auto r = parse_ram_spec("ram:2,3");
    CHECK(r == std::vector<std::pair<Int, std::size_t>>{{Int(2), 0}, {Int(3), 0}});
    CHECK(parse_ram_spec("ram:@7.0,7.1") == std::vector<std::pair<Int, std::size_t>>{{Int(7), 0}, {Int(7), 1}});
    CHECK_THROWS_AS(parse_ram_spec("2,3"), InvalidInput);
    CHECK(parse_prime_spec("23.1") == std::pair<Int, std::size_t>{Int(23), 1});
}

TEST_CASE("subcommand outputs and exit codes")
{
    std::string cache = "--cache=" + fresh_dir("outputs").string();
    CHECK(cli({cache, "nlcm", "realquad:2"}).out == "24\n");
    CHECK(cli({cache, "nlcm", "realquad:5"}).out == "60\n");
    auto w = cli({cache, "wset", "Q", "2", "1"});
    CHECK(w.code == 0);
    CHECK(w.out == "2 (e=1, f=1, N=2)\n3 (e=1, f=1, N=3)\n5 (e=1, f=1, N=5)\n");
    CHECK(cli({cache, "vset", "Q", "2", "1"}).out == w.out);
    CHECK(cli({cache, "torsion-bound", "Q", "2", "1"}).out == "28800\n");
    CHECK(cli({cache, "splits", "ram:2,3", "13"}).out == "true\n");
    CHECK(cli({cache, "splits", "ram:2,3", "7"}).out == "false\n");

    auto t = cli({cache, "check-thm13", "Q", "ram:2,3", "k:quad:-7", "23"});
    CHECK(t.code == 0);
    CHECK(t.out.find("verdict: Inconclusive (no_imaginary_quadratic_hcf)") != std::string::npos);

    auto j = cli({cache, "--json", "check-m1", "Q", "ram:2,3", "2", "1", "11"});
    CHECK(j.code == 0);
    CHECK(json::parse(j.out).at("verdict") == "Empty");

    CHECK(cli({cache, "nlcm", "bogus"}).code == 2);
    CHECK(cli({cache, "fr", "Q", "4", "1"}).code == 2);       // 4 is not prime
    CHECK(cli({cache, "splits", "ram:2", "13"}).code == 2);   // odd ramification
    CHECK(cli({cache, "--workers", "0", "nlcm", "Q"}).code == 2);
    CHECK(cli({cache, "no-such-command"}).code == 2);
    CHECK(cli({"--help"}).code == 0);
    // a 5-point grid cap cannot hold the Q(sqrt -5) scan
    auto capped = cli({cache, "--grid-cap", "5", "--json", "check-thm13", "Q", "ram:2,3", "quad:-5", "29"});
    CHECK(capped.code == 0);
    CHECK(json::parse(capped.out).at("checks").back().at("outcome") == "resource");
    CHECK(cli({cache, "--max-minkowski", "10", "classgroup", "multiquad:2,-17"}).code == 3);
}

TEST_CASE("config files reject unknown keys")
{
    fs::path dir = fresh_dir("config");
    fs::create_directories(dir);
    fs::path good = dir / "good.json", bad = dir / "bad.json", zero = dir / "zero.json";
    std::ofstream(good) << R"({"workers": 2, "grid_cap": 1000})";
    std::ofstream(bad) << R"({"workers": 2, "colour": "blue"})";
    std::ofstream(zero) << R"({"ell_cap": 0})";
    CHECK(cli({"--no-cache", "--config", good.string(), "nlcm", "Q"}).code == 0);
    CHECK(cli({"--no-cache", "--config", bad.string(), "nlcm", "Q"}).code == 2);
    CHECK(cli({"--no-cache", "--config", zero.string(), "nlcm", "Q"}).code == 2);
}

TEST_CASE("cache round trip, version check and corruption")
{
    fs::path dir = fresh_dir("cache") / "nested";
    Cache c(dir);
    std::ostringstream warn;
    json key{{"field", "x"}};
    CHECK(!c.get("classgroup", key, warn));
    c.put("classgroup", key, json{{"h", "8"}});
    CHECK(fs::exists(dir)); // created on demand
    CHECK(*c.get("classgroup", key, warn) == json{{"h", "8"}});

    fs::path file = dir / (c.key_digest("classgroup", key) + ".json");
    json entry = json::parse(std::ifstream(file));
    entry["version"] = "qmsieve 0.0.0";
    std::ofstream(file) << entry.dump();
    CHECK(!c.get("classgroup", key, warn)); // other version is a miss

    std::ofstream(file) << "{not json";
    CHECK(!c.get("classgroup", key, warn));
    CHECK(warn.str().find("corrupt") != std::string::npos);

    // class group payload survives the CLI cache bit for bit
    std::string cache = "--cache=" + (dir / "cg").string();
    auto first = cli({cache, "--json", "classgroup", "multiquad:2,-17"});
    auto second = cli({cache, "--json", "classgroup", "multiquad:2,-17"});
    CHECK(first.code == 0);
    CHECK(first.out == second.out);
    CHECK(json::parse(first.out).at("result").at("h") == "8");
    CHECK(std::distance(fs::directory_iterator(dir / "cg"), fs::directory_iterator{}) == 1);
}

TEST_CASE("structured output is identical across worker counts")
{
    for (auto const& args : std::vector<std::vector<std::string>>{
             {"check-thm13", "Q", "ram:2,3", "quad:-5", "29"},
             {"classgroup", "multiquad:2,-17"},
             {"s-set", "quad:-5", "Q"},
             {"fr", "realquad:2", "2", "1"}}) {
        std::vector<std::string> a{"--no-cache", "--json", "--workers", "1"}, b{"--no-cache", "--json", "--workers", "8"};
        a.insert(a.end(), args.begin(), args.end());
        b.insert(b.end(), args.begin(), args.end());
        auto ra = cli(a), rb = cli(b);
        CHECK(ra.code == 0);
        CHECK(ra.out == rb.out);
    }
}

TEST_CASE("verify subcommand replays a certificate")
{
    fs::path dir = fresh_dir("verify");
    fs::create_directories(dir);
    auto r = cli({"--no-cache", "--json", "check-thm13", "Q", "ram:2,3", "quad:-5", "31"});
    REQUIRE(r.code == 0);
    fs::path cert = dir / "cert.json";
    std::ofstream(cert) << r.out;
    CHECK(cli({"--no-cache", "verify", cert.string()}).out == "verified\n");
    json j = json::parse(r.out);
    j["checks"][0]["data"]["h"] = "3";
    std::ofstream(cert) << j.dump();
    CHECK(cli({"--no-cache", "verify", cert.string()}).code == 2);
}
