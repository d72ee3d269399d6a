#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "codiag/cli.hpp"
#include "codiag/errors.hpp"
#include "codiag/jsonio.hpp"

using namespace codiag;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("codiag_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
    static int& counter() { static int c = 0; return c; }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

void put(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

TEST_CASE("h grid parsing") {
    const auto list = parse_h_grid("0.1,0.05,0.025");
    REQUIRE(list.size() == 3);
    CHECK(list[1] == 0.05);
    const auto geo = parse_h_grid("geometric:0.25:2:12");
    REQUIRE(geo.size() == 12);
    CHECK(geo.front() == 0.25);
    CHECK(geo.back() == doctest::Approx(0.25 / 2048.0));
    CHECK_THROWS_AS(parse_h_grid("geometric:0.25:2"), ConfigError);
    CHECK_THROWS_AS(parse_h_grid(""), ConfigError);
}

TEST_CASE("complex parsing") {
    CHECK(parse_complex("0.5") == std::complex<double>(0.5, 0.0));
    CHECK(parse_complex("0.5+3.0i") == std::complex<double>(0.5, 3.0));
    CHECK(parse_complex("-1e-2-2i") == std::complex<double>(-0.01, -2.0));
    CHECK(parse_complex("3i") == std::complex<double>(0.0, 3.0));
}

TEST_CASE("json17 formatting round-trips and hashes are stable") {
    CHECK(format17(0.1) == "0.10000000000000001");
    Json j{{"x", 0.1}, {"n", 7}};
    const std::string dumped = dump_json17(j);
    CHECK(dumped.find("0.10000000000000001") != std::string::npos);
    CHECK(hex64(fnv1a64("abc")) == hex64(fnv1a64("abc")));
    CHECK(hex64(fnv1a64("abc")) != hex64(fnv1a64("abd")));
}

TEST_CASE("build-blaschke writes a spec plus manifest") {
    TempDir dir;
    put(dir.file("psi.json"), R"({"family":"power","p":2})");
    RunConfig cfg;
    cfg.subcommand = "build-blaschke";
    cfg.psi_path = dir.file("psi.json");
    cfg.depth = 12;
    cfg.out_path = dir.file("spec.json");
    REQUIRE(run(cfg) == 0);
    const Json spec = Json::parse(slurp(dir.file("spec.json")));
    CHECK(spec.at("depth") == 12);
    CHECK(spec.at("h_exponent").at(0) == 14);
    const Json manifest = Json::parse(slurp(dir.file("spec.json") + ".manifest.json"));
    CHECK(manifest.at("outputs").size() == 1);
    CHECK(manifest.at("outputs").at(0).contains("fnv1a64"));
    CHECK(manifest.at("version").get<std::string>() == kVersion);
}

TEST_CASE("rho subcommand: artifact determinism and the statistical floor") {
    TempDir dir;
    put(dir.file("s.json"), R"({"kind":"identity"})");
    RunConfig cfg;
    cfg.subcommand = "rho";
    cfg.symbol_path = dir.file("s.json");
    cfg.samples = 1 << 12;
    cfg.h_list = {0.2, 0.1};
    cfg.out_path = dir.file("rho.csv");
    REQUIRE(run(cfg) == 0);
    const std::string first = slurp(dir.file("rho.csv"));
    cfg.out_path = dir.file("rho2.csv");
    REQUIRE(run(cfg) == 0);
    CHECK(first == slurp(dir.file("rho2.csv")));
    CHECK(first.rfind("h,rho,binomial_stderr", 0) == 0);

    cfg.h_list = {1e-4};  // below 10/M for M = 4096
    cfg.out_path = dir.file("rho3.csv");
    CHECK(run(cfg) == 4);
}

TEST_CASE("config errors exit with code 2") {
    TempDir dir;
    put(dir.file("bad.json"), R"({"kind":"identity","extra":1})");
    RunConfig cfg;
    cfg.subcommand = "rho";
    cfg.symbol_path = dir.file("bad.json");
    cfg.h_list = {0.1};
    cfg.out_path = dir.file("x.csv");
    CHECK(run(cfg) == 2);
    cfg.symbol_path = dir.file("missing.json");
    CHECK(run(cfg) == 2);
    RunConfig unknown;
    unknown.subcommand = "frobnicate";
    CHECK(run(unknown) == 2);
}

TEST_CASE("calibrate below the floor exits with code 4") {
    RunConfig cfg;
    cfg.subcommand = "calibrate";
    cfg.n_lo = cfg.n_hi = 1;
    cfg.target_eps = 1e-9;
    cfg.paths = 100000;
    TempDir dir;
    cfg.out_path = dir.file("cal.json");
    CHECK(run(cfg) == 4);
}

TEST_CASE("punctured pullback surfaces as a numerical failure (exit 3)") {
    TempDir dir;
    put(dir.file("s.json"), R"({"kind":"punctured"})");
    RunConfig cfg;
    cfg.subcommand = "rho";
    cfg.symbol_path = dir.file("s.json");
    cfg.samples = 1 << 12;
    cfg.h_list = {0.1};
    cfg.out_path = dir.file("x.csv");
    CHECK(run(cfg) == 3);
}

TEST_CASE("report on a strict contraction: compact, all S_p, exit 0") {
    TempDir dir;
    put(dir.file("s.json"), R"({"kind":"scaling","s":0.5})");
    put(dir.file("psi.json"), R"({"family":"power","p":2})");
    RunConfig cfg;
    cfg.subcommand = "report";
    cfg.symbol_path = dir.file("s.json");
    cfg.psi_path = dir.file("psi.json");
    cfg.samples = 1 << 12;
    cfg.h_list = {0.25, 0.125, 0.0625};
    cfg.out_path = dir.file("report.json");
    REQUIRE(run(cfg) == 0);
    const Json rep = Json::parse(slurp(dir.file("report.json")));
    CHECK(rep.at("verdicts").at("delta_trend").at("value") == "to-zero");
    for (const auto& v : rep.at("verdicts").at("schatten").at("value"))
        CHECK(v.at("verdict") == "in S_p");
    // run again: byte-identical artifacts (manifest differs only in wall time)
    const std::string bytes = slurp(dir.file("report.json"));
    cfg.out_path = dir.file("report2.json");
    REQUIRE(run(cfg) == 0);
    CHECK(bytes == slurp(dir.file("report2.json")));
}

TEST_CASE("luecking-a and nevanlinna subcommands emit stable tables") {
    TempDir dir;
    put(dir.file("s.json"), R"({"kind":"scaling","s":0.5})");
    RunConfig cfg;
    cfg.subcommand = "luecking-a";
    cfg.symbol_path = dir.file("s.json");
    cfg.p = 2.0;
    cfg.nmax = 5;
    cfg.out_path = dir.file("ints.csv");
    REQUIRE(run(cfg) == 0);
    CHECK(slurp(dir.file("ints.csv")).rfind("k,integral_ratio_lambda", 0) == 0);
    const Json v = Json::parse(slurp(dir.file("ints.csv") + ".verdict.json"));
    CHECK(v.at("ratio_diverging") == false);

    RunConfig nev;
    nev.subcommand = "nevanlinna";
    nev.symbol_path = dir.file("s.json");
    nev.grid = 16;
    nev.out_path = dir.file("N.csv");
    REQUIRE(run(nev) == 0);
    CHECK(slurp(dir.file("N.csv")).rfind("re,im,N", 0) == 0);
}

TEST_CASE("calibrate feeds rho-bound and harmonic through the barriers file") {
    TempDir dir;
    RunConfig cal;
    cal.subcommand = "calibrate";
    cal.n_lo = 1;
    cal.n_hi = 2;
    cal.eps_scheme = "exp";
    cal.paths = 4000;
    cal.out_path = dir.file("barriers.json");
    REQUIRE(run(cal) == 0);
    const Json barriers = Json::parse(slurp(dir.file("barriers.json")));
    CHECK(barriers.at("calibrations").size() == 2);

    RunConfig rb;
    rb.subcommand = "rho-bound";
    rb.barriers_path = dir.file("barriers.json");
    rb.h_list = {0.02, 1.0 / (8.0 * 3.141592653589793 * 2.5)};
    rb.out_path = dir.file("bound.json");
    REQUIRE(run(rb) == 0);
    const Json bound = Json::parse(slurp(dir.file("bound.json")));
    CHECK(bound.at("rows").at(0).at("n") == 1);
    CHECK(bound.at("rows").at(1).at("n") == 2);

    RunConfig harm;
    harm.subcommand = "harmonic";
    harm.domain = "omega_n";
    harm.n = 2;
    harm.paths = 2000;
    harm.barriers_path = dir.file("barriers.json");
    harm.out_path = dir.file("hm.json");
    REQUIRE(run(harm) == 0);
    const Json hm = Json::parse(slurp(dir.file("hm.json")));
    double total = 0.0;
    for (const auto& [label, m] : hm.at("exit_distribution").items())
        total += m.at("estimate").get<double>();
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("end-to-end: build-blaschke feeds the slow symbol into a report") {
    TempDir dir;
    put(dir.file("psi.json"), R"({"family":"power","p":2})");
    RunConfig build;
    build.subcommand = "build-blaschke";
    build.psi_path = dir.file("psi.json");
    build.depth = 16;
    build.out_path = dir.file("spec.json");
    REQUIRE(run(build) == 0);
    put(dir.file("slow.json"),
        std::string(R"({"kind":"slow","spec":")") + dir.file("spec.json") + "\"}");
    RunConfig rho;
    rho.subcommand = "rho";
    rho.symbol_path = dir.file("slow.json");
    rho.samples = 1 << 12;
    rho.h_list = {0.25, 0.125};
    rho.out_path = dir.file("rho.csv");
    REQUIRE(run(rho) == 0);
    CHECK(slurp(dir.file("rho.csv")).rfind("h,rho", 0) == 0);
}
