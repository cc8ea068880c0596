#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "core/config.hpp"
#include "core/error.hpp"
#include "core/io.hpp"
#include "core/run.hpp"

using namespace th;

namespace {

std::string temp_dir(const std::string& tag) {
    auto p = std::filesystem::temp_directory_path() / ("th_test_" + tag);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p.string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), {});
}

} // namespace

TEST_CASE("config: parsing, sections, overrides and failure modes") {
    auto cfg = Config::parse("# comment\n[run]\nexperiment = hydro\nt = 1.5\nn = 10,20\n");
    CHECK(cfg.str("experiment") == "hydro");
    CHECK(cfg.num("t") == 1.5);
    CHECK(cfg.int_list("n") == std::vector<int64_t>{10, 20});
    CHECK(cfg.num_or("missing", 7.0) == 7.0);
    CHECK_THROWS_AS(cfg.num("experiment"), th::error);
    CHECK_THROWS_AS((void)Config::parse("just a line without equals\n"), th::error);
    cfg.set("t", "2.0");
    CHECK(cfg.num("t") == 2.0);
}

TEST_CASE("run: invalid speed file is a parse error and writes nothing") {
    Config cfg;
    cfg.set("experiment", "hydro");
    cfg.set("speed_text", "family = constant\nvalue = oops\n");
    cfg.set("t", "0.5");
    cfg.set("xrange", "-0.5,0.5");
    std::string out = temp_dir("badspeed");
    cfg.set("out", out);
    CHECK_THROWS_AS(run_experiment(cfg), th::error);
    CHECK(!std::filesystem::exists(out + "/hydro.csv"));
}

TEST_CASE("run: zero scale in the n list is rejected") {
    Config cfg;
    cfg.set("experiment", "lpp_lln");
    cfg.set("speed_text", "family = constant\nvalue = 1\n");
    cfg.set("x", "1");
    cfg.set("y", "1");
    cfg.set("n", "0,100");
    cfg.set("out", temp_dir("zeron"));
    CHECK_THROWS_AS(run_experiment(cfg), th::error);
}

TEST_CASE("run: lpp_lln writes the pinned CSV schema and a manifest") {
    Config cfg;
    cfg.set("experiment", "lpp_lln");
    cfg.set("speed_text", "family = constant\nvalue = 1\n");
    cfg.set("x", "0.5");
    cfg.set("y", "0.5");
    cfg.set("n", "40,80");
    cfg.set("replicas", "2");
    std::string out = temp_dir("lln");
    cfg.set("out", out);
    auto res = run_experiment(cfg);
    CHECK(res.passed);
    auto csv = slurp(out + "/lln.csv");
    CHECK(csv.rfind("n,replica,value,mean,stderr\n", 0) == 0);
    CHECK(std::filesystem::exists(out + "/manifest.json"));
    auto manifest = slurp(out + "/manifest.json");
    CHECK(manifest.find("fnv1a64") != std::string::npos);
    CHECK(manifest.find("\"passed\": true") != std::string::npos);
}

TEST_CASE("run: identical configs give byte-identical outputs") {
    for (int round = 0; round < 2; ++round) {
        Config cfg;
        cfg.set("experiment", "tasep");
        cfg.set("speed_text", "family = xstep\nx0 = 0\nleft = 1\nright = 3\n");
        cfg.set("init", "step");
        cfg.set("n", "20");
        cfg.set("t", "0.4");
        cfg.set("window", "-1,1");
        cfg.set("seed", "99");
        cfg.set("out", temp_dir("det" + std::to_string(round)));
        auto res = run_experiment(cfg);
        CHECK(res.passed);
    }
    auto a = slurp(std::filesystem::temp_directory_path() / "th_test_det0" / "tasep.csv");
    auto b = slurp(std::filesystem::temp_directory_path() / "th_test_det1" / "tasep.csv");
    REQUIRE(!a.empty());
    CHECK(a == b);
}

TEST_CASE("run: hydro CSV carries the pinned columns with contact labels") {
    Config cfg;
    cfg.set("experiment", "hydro");
    cfg.set("speed_text", "family = constant\nvalue = 1\n");
    cfg.set("init", "step");
    cfg.set("t", "0.6");
    cfg.set("xrange", "-1,1");
    cfg.set("samples", "11");
    cfg.set("h", "0.033");
    std::string out = temp_dir("hydrocsv");
    cfg.set("out", out);
    auto res = run_experiment(cfg);
    CHECK(res.passed);
    auto csv = slurp(out + "/hydro.csv");
    CHECK(csv.rfind("x,v,rho,qstar,case\n", 0) == 0);
    CHECK(csv.find("interior") != std::string::npos);
}

TEST_CASE("run: envelope experiment reports coupled pass and decoupled failure") {
    Config base;
    base.set("experiment", "envelope_check");
    base.set("speed_text", "family = xstep\nx0 = 0\nleft = 1\nright = 3\n");
    base.set("init", "step");
    base.set("n", "8");
    base.set("t", "2");
    base.set("window", "-8,8");
    base.set("replicas", "2");
    {
        Config cfg = base;
        cfg.set("out", temp_dir("envok"));
        auto res = run_experiment(cfg);
        CHECK(res.passed);
    }
    {
        Config cfg = base;
        cfg.set("decouple", "1");
        cfg.set("out", temp_dir("envbad"));
        auto res = run_experiment(cfg); // negative control passes iff violations occur
        CHECK(res.passed);
    }
}

TEST_CASE("run: compare experiment passes on a small homogeneous step") {
    Config cfg;
    cfg.set("experiment", "compare");
    cfg.set("speed_text", "family = constant\nvalue = 1\n");
    cfg.set("init", "step");
    cfg.set("n", "60,120");
    cfg.set("t", "0.8");
    cfg.set("xrange", "-1,1");
    cfg.set("samples", "11");
    cfg.set("replicas", "6");
    cfg.set("bound", "0.08");
    cfg.set("out", temp_dir("compare"));
    auto res = run_experiment(cfg);
    CHECK(res.passed);
}

TEST_CASE("io: atomic writes and digests") {
    std::string dir = temp_dir("io");
    write_file_atomic(dir + "/a.txt", "hello\n");
    CHECK(slurp(dir + "/a.txt") == "hello\n");
    auto d1 = fnv1a64_hex(dir + "/a.txt");
    write_file_atomic(dir + "/b.txt", "hello\n");
    CHECK(fnv1a64_hex(dir + "/b.txt") == d1);
    write_file_atomic(dir + "/c.txt", "hellp\n");
    CHECK(fnv1a64_hex(dir + "/c.txt") != d1);
}
