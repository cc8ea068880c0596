// End-to-end checks of the command-line tool: spawns the binary passed as
// argv[1]; argv[2] points at the test data directory.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

std::string g_tool;
std::string g_data;

int run_cli(const std::string& args) {
    std::string cmd = g_tool + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string temp_dir(const std::string& tag) {
    auto p = std::filesystem::temp_directory_path() / ("th_cli_" + tag);
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

TEST_CASE("cli: missing or invalid speed file exits 2 without outputs") {
    std::string out = temp_dir("bad");
    CHECK(run_cli("hydro --speed /nonexistent.speed --t 0.5 --xrange -1,1 --out " + out) == 2);
    CHECK(run_cli("hydro --speed " + g_data + "/bad.speed --t 0.5 --xrange -1,1 --out " + out) ==
          2);
    CHECK(!std::filesystem::exists(out + "/hydro.csv"));
}

TEST_CASE("cli: godunov run writes csv and manifest, exit 0") {
    std::string out = temp_dir("god");
    int rc = run_cli("godunov --speed " + g_data + "/xstep13.speed --init step --t 0.5 "
                     "--dx 0.01 --xrange -2,2 --out " + out);
    CHECK(rc == 0);
    auto csv = slurp(out + "/godunov.csv");
    CHECK(csv.rfind("x,rho\n", 0) == 0);
    CHECK(std::filesystem::exists(out + "/manifest.json"));
}

TEST_CASE("cli: tasep csv schema and replay determinism") {
    std::string out1 = temp_dir("t1"), out2 = temp_dir("t2");
    std::string args = "tasep-sim --speed " + g_data + "/const1.speed --init step --n 15 "
                       "--t 0.4 --window -1,1 --seed 7 --out ";
    CHECK(run_cli(args + out1) == 0);
    CHECK(run_cli(args + out2) == 0);
    auto a = slurp(out1 + "/tasep.csv");
    CHECK(a.rfind("time,site,height,occupation\n", 0) == 0);
    CHECK(a == slurp(out2 + "/tasep.csv"));
}

TEST_CASE("cli: envelope check passes coupled and flags decoupled clocks") {
    std::string out = temp_dir("env");
    std::string base = "envelope-check --speed " + g_data + "/xstep13.speed --init step "
                       "--n 8 --t 2 --window -8,8 --replicas 2 --out ";
    CHECK(run_cli(base + out) == 0);
    CHECK(run_cli(base + temp_dir("envneg") + " --decouple") == 0);
}

TEST_CASE("cli: config-file runner and bad experiment") {
    std::string out = temp_dir("cfg");
    std::string cfg_path = out + "/exp.cfg";
    {
        std::ofstream cfg(cfg_path);
        cfg << "experiment = level_curve\nspeed = " << g_data << "/const1.speed\n"
            << "t = 1\nxrange = -1,1\nsamples = 21\n";
    }
    CHECK(run_cli("run " + cfg_path + " --out-dir " + out) == 0);
    auto csv = slurp(out + "/level_curve.csv");
    CHECK(csv.rfind("x,g\n", 0) == 0);
    {
        std::ofstream cfg(cfg_path);
        cfg << "experiment = nosuch\n";
    }
    CHECK(run_cli("run " + cfg_path + " --out-dir " + out) == 2);
}

TEST_CASE("cli: lpp-lln rejects a zero scale") {
    CHECK(run_cli("lpp-lln --speed " + g_data + "/const1.speed --x 1 --y 1 --n 0,50 --out " +
                  temp_dir("z")) == 2);
}

int main_impl(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: cli_checks <tool> <data-dir>\n");
        return 1;
    }
    g_tool = argv[1];
    g_data = argv[2];
    doctest::Context ctx;
    return ctx.run();
}

int main(int argc, char** argv) { return main_impl(argc, argv); }
