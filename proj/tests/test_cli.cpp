#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

namespace {

std::string binary() {
    const char* p = std::getenv("DQSIM_BIN");
    REQUIRE_MESSAGE(p != nullptr, "DQSIM_BIN must point at the dqsim executable");
    return p;
}

// Runs `dqsim <args>` through the shell; stdout/stderr land in <tag>.out/.err.
int run(const std::string& args, const std::string& tag, const std::string& env = "") {
    std::string cmd;
    if (!env.empty()) cmd += env + " ";
    cmd += binary() + " " + args + " > " + tag + ".out 2> " + tag + ".err";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -2;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

// Rows after the '#' metadata block and the header line.
std::vector<std::string> data_rows(const std::string& csv_text) {
    auto all = lines_of(csv_text);
    std::vector<std::string> rows;
    bool seen_header = false;
    for (const auto& l : all) {
        if (!l.empty() && l.front() == '#') continue;
        if (!seen_header) {
            seen_header = true;
            continue;
        }
        rows.push_back(l);
    }
    return rows;
}

std::vector<std::string> split_fields(const std::string& row) {
    std::vector<std::string> fields;
    std::istringstream in(row);
    std::string f;
    while (std::getline(in, f, ',')) fields.push_back(f);
    return fields;
}

} // namespace

TEST_CASE("amplitude with t_max=0 emits the single initial row") {
    CHECK(run("amplitude --set t_max=0 --out t0", "t0") == 0);
    const auto text = slurp("t0_amplitude.csv");
    const auto rows = data_rows(text);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0] == "0,1,0,1");
    CHECK(text.find("gamma*t,re_E,im_E,abs2_E") != std::string::npos);
    CHECK(text.find("# ") == 0);
}

TEST_CASE("amplitude defaults produce an ordered 501-row trajectory") {
    CHECK(run("amplitude --out ampdef", "ampdef") == 0);
    const auto rows = data_rows(slurp("ampdef_amplitude.csv"));
    REQUIRE(rows.size() == 501);
    CHECK(rows.front() == "0,1,0,1");
    double prev = -1.0;
    for (const auto& r : rows) {
        const double t = std::stod(split_fields(r)[0]);
        CHECK(t > prev);
        prev = t;
    }
    CHECK(prev == doctest::Approx(25.0));
    CHECK(slurp("ampdef.out").find("wrote ampdef_amplitude.csv") != std::string::npos);
}

TEST_CASE("usage problems exit with 2 and name the offender") {
    CHECK(run("amplitude --set bogus=1 --out e1", "e1") == 2);
    CHECK(slurp("e1.err").find("bogus") != std::string::npos);

    CHECK(run("amplitude --set omega=-1 --out e2", "e2") == 2);
    CHECK(slurp("e2.err").find("omega") != std::string::npos);

    CHECK(run("amplitude --set t_steps=0 --out e3", "e3") == 2);
    CHECK(slurp("e3.err").find("t_steps") != std::string::npos);

    CHECK(run("", "e4") == 2);              // missing subcommand
    CHECK(run("frobnicate", "e5") == 2);    // unknown subcommand
    CHECK(run("figure 9 --out e6", "e6") == 2);
    CHECK(run("amplitude --config does_not_exist.cfg --out e7", "e7") == 2);
}

TEST_CASE("config files parse with comments and report offending lines") {
    {
        std::ofstream cfg("good.cfg", std::ios::binary);
        cfg << "# scenario preset\n"
               "omega = 0.5   # drive strength\n"
               "\n"
               "t_max = 2\n"
               "t_steps = 5\n";
    }
    CHECK(run("amplitude --config good.cfg --out cfgrun", "cfgrun") == 0);
    const auto text = slurp("cfgrun_amplitude.csv");
    CHECK(text.find("# omega = 0.5") != std::string::npos);
    const auto rows = data_rows(text);
    REQUIRE(rows.size() == 5);
    const std::vector<std::string> expect = {"0", "0.5", "1", "1.5", "2"};
    for (std::size_t i = 0; i < rows.size(); ++i)
        CHECK(split_fields(rows[i])[0] == expect[i]);

    {
        std::ofstream cfg("bad.cfg", std::ios::binary);
        cfg << "t_max = 10\n"
               "\n"
               "omega = banana\n";
    }
    CHECK(run("amplitude --config bad.cfg --out badrun", "badrun") == 2);
    const auto err = slurp("badrun.err");
    CHECK(err.find("omega") != std::string::npos);
    CHECK(err.find("line 3") != std::string::npos);
}

TEST_CASE("seeded monte carlo runs are byte-reproducible") {
    namespace fs = std::filesystem;
    const std::string args =
        "power --set power_method=montecarlo --set power_samples=20000 "
        "--set t_max=2 --set t_steps=3 --out mcrun";
    CHECK(run(args, "mc1") == 0);
    fs::copy_file("mcrun_power.csv", "mcrun_first.csv", fs::copy_options::overwrite_existing);
    CHECK(run(args, "mc2") == 0);
    CHECK(slurp("mcrun_power.csv") == slurp("mcrun_first.csv"));

    // a different seed must change the sampled values
    CHECK(run(args + " --set seed=7", "mc3") == 0);
    CHECK(slurp("mcrun_power.csv") != slurp("mcrun_first.csv"));
}

TEST_CASE("DQSIM_SEED overrides the config file but yields to --set") {
    namespace fs = std::filesystem;
    {
        std::ofstream cfg("seeded.cfg", std::ios::binary);
        cfg << "seed = 1\n";
    }
    const std::string args =
        "power --config seeded.cfg --set power_method=montecarlo "
        "--set power_samples=20000 --set t_max=2 --set t_steps=3 --out sdrun";

    CHECK(run(args + " --set seed=7", "sd1") == 0);
    fs::copy_file("sdrun_power.csv", "sdrun_set7.csv", fs::copy_options::overwrite_existing);

    CHECK(run(args, "sd2", "DQSIM_SEED=7") == 0);
    CHECK(slurp("sdrun_power.csv") == slurp("sdrun_set7.csv"));

    // --set wins over the environment
    CHECK(run(args + " --set seed=7", "sd3", "DQSIM_SEED=3") == 0);
    CHECK(slurp("sdrun_power.csv") == slurp("sdrun_set7.csv"));
}

TEST_CASE("swap emits unit concurrence for matched initial states") {
    CHECK(run("swap --set theta=0.9 --set theta2=0.9 --set phi=0.3 --set phi2=0.3 "
              "--set t_max=5 --set t_steps=11 --out swmatch",
              "swmatch") == 0);
    const auto rows = data_rows(slurp("swmatch_swap.csv"));
    REQUIRE(rows.size() == 11);
    for (const auto& r : rows) CHECK(split_fields(r)[1] == "1");
}

TEST_CASE("spectrum spans the configured detuning grid") {
    CHECK(run("spectrum --set dk_steps=41 --out spgrid", "spgrid") == 0);
    const auto rows = data_rows(slurp("spgrid_spectrum.csv"));
    REQUIRE(rows.size() == 41);
    CHECK(std::stod(split_fields(rows.front())[0]) == doctest::Approx(-1.5));
    CHECK(std::stod(split_fields(rows.back())[0]) == doctest::Approx(1.5));
}

TEST_CASE("entropy starts at zero") {
    CHECK(run("entropy --set t_max=2 --set t_steps=5 --out entrun", "entrun") == 0);
    const auto rows = data_rows(slurp("entrun_entropy.csv"));
    REQUIRE(rows.size() == 5);
    CHECK(rows.front() == "0,0");
}

TEST_CASE("figure 5 regenerates its four curves and panel") {
    namespace fs = std::filesystem;
    CHECK(run("figure 5 --out f5", "f5") == 0);
    for (const char* name : {"f5_fig5_delta0.csv", "f5_fig5_delta0.01.csv",
                             "f5_fig5_delta0.1.csv", "f5_fig5_delta1.csv"}) {
        CHECK_MESSAGE(fs::exists(name), name);
        CHECK(data_rows(slurp(name)).size() == 1001);
    }
    const auto svg = slurp("f5_fig5.svg");
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("the quick validation suite passes") {
    CHECK(run("validate", "valrun") == 0);
    const auto out = slurp("valrun.out");
    CHECK(out.find("pass") != std::string::npos);
    CHECK(out.find("FAIL") == std::string::npos);
}
