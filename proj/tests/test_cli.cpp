// End-to-end checks through the installed command-line binary.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>

#include "sbsize/battery.hpp"

#ifndef SBSIZE_CLI
#error "SBSIZE_CLI must point at the built binary"
#endif

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(SBSIZE_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[512];
    while (fgets(buf, sizeof(buf), pipe) != nullptr) r.out += buf;
    const int st = pclose(pipe);
    r.code = WEXITSTATUS(st);
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// One shared scratch area with a small synthetic dataset.
struct Workspace {
    fs::path root;
    std::string data_args;

    Workspace() {
        root = fs::temp_directory_path() / "sbsize_cli_test";
        fs::remove_all(root);
        fs::create_directories(root);
        const auto r = run_cli("synth --profile mixed --days 8 --seed 5 --site-index 0 --out " +
                               (root / "data").string());
        REQUIRE(r.code == 0);
        data_args = " --site " + (root / "data/site.txt").string() + " --irradiance " +
                    (root / "data/irradiance.csv").string() + " --temperature " +
                    (root / "data/temperature.csv").string();
    }
};

Workspace& ws() {
    static Workspace w;
    return w;
}

}  // namespace

TEST_CASE("synth produces a loadable dataset") {
    CHECK(fs::exists(ws().root / "data/site.txt"));
    CHECK(fs::exists(ws().root / "data/irradiance.csv"));
    CHECK(fs::exists(ws().root / "data/temperature.csv"));
}

TEST_CASE("sivi of a clear synthetic dataset is one everywhere") {
    const auto clear_dir = (ws().root / "clear").string();
    REQUIRE(run_cli("synth --profile clear --days 4 --seed 1 --site-index 1 --out " + clear_dir)
                .code == 0);
    const std::string args = " --site " + clear_dir + "/site.txt --irradiance " + clear_dir +
                             "/irradiance.csv --temperature " + clear_dir + "/temperature.csv";
    const auto out_dir = (ws().root / "sivi_clear").string();
    REQUIRE(run_cli("sivi" + args + " --out " + out_dir).code == 0);
    std::ifstream in(out_dir + "/sivi.csv");
    std::string line;
    std::getline(in, line);
    CHECK(line == "date,sivi");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(line.substr(11) == "1.000000");
    }
    CHECK(rows == 4);
}

TEST_CASE("estimate prints the expected capacity") {
    auto r = run_cli("estimate --sivi 22 --alpha 0.0046 --beta 0.0567 --sigma 0.0315");
    CHECK(r.code == 0);
    CHECK(r.out == "0.1894\n");

    r = run_cli("estimate --sivi 0 --alpha 1 --beta 0 --sigma 0");
    CHECK(r.code == 0);
    CHECK(r.out == "0.0000\n");
}

TEST_CASE("estimate rejects ambiguous or missing coefficients") {
    CHECK(run_cli("estimate --sivi 5 --alpha 1 --beta 0 --sigma 0 --coeffs-file /nonexistent").code ==
          1);
    CHECK(run_cli("estimate --sivi 5 --alpha 1").code == 1);
    CHECK(run_cli("estimate --alpha 1 --beta 0 --sigma 0").code == 1);  // --sivi is required
}

TEST_CASE("size accepts either method and rejects mixed flags") {
    const auto out_a = (ws().root / "size_ma").string();
    CHECK(run_cli("size" + ws().data_args + " --method ma --ma-window 10 --out " + out_a).code == 0);
    const auto out_b = (ws().root / "size_rr").string();
    CHECK(run_cli("size" + ws().data_args + " --method rr --rr-limit 0.05 --out " + out_b).code == 0);
    CHECK(run_cli("size" + ws().data_args + " --method rr --ma-window 10 --out " + out_b).code == 1);
    CHECK(run_cli("size" + ws().data_args + " --method ma --rr-limit 0.05 --out " + out_b).code == 1);
}

TEST_CASE("config file supplies options and flags override it") {
    const auto cfg = ws().root / "run.cfg";
    std::ofstream(cfg) << "[size]\nma-window=20\npone=0.9\n";
    const auto out_a = (ws().root / "cfg_a").string();
    REQUIRE(run_cli("--config " + cfg.string() + " size" + ws().data_args + " --out " + out_a).code ==
            0);
    std::string summary = slurp(out_a + "/summary.txt");
    CHECK(summary.find("ma_window=20") != std::string::npos);
    CHECK(summary.find("pone=0.900000") != std::string::npos);

    const auto out_b = (ws().root / "cfg_b").string();
    REQUIRE(run_cli("--config " + cfg.string() + " size" + ws().data_args +
                    " --ma-window 5 --out " + out_b)
                .code == 0);
    CHECK(slurp(out_b + "/summary.txt").find("ma_window=5") != std::string::npos);
}

TEST_CASE("size outputs are byte-stable across reruns and thread counts") {
    const auto d1 = (ws().root / "det1").string();
    const auto d2 = (ws().root / "det2").string();
    REQUIRE(run_cli("size" + ws().data_args + " --jobs 8 --out " + d1).code == 0);
    REQUIRE(run_cli("size" + ws().data_args + " --jobs 1 --out " + d2).code == 0);
    CHECK(slurp(d1 + "/scatter.csv") == slurp(d2 + "/scatter.csv"));
    CHECK(slurp(d1 + "/cdf.csv") == slurp(d2 + "/cdf.csv"));
    CHECK(slurp(d1 + "/summary.txt") == slurp(d2 + "/summary.txt"));

    // mixed fixture: capacities correlate strongly with variability
    const std::string summary = slurp(d1 + "/summary.txt");
    auto value_of = [&](const std::string& key) {
        const size_t pos = summary.find(key + "=");
        REQUIRE(pos != std::string::npos);
        return std::atof(summary.c_str() + pos + key.size() + 1);
    };
    CHECK(value_of("sboc_p95") > 0.0);
    CHECK(value_of("pearson_r") > 0.5);
}

TEST_CASE("compare writes the four-method table") {
    const auto out = (ws().root / "cmp").string();
    REQUIRE(run_cli("compare" + ws().data_args + " --jobs 2 --out " + out).code == 0);
    std::ifstream in(out + "/compare.csv");
    std::string line;
    std::getline(in, line);
    CHECK(line == "method,sboc_kwh_per_kwp,coverage_pct");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 4);
}

TEST_CASE("data errors exit with code 2") {
    const auto empty = ws().root / "empty.csv";
    std::ofstream(empty) << "timestamp,ghi_wm2\n";
    const std::string args = " --site " + (ws().root / "data/site.txt").string() +
                             " --irradiance " + empty.string() + " --temperature " +
                             (ws().root / "data/temperature.csv").string();
    CHECK(run_cli("compare" + args + " --out " + (ws().root / "x").string()).code == 2);
    CHECK(run_cli("sivi" + args + " --out " + (ws().root / "x").string()).code == 2);
}

TEST_CASE("sensitivity sweeps and validates the axis") {
    const auto out = (ws().root / "sens").string();
    REQUIRE(run_cli("sensitivity" + ws().data_args + " --axis dod --values 0.8,0.5 --jobs 2 --out " +
                    out)
                .code == 0);
    std::ifstream in(out + "/sensitivity.csv");
    std::string header, row1, row2;
    std::getline(in, header);
    std::getline(in, row1);
    std::getline(in, row2);
    CHECK(header == "axis,value,mean_sboc,sigma,pearson_r");
    const double mean1 = std::atof(row1.substr(row1.find(',', 4) + 1).c_str());
    const double mean2 = std::atof(row2.substr(row2.find(',', 4) + 1).c_str());
    CHECK(mean2 >= mean1);  // tighter DoD never needs less battery

    CHECK(run_cli("sensitivity" + ws().data_args + " --axis bogus --values 1 --out " + out).code == 1);
    CHECK(run_cli("sensitivity" + ws().data_args + " --axis dod --values 1.4 --out " + out).code == 2);
}

TEST_CASE("fit-battery round trips through the constants file") {
    const auto curve = ws().root / "curve.csv";
    std::ofstream(curve) << "hours,amps\n1,242.4\n3,115.7\n5,79.8\n8,55.23\n10,47.01\n";
    const auto cfile = ws().root / "constants.txt";
    REQUIRE(run_cli("fit-battery --curve " + curve.string() + " --out-file " + cfile.string()).code ==
            0);
    const sbsize::KibamConstants c = sbsize::load_kibam_constants(cfile.string());
    for (auto [t, amps] : {std::pair{1.0, 242.4}, {5.0, 79.8}, {10.0, 47.01}}) {
        const double modeled = sbsize::kibam_capacity(t, c.k1_per_h, c.k2, c.q_max_ref_ah);
        CHECK(std::abs(modeled - t * amps) / (t * amps) < 0.02);
    }

    const auto short_curve = ws().root / "short.csv";
    std::ofstream(short_curve) << "hours,amps\n1,242.4\n";
    CHECK(run_cli("fit-battery --curve " + short_curve.string()).code == 2);
}
