#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lvoa/report.hpp"

using namespace lvoa;

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string(LVOA_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path scratch_dir() {
    auto dir = std::filesystem::temp_directory_path() / ("lvoa_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST(Report, LatticeInfo) {
    const nlohmann::json a = cmd_lattice_info(2, 2).body;
    EXPECT_EQ(a["K"]["gram"], nlohmann::json::parse("[[4]]"));
    EXPECT_EQ(a["N"]["gram"], nlohmann::json::parse("[[4]]"));
    EXPECT_EQ(a["K"]["det"], 4);
    EXPECT_EQ(a["N"]["det"], 4);
    EXPECT_TRUE(a["pass"].get<bool>());
    const nlohmann::json b = cmd_lattice_info(3, 2).body;
    EXPECT_EQ(b["K"]["gram"], nlohmann::json::parse("[[4,-2],[-2,4]]"));
    EXPECT_EQ(b["N"]["det"], 12);
    EXPECT_THROW(cmd_lattice_info(1, 2), UsageError);
}

TEST(Report, VirasoroFamilies) {
    const RunOptions opts{kDefaultMaxStates, 1, 200000, 3};
    const nlohmann::json pw = cmd_virasoro(2, 2, "prime-omega", opts).body;
    EXPECT_TRUE(pw["pass"].get<bool>());
    EXPECT_EQ(pw["candidates"][0]["central_charge"], "1/2");
    const nlohmann::json lat = cmd_virasoro(2, 1, "lattice", opts).body;
    EXPECT_EQ(lat["candidates"][0]["central_charge"], "1");
    const nlohmann::json coset = cmd_virasoro(2, 2, "coset", opts).body;
    EXPECT_TRUE(coset["pass"].get<bool>());
    EXPECT_EQ(coset["candidates"][1]["central_charge"], "1/2");
    EXPECT_TRUE(coset["commuting"]["ok"].get<bool>());
    const nlohmann::json om = cmd_virasoro(3, 2, "omega", opts).body;
    EXPECT_TRUE(om["pass"].get<bool>());
    // (n-1)(l-1) pairs times modes 0..3.
    EXPECT_EQ(om["prime_omega_products"].size(), 8U);
    for (const auto& row : om["prime_omega_products"]) EXPECT_EQ(row["zero"].get<bool>(), row["terms"] == 0);
    EXPECT_THROW(cmd_virasoro(2, 2, "nonsense", opts), UsageError);
    EXPECT_THROW(cmd_virasoro(2, 1, "coset", opts), UsageError);
}

TEST(Report, DualityAndLeviDuality) {
    const nlohmann::json d = cmd_duality(2, 2, Rational(6)).body;
    EXPECT_TRUE(d["pass"].get<bool>());
    EXPECT_EQ(d["coset_dims"], nlohmann::json::parse("[1,0,1,1,2,2,3]"));
    EXPECT_EQ(d["parafermion_dims"], d["coset_dims"]);
    for (const auto& row : d["per_weight"]) {
        EXPECT_TRUE(row.contains("coset"));
        EXPECT_TRUE(row.contains("parafermion"));
    }
    const nlohmann::json lv = cmd_levi_duality(Composition::parse("1,2"), 2, Rational(4)).body;
    EXPECT_TRUE(lv["pass"].get<bool>());
    const nlohmann::json ones = cmd_levi_duality(Composition::parse("1,1"), 2, Rational(4)).body;
    EXPECT_EQ(ones["relative_parafermion_dims"], cmd_duality(2, 2, Rational(4)).body["parafermion_dims"]);
    const nlohmann::json one = cmd_levi_duality(Composition::parse("3"), 2, Rational(3)).body;
    EXPECT_EQ(one["tensor_coset_dims"], nlohmann::json::parse("[1,0,0,0]"));
    EXPECT_EQ(one["relative_parafermion_dims"], nlohmann::json::parse("[1,0,0,0]"));
    EXPECT_THROW(cmd_duality(2, 2, Rational(-1)), UsageError);
}

TEST(Report, MapCheckAndNegativeControl) {
    const nlohmann::json ok = cmd_map_check(2, 2, Rational(4)).body;
    EXPECT_TRUE(ok["pass"].get<bool>());
    EXPECT_TRUE(ok["W0_image_equals_W0_tilde"].get<bool>());
    const nlohmann::json bad = cmd_map_check(2, 2, Rational(4), true).body;
    EXPECT_FALSE(bad["pass"].get<bool>());
    EXPECT_FALSE(bad["homomorphism"]["witnesses"].empty());
}

TEST(Report, SerializationIsStable) {
    EXPECT_EQ(rational_string(Rational(3, 6)), "1/2");
    EXPECT_EQ(rational_string(Rational(-4, 6)), "-2/3");
    const std::string a = cmd_duality(2, 2, Rational(4)).body.dump();
    const std::string b = cmd_duality(2, 2, Rational(4)).body.dump();
    EXPECT_EQ(a, b);
    const std::string csv = to_csv(cmd_lattice_info(2, 2).body);
    EXPECT_EQ(csv.rfind("key,value\n", 0), 0U);
    EXPECT_NE(csv.find("\npass,true\n"), std::string::npos);
    EXPECT_NE(csv.find("\nK.gram[0][0],4\n"), std::string::npos);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run_cli("lattice-info --n 2 --l 2"), 0);
    EXPECT_EQ(run_cli("lattice-info --n 1 --l 2"), 2);
    EXPECT_EQ(run_cli("lattice-info --bogus"), 2);
    EXPECT_EQ(run_cli(""), 2);
    EXPECT_EQ(run_cli("duality --n 2 --l 2 --cutoff 1/0"), 2);
    EXPECT_EQ(run_cli("levi-duality --comp 1,,2 --n 2"), 2);
    EXPECT_EQ(run_cli("duality --n 2 --l 2 --cutoff 6 --max-states 5"), 2);
    EXPECT_EQ(run_cli("map-check --n 2 --l 2 --cutoff 3 --corrupt"), 1);
    EXPECT_EQ(run_cli("map-check --n 2 --l 2 --cutoff 3"), 0);
}

TEST(Cli, ConfigFileAndThreadIndependence) {
    const auto dir = scratch_dir();
    {
        std::ofstream cfg(dir / "run.json");
        cfg << R"({"n": 2, "l": 2, "cutoff": "4", "format": "csv"})";
    }
    const auto out1 = dir / "one.csv";
    const auto out2 = dir / "two.csv";
    EXPECT_EQ(run_cli("duality --config " + (dir / "run.json").string() + " --threads 1 --out " + out1.string()), 0);
    EXPECT_EQ(run_cli("duality --config " + (dir / "run.json").string() + " --threads 2 --out " + out2.string()), 0);
    const std::string a = slurp(out1);
    EXPECT_EQ(a.rfind("key,value\n", 0), 0U);
    EXPECT_EQ(a, slurp(out2));
    // Command-line flags override the config.
    const auto out3 = dir / "three.json";
    EXPECT_EQ(run_cli("duality --config " + (dir / "run.json").string() + " --format json --out " + out3.string()), 0);
    EXPECT_EQ(nlohmann::json::parse(slurp(out3))["parafermion_dims"], nlohmann::json::parse("[1,0,1,1,2]"));
    {
        std::ofstream cfg(dir / "bad.json");
        cfg << R"({"n": "two"})";
    }
    EXPECT_EQ(run_cli("duality --config " + (dir / "bad.json").string()), 2);
    EXPECT_EQ(run_cli("duality --config " + (dir / "missing.json").string()), 2);
    std::filesystem::remove_all(dir);
}
