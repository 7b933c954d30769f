#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string bin = KRATZER_BIN;
const std::string h2 = std::string(KRATZER_DATA_DIR) + "/h2.molecule";

struct Run {
    int code;
    std::string out;
};

fs::path scratch() {
    static const fs::path dir = [] {
        const fs::path d = fs::temp_directory_path() / "kratzer_cli_test";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Run run(const std::string& args) {
    const fs::path out = scratch() / "stdout.txt";
    const std::string cmd = "'" + bin + "' " + args + " > '" + out.string() + "' 2> '" + (scratch() / "stderr.txt").string() + "'";
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out)};
}

void write(const fs::path& p, const std::string& text) {
    std::ofstream f(p);
    f << text;
}

}  // namespace

TEST_CASE("spectrum") {
    const Run t = run("spectrum '" + h2 + "'");
    CHECK(t.code == 0);
    CHECK(t.out.find("H2") != std::string::npos);

    const Run j = run("spectrum '" + h2 + "' --format json --min-length 0.0102 --units eV --nmax 1 --lmax 1");
    REQUIRE(j.code == 0);
    const json rep = json::parse(j.out);
    CHECK(rep["schema"] == "kratzer-report/1");
    CHECK(rep["command"] == "spectrum");
    CHECK(rep["levels"].size() == 4);
    CHECK(rep["levels"][0]["E"]["unit"] == "eV");
    CHECK(run("spectrum '" + h2 + "' --format json --min-length 0.0102 --units eV --nmax 1 --lmax 1").out == j.out);
}

TEST_CASE("bound") {
    const Run j = run("bound '" + h2 + "' --format json");
    REQUIRE(j.code == 0);
    const json rep = json::parse(j.out);
    CHECK(rep["min_length_max"]["value"].get<double>() == doctest::Approx(0.010660641).epsilon(1e-7));

    write(scratch() / "nogap.molecule", "[X]\nDe_cm1=78844.9005\nre_angstrom=0.73652\nmu_amu=0.5039\nzpe_exp_cm1=2000\n");
    CHECK(run("bound '" + (scratch() / "nogap.molecule").string() + "'").code == 1);
    write(scratch() / "nozpe.molecule", "[X]\nDe_cm1=78844.9005\nre_angstrom=0.73652\nmu_amu=0.5039\n");
    CHECK(run("bound '" + (scratch() / "nozpe.molecule").string() + "'").code == 2);
}

TEST_CASE("fit via levels file and --out") {
    const std::string lv = (scratch() / "levels.csv").string();
    REQUIRE(run("spectrum '" + h2 + "' --beta 5e42 --nmax 3 --lmax 2 --levels-out '" + lv + "'").code == 0);
    const std::string rep_path = (scratch() / "fit.json").string();
    const Run f = run("fit '" + lv + "' --mu 0.5039 --init 80000,0.74,3e42 --out '" + rep_path + "'");
    CHECK(f.code == 0);
    const json rep = json::parse(slurp(rep_path));
    CHECK(rep["result"]["beta"]["value"].get<double>() == doctest::Approx(5e42).epsilon(1e-6));
}

TEST_CASE("verify") {
    const Run ok = run("verify --format json");
    CHECK(ok.code == 0);
    CHECK(json::parse(ok.out)["passed"] == true);
    CHECK(run("verify --tol 1e-15").code == 1);
}

TEST_CASE("usage and parse errors exit with 2") {
    CHECK(run("").code == 2);
    CHECK(run("nonsense").code == 2);
    CHECK(run("spectrum").code == 2);
    CHECK(run("spectrum '" + h2 + "' --beta 1e43 --min-length 0.01").code == 2);
    CHECK(run("spectrum '" + h2 + "' --units furlong").code == 2);
    CHECK(run("spectrum /nonexistent.molecule").code == 2);
    write(scratch() / "bad.molecule", "[X]\nDe_cm1=1\nbogus=3\n");
    CHECK(run("spectrum '" + (scratch() / "bad.molecule").string() + "'").code == 2);
    CHECK(run("fit /nonexistent.csv --mu 1 --init 1,1,0").code == 2);
    CHECK(run("verify --grid-preset huge").code == 2);
}
