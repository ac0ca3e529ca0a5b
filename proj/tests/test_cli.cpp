#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct ProcessResult {
    int exit_code;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Runs the installed CLI with shell redirection; quoting is the caller's job.
ProcessResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path out_file =
        fs::temp_directory_path() / ("swarmmatch_cli_out_" + std::to_string(::getpid()) + "_" +
                                     std::to_string(counter));
    const fs::path err_file =
        fs::temp_directory_path() / ("swarmmatch_cli_err_" + std::to_string(::getpid()) + "_" +
                                     std::to_string(counter));
    ++counter;

    const std::string command = std::string(SWARMMATCH_CLI_PATH) + " " + args + " >" +
                                out_file.string() + " 2>" + err_file.string();
    const int status = std::system(command.c_str());
    ProcessResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out_file);
    result.err = slurp(err_file);
    fs::remove(out_file);
    fs::remove(err_file);
    return result;
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() /
               ("swarmmatch_clitest_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

const std::string kQuickRun =
    "run --trials 2 --seed 7 --particles 25 --max-iters 120 --sweep 1e9,9e9,11";

} // namespace

TEST_CASE("run subcommand writes artifacts and exits 0") {
    TempDir dir("run");
    const auto result = run_cli(kQuickRun + " --out " + dir.path.string());
    CHECK(result.exit_code == 0);
    CHECK(result.err.empty());
    CHECK(fs::exists(dir.path / "summary.csv"));
    CHECK(fs::exists(dir.path / "trace_1.csv"));
    CHECK(fs::exists(dir.path / "trace_2.csv"));
    CHECK(fs::exists(dir.path / "sweep_1.csv"));
    CHECK(fs::exists(dir.path / "sweep_2.csv"));

    const auto summary = slurp(dir.path / "summary.csv");
    CHECK(summary.starts_with(
        "trial,seed,fitness,z1,z2,z3,ordering_ok,gamma_db_at_f0,iterations,termination\n"));
}

TEST_CASE("default-parameter trials converge with ordered impedances") {
    TempDir dir("defaults");
    const auto result = run_cli("run --trials 3 --seed 2000 --max-iters 1000 --out " +
                                dir.path.string());
    REQUIRE(result.exit_code == 0);

    std::istringstream summary(slurp(dir.path / "summary.csv"));
    std::string line;
    std::getline(summary, line); // header
    int rows = 0;
    while (std::getline(summary, line)) {
        ++rows;
        // trial,seed,fitness,z1,z2,z3,ordering_ok,...
        std::stringstream fields(line);
        std::string field;
        std::getline(fields, field, ','); // trial
        std::getline(fields, field, ','); // seed
        std::getline(fields, field, ',');
        CHECK(std::stod(field) <= 1e-2);
        double z[3];
        for (double& zi : z) {
            std::getline(fields, field, ',');
            zi = std::stod(field);
        }
        CHECK(z[0] > z[1]);
        CHECK(z[1] > z[2]);
        std::getline(fields, field, ',');
        CHECK(field == "true");
    }
    CHECK(rows == 3);
}

TEST_CASE("identical invocations produce byte-identical CSVs") {
    TempDir dir_a("rerun_a");
    TempDir dir_b("rerun_b");
    REQUIRE(run_cli(kQuickRun + " --out " + dir_a.path.string()).exit_code == 0);
    REQUIRE(run_cli(kQuickRun + " --out " + dir_b.path.string()).exit_code == 0);
    for (const char* name :
         {"summary.csv", "trace_1.csv", "trace_2.csv", "sweep_1.csv", "sweep_2.csv"}) {
        CHECK(slurp(dir_a.path / name) == slurp(dir_b.path / name));
    }
}

TEST_CASE("config file values are used and flags take precedence") {
    TempDir dir("config");
    fs::create_directories(dir.path);
    const fs::path config_path = dir.path / "run.cfg";
    {
        std::ofstream cfg(config_path);
        cfg << "trials=1\n"
            << "seed=7\n"
            << "particles=25\n"
            << "max-iters=120\n"
            << "sweep=\"1e9,9e9,11\"\n"
            << "out=" << (dir.path / "from_config").string() << "\n";
    }
    const auto result = run_cli("run --config " + config_path.string());
    CHECK(result.exit_code == 0);
    CHECK(fs::exists(dir.path / "from_config" / "summary.csv"));
    CHECK_FALSE(fs::exists(dir.path / "from_config" / "trace_2.csv"));

    // A flag overrides the config value for the same key.
    const auto flagged =
        run_cli("run --config " + config_path.string() + " --trials 2 --out " +
                (dir.path / "flagged").string());
    CHECK(flagged.exit_code == 0);
    CHECK(fs::exists(dir.path / "flagged" / "trace_2.csv"));
}

TEST_CASE("configuration errors exit 1 with a single-line error") {
    const auto unknown = run_cli("run --definitely-not-a-flag 3");
    CHECK(unknown.exit_code == 1);
    CHECK(unknown.err.starts_with("error: config: "));
    CHECK(std::count(unknown.err.begin(), unknown.err.end(), '\n') == 1);

    const auto bad_bounds = run_cli("run --bounds 120,10 --trials 1 --max-iters 0");
    CHECK(bad_bounds.exit_code == 1);
    CHECK(bad_bounds.err.starts_with("error: config: "));

    const auto no_sub = run_cli("");
    CHECK(no_sub.exit_code == 1);

    const auto too_few = run_cli("verify 50 40");
    CHECK(too_few.exit_code == 1);
    CHECK(too_few.err.starts_with("error: config: "));
}

TEST_CASE("unwritable output directory exits 2") {
    const auto result =
        run_cli("run --trials 1 --max-iters 0 --out /proc/swarmmatch_forbidden");
    CHECK(result.exit_code == 2);
    CHECK(result.err.starts_with("error: io: "));
}

TEST_CASE("verify prints the sweep and the f0 figure") {
    const auto result = run_cli("verify 86.427 55.545 45.444");
    REQUIRE(result.exit_code == 0);
    CHECK(result.out.starts_with("frequency_hz,gamma_re,gamma_im,gamma_db\n"));

    const auto marker = result.out.rfind("# gamma_db_at_f0 = ");
    REQUIRE(marker != std::string::npos);
    const double db = std::stod(result.out.substr(marker + 19));
    CHECK(db <= -40.0);
}

TEST_CASE("verify of a second reference design also passes") {
    const auto result = run_cli("verify 76.604 65.646 60.595");
    REQUIRE(result.exit_code == 0);
    const auto marker = result.out.rfind("# gamma_db_at_f0 = ");
    REQUIRE(marker != std::string::npos);
    CHECK(std::stod(result.out.substr(marker + 19)) <= -40.0);
}

TEST_CASE("verify of the exact single-transformer design reports the floor") {
    const auto result = run_cli("verify 100 100 70.7107 --sweep 4e9,6e9,3");
    REQUIRE(result.exit_code == 0);
    const auto marker = result.out.rfind("# gamma_db_at_f0 = ");
    REQUIRE(marker != std::string::npos);
    CHECK(std::stod(result.out.substr(marker + 19)) == -120.0);
}

TEST_CASE("verify --out writes the CSV to a file instead of stdout") {
    TempDir dir("verify_out");
    const auto result =
        run_cli("verify 86.427 55.545 45.444 --out " + dir.path.string());
    REQUIRE(result.exit_code == 0);
    CHECK(result.out.starts_with("# gamma_db_at_f0 = "));
    const auto csv = slurp(dir.path / "sweep_verify.csv");
    CHECK(csv.starts_with("frequency_hz,gamma_re,gamma_im,gamma_db\n"));
}

TEST_CASE("help exits 0") {
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("run --help").exit_code == 0);
}
