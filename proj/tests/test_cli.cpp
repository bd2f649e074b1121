#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bulsol/cli.hpp"
#include "bulsol/io.hpp"

using namespace bulsol;
namespace fs = std::filesystem;

TEST_SUITE_BEGIN("cli");

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path temp_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("bulsol_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream file(path, std::ios::binary);
    REQUIRE(file);
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

} // namespace

TEST_CASE("simulate with zero moves echoes the initial state") {
    const auto dir = temp_dir("echo");
    const auto result = cli({"simulate", "--n", "4", "--p", "0.5", "--q", "1/2",
                             "--moves", "0", "--csv", (dir / "b.csv").string(),
                             "--json", (dir / "s.json").string()});
    CHECK(result.code == 0);
    CHECK(result.out.find("3+1") != std::string::npos); // triangular_start(4)
    CHECK(fs::exists(dir / "b.csv"));
    CHECK(fs::exists(dir / "s.json"));
}

TEST_CASE("malformed proportion is a usage error") {
    const auto result = cli({"simulate", "--n", "4", "--p", "0.5", "--q", "0/1",
                             "--moves", "0"});
    CHECK(result.code == 2);
    CHECK(result.err.find("q must be in (0,1]") != std::string::npos);
}

TEST_CASE("unknown flags and missing requireds are usage errors") {
    CHECK(cli({"simulate", "--n", "4"}).code == 2);
    CHECK(cli({"nonsense"}).code == 2);
    CHECK(cli({}).code == 2);
}

TEST_CASE("start configurations parse and validate") {
    const auto dir = temp_dir("start");
    const auto paths = [&](const char* tag) {
        return std::vector<std::string>{"--csv", (dir / (std::string(tag) + ".csv")).string(),
                                        "--json", (dir / (std::string(tag) + ".json")).string()};
    };
    auto with = [&](std::vector<std::string> args, const char* tag) {
        const auto extra = paths(tag);
        args.insert(args.end(), extra.begin(), extra.end());
        return args;
    };
    // explicit comma list, zeros allowed (interior bowl)
    const auto listed = cli(with({"simulate", "--n", "6", "--p", "0.5", "--q", "1/2",
                                  "--moves", "0", "--start", "3,0,2,1"},
                                 "list"));
    CHECK(listed.code == 0);
    CHECK(listed.out.find("3+0+2+1") != std::string::npos);
    // one pile holding everything
    CHECK(cli(with({"simulate", "--n", "6", "--p", "0.5", "--q", "1/2", "--moves", "0",
                    "--start", "single"},
                   "single"))
              .code == 0);
    // wrong total is a usage error
    const auto wrong = cli(with({"simulate", "--n", "6", "--p", "0.5", "--q", "1/2",
                                 "--moves", "0", "--start", "2,2"},
                                "wrong"));
    CHECK(wrong.code == 2);
    CHECK(wrong.err.find("sums to 4") != std::string::npos);
    // malformed interval
    CHECK(cli(with({"simulate", "--n", "6", "--p", "0.5", "--q", "1/2", "--moves", "0",
                    "--interval", "3:1"},
                   "interval"))
              .code == 2);
}

TEST_CASE("boundary csv round-trips and matches the schema") {
    const auto dir = temp_dir("csv");
    const auto csv_path = (dir / "boundary.csv").string();
    const auto result = cli({"simulate", "--n", "1000", "--p", "0.05", "--q", "1/1",
                             "--moves", "80", "--seed", "3", "--grid", "0:3:0.5",
                             "--csv", csv_path, "--json", (dir / "s.json").string()});
    REQUIRE(result.code == 0);
    std::ifstream file(csv_path);
    std::string line;
    std::getline(file, line);
    CHECK(line == "# bulsol boundary csv v1");
    std::getline(file, line);
    CHECK(line == "x,rescaled_y,shape_y,abs_dev");
    int rows = 0;
    while (std::getline(file, line)) {
        double x = 0, y = 0, s = 0, d = 0;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &x, &y, &s, &d) == 4);
        CHECK(std::abs(std::abs(y - s) - d) <= 1e-15);
        ++rows;
    }
    CHECK(rows == 7);

    // JSON parses and re-serializes to the same document
    const auto text = slurp(dir / "s.json");
    const auto doc = nlohmann::json::parse(text);
    CHECK(doc.at("schema_version") == 1);
    CHECK(doc.at("params").at("q") == "1/1");
    CHECK(doc.at("deviation").contains("sup"));
    CHECK(nlohmann::json::parse(doc.dump(2)) == doc);
}

TEST_CASE("simulate is byte-identical across reruns with one seed") {
    const auto dir_a = temp_dir("det_a");
    const auto dir_b = temp_dir("det_b");
    const std::vector<std::string> base{"simulate", "--n",     "2000", "--p",
                                        "0.02",     "--q",     "1/1",  "--moves",
                                        "120",      "--seeds", "4",    "--seed",
                                        "9"};
    auto with_dir = [&](const fs::path& dir) {
        auto args = base;
        args.insert(args.end(), {"--csv", (dir / "b.csv").string(), "--json",
                                 (dir / "s.json").string(), "--svg",
                                 (dir / "p.svg").string(), "--traces",
                                 (dir / "t.csv").string()});
        return args;
    };
    const auto first = cli(with_dir(dir_a));
    const auto second = cli(with_dir(dir_b));
    REQUIRE(first.code == 0);
    REQUIRE(second.code == 0);
    CHECK(first.out == second.out);
    CHECK(slurp(dir_a / "b.csv") == slurp(dir_b / "b.csv"));
    CHECK(slurp(dir_a / "t.csv") == slurp(dir_b / "t.csv"));
    CHECK(slurp(dir_a / "p.svg") == slurp(dir_b / "p.svg"));
    // JSON equal up to the traces_path they embed
    auto doc_a = nlohmann::json::parse(slurp(dir_a / "s.json"));
    auto doc_b = nlohmann::json::parse(slurp(dir_b / "s.json"));
    doc_a["traces_path"] = doc_b["traces_path"] = "";
    CHECK(doc_a == doc_b);
}

TEST_CASE("svg output is self-contained") {
    const auto dir = temp_dir("svg");
    const auto svg_path = (dir / "plot.svg").string();
    REQUIRE(cli({"simulate", "--n", "500", "--p", "0.05", "--q", "1/1", "--moves",
                 "50", "--svg", svg_path, "--csv", (dir / "b.csv").string(),
                 "--json", (dir / "s.json").string()})
                .code == 0);
    const auto svg = slurp(svg_path);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("polyline") != std::string::npos);
    CHECK(svg.find("href") == std::string::npos);     // no external references
    CHECK(svg.find("http://") == svg.find("http://www.w3.org")); // namespace only
}

TEST_CASE("exact command emits the two-state stationary law") {
    const auto dir = temp_dir("exact");
    const auto pi_path = (dir / "pi.csv").string();
    const auto result =
        cli({"exact", "--n", "2", "--p", "0.5", "--q", "1/2", "--pi-csv", pi_path,
             "--mass-csv", (dir / "mass.csv").string()});
    REQUIRE(result.code == 0);
    const auto pi_csv = slurp(pi_path);
    CHECK(pi_csv.find("# bulsol stationary csv v1") == 0);
    CHECK(pi_csv.find("2,0.3333333333333333") != std::string::npos);
    CHECK(pi_csv.find("1+1,0.666666666666666") != std::string::npos);
    CHECK(fs::exists(dir / "mass.csv"));

    // single state: probability 1
    const auto single = temp_dir("exact1");
    const auto one = cli({"exact", "--n", "1", "--p", "0.5", "--q", "1/1", "--pi-csv",
                          (single / "pi.csv").string(), "--mass-csv",
                          (single / "mass.csv").string()});
    REQUIRE(one.code == 0);
    CHECK(slurp(single / "pi.csv").find("1,1") != std::string::npos);
}

TEST_CASE("exact rejects p = 1 and over-cap n with distinct codes") {
    const auto dir = temp_dir("exact_err");
    CHECK(cli({"exact", "--n", "2", "--p", "1.0", "--q", "1/2", "--pi-csv",
               (dir / "pi.csv").string()})
              .code == 2);
    CHECK(cli({"exact", "--n", "30", "--p", "0.5", "--q", "1/2", "--pi-csv",
               (dir / "pi.csv").string()})
              .code == 3);
}

TEST_CASE("exact cross-checks Monte Carlo when asked") {
    const auto dir = temp_dir("exact_mc");
    const auto result = cli({"exact", "--n", "6", "--p", "0.3", "--q", "1/2",
                             "--compare-mc", "--mc-samples", "200000", "--seed", "5",
                             "--pi-csv", (dir / "pi.csv").string(), "--mass-csv",
                             (dir / "mass.csv").string()});
    REQUIRE(result.code == 0);
    const auto pos = result.out.find("tv_distance=");
    REQUIRE(pos != std::string::npos);
    const double tv = std::stod(result.out.substr(pos + 12));
    CHECK(tv < 0.02);
}

TEST_CASE("oracle domination exhaustive grid is clean") {
    const auto dir = temp_dir("domination");
    const auto result = cli({"oracle", "domination", "--exhaustive", "--max-a1", "5",
                             "--max-r", "3", "--csv", (dir / "report.csv").string()});
    CHECK(result.code == 0);
    CHECK(result.out.find("violations=0") != std::string::npos);
    const auto csv = slurp(dir / "report.csv");
    CHECK(csv.find("# bulsol domination csv v1") == 0);
    CHECK(csv.find("a1,r,s,q,runs,") != std::string::npos);
}

TEST_CASE("oracle chernoff table is sound") {
    const auto dir = temp_dir("chernoff");
    const auto csv_path = (dir / "table.csv").string();
    const auto result =
        cli({"oracle", "chernoff", "--m", "100", "--p", "0.5", "--csv", csv_path});
    CHECK(result.code == 0);
    const auto csv = slurp(csv_path);
    CHECK(csv.find("# bulsol chernoff csv v1") == 0);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    std::getline(lines, line);
    while (std::getline(lines, line)) {
        double gamma = 0, bound = 0, tail = 0;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &gamma, &bound, &tail) == 3);
        CHECK(tail <= bound);
    }
}

TEST_CASE("oracle union reports the decay band") {
    const auto dir = temp_dir("union");
    const auto result = cli({"oracle", "union", "--a1", "1000", "--p", "0.01", "--q",
                             "1/1", "--seeds", "50", "--csv",
                             (dir / "decay.csv").string()});
    CHECK(result.code == 0);
    CHECK(result.out.find("r=24") != std::string::npos); // derived chunk length
    const auto csv = slurp(dir / "decay.csv");
    CHECK(csv.find("# bulsol union-decay csv v1") == 0);
}

TEST_CASE("regimes command") {
    const auto dir = temp_dir("regimes");
    const auto spec_path = dir / "points.json";
    {
        std::ofstream spec(spec_path);
        spec << R"([{"n": 5000, "p": 0.1, "q": "1/1"}, {"n": 60, "p": 0.5, "q": "1/60"}])";
    }
    const auto result = cli({"regimes", "--spec", spec_path.string(), "--seeds", "2",
                             "--csv", (dir / "table.csv").string()});
    REQUIRE(result.code == 0);
    CHECK(result.out.find("exponential") != std::string::npos);
    const auto csv = slurp(dir / "table.csv");
    CHECK(csv.find("# bulsol regimes csv v1") == 0);

    // empty spec: empty table, still success
    const auto empty_path = dir / "empty.json";
    {
        std::ofstream spec(empty_path);
        spec << "[]";
    }
    CHECK(cli({"regimes", "--spec", empty_path.string(), "--csv",
               (dir / "empty.csv").string()})
              .code == 0);

    // unreadable and malformed specs are usage errors
    CHECK(cli({"regimes", "--spec", (dir / "missing.json").string()}).code == 2);
    const auto bad_path = dir / "bad.json";
    {
        std::ofstream spec(bad_path);
        spec << "{not json";
    }
    CHECK(cli({"regimes", "--spec", bad_path.string()}).code == 2);
}

TEST_SUITE_END();
