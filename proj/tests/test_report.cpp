#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "impactsim/report.hpp"

using namespace impactsim;

namespace {

SweepCell cell(double sigma_c2, Indicator ind, double mean) {
    SweepCell c;
    c.sigma_r2 = 0.4;
    c.sigma_c2 = sigma_c2;
    c.sigma_v2 = 1.3 - sigma_c2;
    c.m = 20;
    c.n = 2000;
    c.alpha = 0.1;
    c.indicator = ind;
    c.runs = 3;
    c.accuracy_mean = mean;
    c.accuracy_stderr = 0.5;
    c.master_seed = 42;
    return c;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

}  // namespace

TEST_CASE("fixed formatting") {
    CHECK(format_fixed6(100.0) == "100.000000");
    CHECK(format_fixed6(-0.0) == "0.000000");
    CHECK(format_fixed6(0.05) == "0.050000");
    CHECK(format_fixed6(12345678.5) == "12345678.500000");
}

TEST_CASE("sweep CSV header and row order") {
    const std::vector<SweepCell> cells{cell(0.9, Indicator::impact_factor(), 40.0),
                                       cell(0.2, Indicator::citations(), 100.0),
                                       cell(0.2, Indicator::impact_factor(), 55.25)};
    std::ostringstream out;
    emit_sweep_csv(cells, out);
    const auto lines = lines_of(out.str());
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] ==
          "schema_version,sigma_r2,sigma_c2,sigma_v2,m,n,alpha,indicator,weight_if,runs,"
          "accuracy_mean,accuracy_stderr,master_seed");
    CHECK(lines[1] == "1,0.400000,0.200000,1.100000,20,2000,0.100000,citations,0.000000,3,100.000000,0.500000,42");
    CHECK(lines[2] == "1,0.400000,0.200000,1.100000,20,2000,0.100000,if,1.000000,3,55.250000,0.500000,42");
    CHECK(lines[3].starts_with("1,0.400000,0.900000,"));
    CHECK(out.str().find('\r') == std::string::npos);

    std::ostringstream again;
    emit_sweep_csv(cells, again);
    CHECK(again.str() == out.str());

    std::ostringstream none;
    CHECK_THROWS_AS(emit_sweep_csv({}, none), std::invalid_argument);
}

TEST_CASE("simulation CSV") {
    SimulationOutcome o;
    o.articles = {{0, 1.5, 0.25, 2}, {1, 0.1, 3.0, 1}};
    o.impact_factors = {3.0, 0.25};
    std::ostringstream out;
    emit_simulation_csv(o, out);
    CHECK(out.str() == "article_id,journal,value,citations\n0,2,1.5,0.25\n1,1,0.10000000000000001,3\n");
}

TEST_CASE("scenario reports") {
    std::ostringstream one;
    emit_scenario_report(evaluate_scenario(scenario::scenario_one()), one);
    const std::string r1 = one.str();
    CHECK(r1.find("Journal A") != std::string::npos);
    CHECK(r1.find("Low value               18             2            20") != std::string::npos);
    CHECK(r1.find("High value               8            72            80") != std::string::npos);
    CHECK(r1.ends_with("IF selection: 80.0%  citation selection: 90.0%\n"));

    std::ostringstream two;
    emit_scenario_report(evaluate_scenario(scenario::scenario_two()), two);
    const std::string r2 = two.str();
    CHECK(r2.find("Low value               14             6            20") != std::string::npos);
    CHECK(r2.find("High value              24            56            80") != std::string::npos);
    CHECK(r2.ends_with("IF selection: 80.0%  citation selection: 70.0%\n"));

    scenario::DiscreteScenario odd{scenario::Rational(2, 3), scenario::Rational(1, 10), {{"A", 10, 5}}};
    std::ostringstream three;
    emit_scenario_report(evaluate_scenario(odd), three);
    CHECK(three.str().find("6.666667") != std::string::npos);
}

TEST_CASE("atomic writes") {
    const auto dir = std::filesystem::temp_directory_path() / "impactsim_report_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    write_file_atomically(dir / "a.txt", "hello\n");
    std::ifstream in(dir / "a.txt");
    std::string text((std::istreambuf_iterator<char>(in)), {});
    CHECK(text == "hello\n");
    CHECK_FALSE(std::filesystem::exists(dir / "a.txt.tmp"));
    CHECK_THROWS_AS(write_file_atomically(dir / "missing" / "b.txt", "x"), IoError);
    CHECK_FALSE(std::filesystem::exists(dir / "missing"));
    std::filesystem::remove_all(dir);
}
