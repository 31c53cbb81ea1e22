#include "doctest.h"

#include "commands.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using treewave::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> result;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) result.push_back(line);
    return result;
}

// Data rows only: drop the header and trailing "# key=value" metadata.
std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    const auto all = lines(text);
    for (std::size_t j = 1; j < all.size(); ++j) {
        if (all[j].empty() || all[j][0] == '#') continue;
        std::vector<std::string> fields;
        std::string field;
        std::istringstream in(all[j]);
        while (std::getline(in, field, ',')) fields.push_back(field);
        if (!all[j].empty() && all[j].back() == ',') fields.emplace_back();
        rows.push_back(fields);
    }
    return rows;
}

std::string metadata(const std::string& text, const std::string& key) {
    for (const auto& line : lines(text)) {
        const std::string prefix = "# " + key + "=";
        if (line.rfind(prefix, 0) == 0) return line.substr(prefix.size());
    }
    return {};
}

}  // namespace

TEST_CASE("region: single point at d=1, k=2") {
    const Result r = invoke({"region", "--k", "2", "--d-min", "1", "--d-max", "1", "--points", "1"});
    REQUIRE(r.code == 0);
    CHECK(lines(r.out).front() == "d,a_minus,a_plus");
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 1);
    CHECK(std::stod(rows[0][0]) == 1.0);
    CHECK(std::stod(rows[0][1]) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(std::abs(std::stod(rows[0][2]) - 0.8535533906) <= 1e-10);
    CHECK(rows[0][2].rfind("0.853553390593", 0) == 0);
}

TEST_CASE("region: log sweep has its a_plus minimum near d=1") {
    const Result r = invoke({"region", "--k", "2", "--d-min", "0.01", "--d-max", "100", "--points", "500",
                             "--scale", "log"});
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 500);
    std::size_t best = 0;
    for (std::size_t j = 0; j < rows.size(); ++j) {
        if (std::stod(rows[j][2]) < std::stod(rows[best][2])) best = j;
    }
    CHECK(std::stod(rows[best][2]) == doctest::Approx(0.853553).epsilon(1e-5));
    CHECK(std::abs(std::log(std::stod(rows[best][0]))) < 0.02);
    CHECK(std::stod(rows.front()[0]) == 0.01);
    CHECK(std::stod(rows.back()[0]) == 100.0);
}

TEST_CASE("region: usage errors") {
    CHECK(invoke({"region", "--d-min", "0.5", "--d-max", "2", "--points", "1"}).code == 2);
    CHECK(invoke({"region", "--d-min", "2", "--d-max", "1"}).code == 2);
    CHECK(invoke({"region", "--scale", "cubic"}).code == 2);
    CHECK(invoke({"region", "--k", "1"}).code == 2);
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"teleport"}).code == 2);
    CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("profile: CSV and JSON agree and match the closed form") {
    const Result csv = invoke({"profile", "--d", "1", "--k", "2", "--i-min", "-5", "--i-max", "5"});
    REQUIRE(csv.code == 0);
    CHECK(lines(csv.out).front() == "i,u");
    const auto rows = csv_rows(csv.out);
    REQUIRE(rows.size() == 11);
    CHECK(rows[5][0] == "0");
    CHECK(std::abs(std::stod(rows[5][1]) - 0.8535533906) <= 1e-10);

    const Result js = invoke({"profile", "--d", "1", "--k", "2", "--i-min", "-5", "--i-max", "5", "--format", "json"});
    REQUIRE(js.code == 0);
    const auto doc = nlohmann::json::parse(js.out);
    CHECK(doc["schema"] == "treewave.profile/1");
    REQUIRE(doc["profile"].size() == 11);
    for (std::size_t j = 0; j < rows.size(); ++j) {
        CHECK(doc["profile"][j]["i"].get<int>() == std::stoi(rows[j][0]));
        // %.17g round-trips exactly
        CHECK(doc["profile"][j]["u"].get<double>() == std::stod(rows[j][1]));
    }
}

TEST_CASE("profile: usage errors") {
    CHECK(invoke({"profile", "--i-min", "3", "--i-max", "-3"}).code == 2);
    CHECK(invoke({"profile", "--i-min", "1", "--i-max", "4"}).code == 2);
    CHECK(invoke({"profile", "--d", "-1"}).code == 2);
    CHECK(invoke({"profile", "--format", "xml"}).code == 2);
}

TEST_CASE("simulate: step above a_plus travels down") {
    const Result r = invoke({"simulate", "--d", "1", "--k", "2", "--a", "0.9", "--init", "step", "--t-end", "200",
                             "--stride", "100"});
    REQUIRE(r.code == 0);
    CHECK(lines(r.out).front() == "t,i,u");
    CHECK(metadata(r.out, "summary.direction") == "down");
    CHECK(std::stod(metadata(r.out, "summary.c")) > 1e-3);
    CHECK(metadata(r.out, "init") == "step");
    CHECK(metadata(r.out, "N") == "100");
    CHECK_FALSE(metadata(r.out, "h").empty());
    const auto rows = csv_rows(r.out);
    CHECK(rows.size() % 201 == 0);
    CHECK(std::stod(rows.front()[0]) == 0.0);
    CHECK(std::stod(rows.back()[0]) == 200.0);
}

TEST_CASE("simulate: pinned initial data stays pinned") {
    const Result r = invoke({"simulate", "--d", "1", "--k", "2", "--a", "0.7", "--init", "pinned", "--t-end", "50",
                             "--format", "json", "--stride", "1000"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["schema"] == "treewave.simulate/1");
    CHECK(doc["summary"]["direction"] == "pinned");
    CHECK(std::abs(doc["summary"]["c"].get<double>()) <= 1e-6);
    CHECK(doc["summary"]["truncated"] == false);
    CHECK(doc["metadata"]["eps_c"] == 1e-3);
    CHECK(doc["metadata"]["transient"] == 0.5);
    CHECK(doc["snapshots"].back()["u"].size() == 201);
}

TEST_CASE("simulate: step size above the stability bound") {
    const Result r = invoke({"simulate", "--d", "1", "--k", "2", "--a", "0.7", "--h", "0.2", "--t-end", "5"});
    CHECK(r.code == 2);
    CHECK(r.err.find("1/(2(d(k+1)+1))") != std::string::npos);
    CHECK(r.out.empty());
}

TEST_CASE("simulate: seeded noise is reproducible") {
    const std::vector<std::string> args{"simulate", "--d", "1", "--k", "2", "--a", "0.7", "--t-end", "10",
                                        "--N", "20", "--noise", "0.05", "--seed", "7", "--stride", "50"};
    const Result first = invoke(args);
    const Result second = invoke(args);
    REQUIRE(first.code == 0);
    CHECK(first.out == second.out);
    auto other = args;
    other.back() = "51";
    other[other.size() - 3] = "8";
    CHECK(invoke(other).out != first.out);
    CHECK(invoke({"simulate", "--init", "gauss"}).code == 2);
}

TEST_CASE("phase: closed form at a single point") {
    const Result r = invoke({"phase", "--k", "2", "--d-grid", "1", "--a-grid", "0.7", "--mode", "closed_form"});
    REQUIRE(r.code == 0);
    CHECK(lines(r.out).front() == "d,a,direction_closed,direction_empirical,c,mismatch");
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0][2] == "pinned");
    CHECK(rows[0][3].empty());
}

TEST_CASE("phase: strict and nonstrict differ on the lower boundary") {
    const std::vector<std::string> base{"phase", "--k", "2", "--d-grid", "1", "--a-grid", "0.5"};
    auto strict = base;
    strict.push_back("--strict");
    auto loose = base;
    loose.push_back("--nonstrict");
    CHECK(csv_rows(invoke(strict).out)[0][2] == "up");
    CHECK(csv_rows(invoke(loose).out)[0][2] == "pinned");
    auto both = base;
    both.push_back("--strict");
    both.push_back("--nonstrict");
    CHECK(invoke(both).code == 2);
}

TEST_CASE("phase: simulated grid agrees away from the boundaries, rows in grid order") {
    const Result r = invoke({"phase", "--k", "2", "--d-grid", "0.5,2", "--a-grid", "0.3,0.7,0.97", "--mode", "both",
                             "--t-end", "200", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["mismatches"] == 0);
    REQUIRE(doc["rows"].size() == 6);
    const std::vector<std::pair<double, double>> order{{0.5, 0.3}, {0.5, 0.7}, {0.5, 0.97},
                                                       {2.0, 0.3}, {2.0, 0.7}, {2.0, 0.97}};
    for (std::size_t j = 0; j < order.size(); ++j) {
        CHECK(doc["rows"][j]["d"] == order[j].first);
        CHECK(doc["rows"][j]["a"] == order[j].second);
        CHECK(doc["rows"][j]["mismatch"] == false);
    }
}

TEST_CASE("phase: usage errors") {
    CHECK(invoke({"phase", "--k", "2"}).code == 2);
    CHECK(invoke({"phase", "--d-grid", "1", "--a-grid", "1.5"}).code == 2);
    CHECK(invoke({"phase", "--d-grid", "1", "--a-grid", "0.5", "--mode", "guess"}).code == 2);
}

TEST_CASE("reversal: thresholds for k=2") {
    const Result r = invoke({"reversal", "--k", "2", "--a", "0.9"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["schema"] == "treewave.reversal/1");
    const double lo = doc["d_lo_plus"], hi = doc["d_hi_plus"], minus = doc["d_lo_minus"];
    CHECK(0.0 < lo);
    CHECK(lo < hi);
    CHECK(hi < minus);
    for (const char* key : {"d_lo_plus", "d_hi_plus", "d_lo_minus"}) {
        CHECK(std::abs(doc["residuals"][key].get<double>()) <= 1e-9);
    }

    const auto high = nlohmann::json::parse(invoke({"reversal", "--k", "2", "--a", "0.99"}).out);
    CHECK(high["d_lo_minus"].get<double>() > high["d_hi_plus"].get<double>());

    const Result below = invoke({"reversal", "--k", "2", "--a", "0.8"});
    CHECK(below.code == 2);
    CHECK(below.err.find("a_+^*") != std::string::npos);
}

TEST_CASE("stability: decay report") {
    const Result r = invoke({"stability", "--d", "1", "--k", "2", "--a", "0.7", "--amplitude", "0.01"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["schema"] == "treewave.stability/1");
    CHECK(doc["fitted_exponent"].get<double>() <= -1.0);
    CHECK(doc["theoretical_rate"].get<double>() == doctest::Approx(-1.1715728753));
    CHECK(doc["final_sup_norm"].get<double>() <= 1e-4);
    CHECK(doc["times"].size() == doc["sup_norms"].size());

    const Result zero = invoke({"stability", "--d", "1", "--k", "2", "--a", "0.7", "--amplitude", "0"});
    REQUIRE(zero.code == 0);
    const auto flat = nlohmann::json::parse(zero.out);
    for (const auto& s : flat["sup_norms"]) CHECK(s.get<double>() <= 1e-10);
    CHECK(flat["fitted_exponent"].is_null());

    const Result outside = invoke({"stability", "--d", "1", "--k", "2", "--a", "0.95"});
    CHECK(outside.code == 2);
    CHECK(outside.err.find("not-pinned") != std::string::npos);
}

TEST_CASE("outputs are deterministic and --out writes a file") {
    const std::vector<std::string> args{"region", "--k", "3", "--points", "20"};
    CHECK(invoke(args).out == invoke(args).out);

    const std::string path = "treewave_cli_test_out.csv";
    auto to_file = args;
    to_file.push_back("--out");
    to_file.push_back(path);
    const Result r = invoke(to_file);
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream content;
    content << in.rdbuf();
    CHECK(content.str() == invoke(args).out);
    std::remove(path.c_str());
}
