#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "qcawalk_cli.hpp"

using namespace qcawalk;
using namespace qcawalk::cli;
using Catch::Matchers::WithinAbs;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> rows;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);) rows.push_back(line);
    return rows;
}

void collect_numbers(const Json& j, std::vector<double>& out) {
    if (j.is_number()) out.push_back(j.get<double>());
    else if (j.is_structured())
        for (const auto& v : j) collect_numbers(v, out);
}

} // namespace

TEST_CASE("parse_real", "[cli]") {
    constexpr double pi = std::numbers::pi;
    CHECK(parse_real("0.5") == 0.5);
    CHECK(parse_real("-1") == -1.0);
    CHECK(parse_real("1e-3") == 1e-3);
    CHECK(parse_real("pi") == pi);
    CHECK(parse_real("pi/4") == pi / 4);
    CHECK(parse_real("3pi/2") == 3 * pi / 2);
    CHECK(parse_real("2*pi/3") == 2 * pi / 3);
    CHECK(parse_real("-pi/4") == -pi / 4);
    CHECK(parse_real("1/sqrt2") == 1 / std::sqrt(2.0));
    CHECK(parse_real("sqrt(3)/2") == std::sqrt(3.0) / 2);
    for (const char* bad : {"", "pix", "1/", "abc", "nan", "inf", "1/0", "sqrt(2"}) {
        INFO(bad);
        CHECK_THROWS_AS(parse_real(bad), UsageError);
    }
}

TEST_CASE("format_number", "[cli]") {
    CHECK(format_number(0.25) == "0.25");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(1.0 / 3.0) == "0.3333333333333333");
    CHECK(parse_real(format_number(0.1 + 0.2)) == 0.1 + 0.2);
}

TEST_CASE("golden: classify the Patel point", "[cli]") {
    const auto r = invoke({"classify", "--theta", "pi/4", "--phi", "pi/4", "--delta", "pi/2"});
    CHECK(r.code == 0);
    CHECK(r.err.empty());
    const auto rows = lines(r.out);
    REQUIRE(rows.size() >= 2);
    CHECK(rows[0] == "key,value");
    CHECK(rows[1] == "type,TypeV");

    const auto j = Json::parse(invoke({"classify", "--theta", "pi/4", "--phi", "pi/4", "--delta", "pi/2", "--format",
                                       "json"})
                                   .out);
    CHECK(j["result"]["type"] == "TypeV");
    for (const auto& [k, v] : j["residuals"].items()) CHECK(v.get<double>() <= 1e-12);
    const Complex expected[4] = {{0, 0.5}, {0.5, 0}, {0, 0.5}, {-0.5, 0}};
    for (int i = 0; i < 4; ++i) {
        const Complex z(j["result"]["abcd"][i][0].get<double>(), j["result"]["abcd"][i][1].get<double>());
        CHECK(std::abs(z - expected[i]) <= 1e-15);
    }
    CHECK(j["duration_ms"].is_null());
}

TEST_CASE("golden: one QCA step from the minus branch", "[cli]") {
    const auto r = invoke({"simulate-qca", "--theta", "pi/4", "--phi", "pi/4", "--delta", "pi/2", "--steps", "1",
                           "--qubit", "1", "0", "--sign", "-"});
    CHECK(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0] == "site,probability");
    const Site sites[4] = {-2, -1, 0, 1};
    for (int i = 0; i < 4; ++i) {
        const auto comma = rows[i + 1].find(',');
        CHECK(std::stoll(rows[i + 1].substr(0, comma)) == sites[i]);
        CHECK_THAT(std::stod(rows[i + 1].substr(comma + 1)), WithinAbs(0.25, 1e-15));
    }
}

TEST_CASE("golden: verify the even/odd factorisation", "[cli]") {
    const auto r = invoke({"verify", "--kind", "patel", "--phi1", "pi/4", "--phi2", "pi/4", "--format", "json"});
    CHECK(r.code == 0);
    const auto j = Json::parse(r.out);
    CHECK(j["result"]["report"]["holds"] == true);
    CHECK(j["residuals"]["max_amplitude_error"].get<double>() <= 1e-12);
    CHECK(j["residuals"]["max_probability_error"].get<double>() <= 1e-12);
}

TEST_CASE("every verify kind exits 0 on valid input", "[cli]") {
    CHECK(invoke({"verify", "--kind", "A", "--steps", "20"}).code == 0);
    CHECK(invoke({"verify", "--kind", "B", "--steps", "20", "--qubit", "0.6", "0", "0", "0.8"}).code == 0);
    CHECK(invoke({"verify", "--kind", "two-step", "--family", "B", "--theta1", "0.3", "--theta2", "5pi/4"}).code == 0);
    CHECK(invoke({"verify", "--kind", "reduction", "--theta", "pi/2", "--phi", "0.9", "--delta", "0.4"}).code == 0);
    CHECK(invoke({"factorize", "--kind", "two-step", "--theta1", "1"}).code == 0);
    CHECK(invoke({"factorize", "--kind", "patel", "--phi1", "0.2", "--phi2", "1.3"}).code == 0);
    CHECK(invoke({"simulate-qw", "--walk", "plain", "--steps", "10"}).code == 0);
    CHECK(invoke({"simulate-qw", "--family", "B", "--steps", "10"}).code == 0);
    CHECK(invoke({"simulate-qca", "--m", "-3", "--steps", "4"}).code == 0);
    CHECK(invoke({"classify", "--sweep", "6"}).code == 0);
}

TEST_CASE("factorize at the Patel point prints the expected coin", "[cli]") {
    const auto j = Json::parse(invoke({"factorize", "--kind", "two-step", "--format", "json"}).out);
    const double s = 1.0 / std::sqrt(2.0);
    for (const char* key : {"U1", "U2"}) {
        const auto& u = j["result"][key];
        CHECK_THAT(u[0][0][1].get<double>(), WithinAbs(s, 1e-15));
        CHECK_THAT(u[0][1][0].get<double>(), WithinAbs(s, 1e-15));
        CHECK_THAT(u[1][0][0].get<double>(), WithinAbs(s, 1e-15));
        CHECK_THAT(u[1][1][1].get<double>(), WithinAbs(s, 1e-15));
    }
}

TEST_CASE("limit-compare", "[cli]") {
    const auto pass = invoke({"limit-compare", "--steps", "200", "--format", "json"});
    CHECK(pass.code == 0);
    const auto j = Json::parse(pass.out);
    CHECK(j["result"]["n"] == 200);
    CHECK(j["result"]["pass"] == true);
    CHECK(invoke({"limit-compare", "--steps", "50", "--tolerance", "0.001"}).code == 1);
}

TEST_CASE("usage errors exit 2 with a one-line reason", "[cli]") {
    const std::vector<std::vector<std::string>> bad{
        {},
        {"frobnicate"},
        {"classify", "--theta", "7"},
        {"classify", "--abcd", "0.5", "0", "0.5", "0", "0.5", "0", "0.5", "0"},
        {"classify", "--theta", "0.1", "--abcd", "1", "0", "0", "0", "0", "0", "0", "0"},
        {"simulate-qca", "--qubit", "1", "1"},
        {"simulate-qca", "--sign", "x"},
        {"simulate-qca", "--steps", "-2"},
        {"simulate-qw", "--walk", "plain", "--coin", "1", "0", "1", "0", "1", "0", "1", "0"},
        {"simulate-qw", "--family", "C"},
        {"verify"},
        {"verify", "--kind", "nope"},
        {"verify", "--kind", "reduction"},
        {"verify", "--kind", "patel", "--phi1", "-1"},
        {"factorize", "--kind", "two-step", "--theta1", "pi*3"},
        {"classify", "--format", "xml"},
        {"limit-compare", "--steps", "0"},
    };
    for (const auto& args : bad) {
        std::string joined;
        for (const auto& a : args) joined += a + ' ';
        INFO(joined);
        const auto r = invoke(args);
        CHECK(r.code == 2);
        CHECK(r.out.empty());
        CHECK(r.err.rfind("error: ", 0) == 0);
        CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
    }
}

TEST_CASE("--help lists every command", "[cli]") {
    const auto r = invoke({"--help"});
    CHECK(r.code == 0);
    for (const char* cmd : {"classify", "simulate-qca", "simulate-qw", "verify", "factorize", "limit-compare"})
        CHECK(r.out.find(cmd) != std::string::npos);
    for (const char* flag : {"--theta", "--qubit", "--steps", "--sign", "--kind", "--tolerance", "--out", "--format"})
        CHECK(r.out.find(flag) != std::string::npos);
}

TEST_CASE("CSV and JSON carry the same numbers", "[cli]") {
    const std::vector<std::string> base{"simulate-qca", "--steps", "7", "--qubit", "0.6", "0", "0", "0.8"};
    auto json_args = base;
    json_args.insert(json_args.end(), {"--format", "json"});
    const auto csv = lines(invoke(base).out);
    const auto j = Json::parse(invoke(json_args).out);
    const auto& dist = j["result"]["distribution"];
    REQUIRE(csv.size() == dist.size() + 1);
    for (std::size_t i = 0; i < dist.size(); ++i) {
        const auto& row = csv[i + 1];
        const auto comma = row.find(',');
        CHECK(std::stoll(row.substr(0, comma)) == dist[i][0].get<long long>());
        CHECK(std::stod(row.substr(comma + 1)) == dist[i][1].get<double>());
    }

    const std::vector<std::string> fact{"factorize", "--kind", "two-step", "--theta", "1", "--phi", "2", "--theta1",
                                        "0.5"};
    auto fact_json = fact;
    fact_json.insert(fact_json.end(), {"--format", "json"});
    const auto fj = Json::parse(invoke(fact_json).out);
    std::vector<double> json_numbers, csv_numbers;
    collect_numbers(fj["result"], json_numbers);
    collect_numbers(fj["residuals"], json_numbers);
    const auto fcsv = lines(invoke(fact).out);
    for (std::size_t i = 1; i < fcsv.size(); ++i) csv_numbers.push_back(std::stod(fcsv[i].substr(fcsv[i].find(',') + 1)));
    CHECK(csv_numbers == json_numbers);
}

TEST_CASE("--out writes the report to a file", "[cli]") {
    const auto path = std::filesystem::temp_directory_path() / "qcawalk_cli_out_test.csv";
    std::filesystem::remove(path);
    const auto r = invoke({"simulate-qca", "--steps", "3", "--out", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path, std::ios::binary);
    const std::string written((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(written == invoke({"simulate-qca", "--steps", "3"}).out);
    CHECK(written.find('\r') == std::string::npos);
    std::filesystem::remove(path);
}

TEST_CASE("--timing fills duration_ms", "[cli]") {
    const auto j = Json::parse(invoke({"classify", "--format", "json", "--timing"}).out);
    CHECK(j["duration_ms"].is_number());
    CHECK(j["duration_ms"].get<double>() >= 0.0);
}
