#include "bbprec/cli.hpp"
#include "bbprec/error.hpp"
#include "bbprec/report.hpp"

#include "fixtures.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

using namespace bbprec;

namespace {

const std::filesystem::path kData = BBPREC_TEST_DATA;

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run_cli(std::initializer_list<std::string> args) {
    std::vector<std::string> storage = {"bbprec"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : storage) argv.push_back(s.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string data_file(const char* name) { return (kData / name).string(); }

}  // namespace

TEST_CASE("analysis report for the Listeria study") {
    const auto report = analyze(fixtures::listeria());
    CHECK(report.exit_code() == 0);
    CHECK(report.lab_count == 10);
    CHECK(report.estimates.p_hat == doctest::Approx(0.92));
    REQUIRE(report.beta_params.has_value());
    REQUIRE(report.simultaneous.has_value());
    CHECK_FALSE(report.simultaneous->lab_effect_detected);
    REQUIRE(report.iso.chi_squared.has_value());
    CHECK_FALSE(report.iso.chi_squared->valid);

    const auto json = to_json(report);
    CHECK(json["schema"] == "bbprec/analysis-report");
    CHECK(json["schema_version"] == kReportSchemaVersion);
    CHECK(json["study"]["counts"] == nlohmann::json::array({5, 5, 5, 5, 3, 5, 3, 5, 5, 5}));
    CHECK(json["config"]["interval_mode"] == "definition");
    CHECK(json["config"]["ab_formula"] == "paper");
    CHECK(json["estimates"]["sigma2_r"].get<double>() == doctest::Approx(0.06).epsilon(1e-13));
    CHECK(json["simultaneous"]["lab_effect_detected"] == false);
    CHECK(json["simultaneous"]["intervals"].size() == 10);
    CHECK(json["exit_code"] == 0);

    const auto text = to_text(report);
    CHECK(text.find("0.92") != std::string::npos);
    CHECK(text.find("0.06") != std::string::npos);
    CHECK(text.find("WARNING") != std::string::npos);
}

TEST_CASE("text numbers use four significant digits") {
    CHECK(format_sig4(0.0164444444) == "0.01644");
    CHECK(format_sig4(0.92) == "0.92");
    CHECK(format_sig4(0.177777777) == "0.1778");
    CHECK(format_sig4(4.2003939760220081e-7) == "4.2e-07");
}

TEST_CASE("degenerate studies still produce a report") {
    const auto report = analyze(StudyData::from_counts("pos", 5, {5, 5, 5, 5}));
    CHECK(report.exit_code() == 2);
    REQUIRE(report.diagnostic.has_value());
    CHECK(report.diagnostic->kind == "no_within_lab_variation");
    CHECK_FALSE(report.simultaneous.has_value());
    CHECK_FALSE(report.beta_params.has_value());
    CHECK(report.iso.chi_squared_error == "no variation to test");
    const auto json = to_json(report);
    CHECK(json["simultaneous"].is_null());
    CHECK(json["diagnostic"]["kind"] == "no_within_lab_variation");
    CHECK(json["exit_code"] == 2);

    const auto shape = analyze(fixtures::propyl_gallate(), {0.05, IntervalMode::Definition, AbFormula::Prop1});
    CHECK(shape.exit_code() == 2);
    REQUIRE(shape.diagnostic.has_value());
    CHECK(shape.diagnostic->kind == "invalid_interval_shape");
    CHECK(shape.beta_params.has_value());

    CHECK_THROWS_AS(analyze(fixtures::listeria(), {1.5}), InputError);
}

TEST_CASE("cli analyze: worked examples and exit codes") {
    const auto listeria = run_cli({"analyze", data_file("listeria.csv"), "--format", "json"});
    CHECK(listeria.code == 0);
    const auto doc = nlohmann::json::parse(listeria.out);
    CHECK(doc["estimates"]["p_hat"].get<double>() == doctest::Approx(0.92));
    CHECK(doc["simultaneous"]["lab_effect_detected"] == false);
    CHECK(listeria.err.find("np >= 5") != std::string::npos);

    const auto gallate = run_cli({"analyze", data_file("propyl_gallate.csv"), "--format", "json"});
    CHECK(gallate.code == 0);
    const auto gdoc = nlohmann::json::parse(gallate.out);
    CHECK(gdoc["estimates"]["sigma2_R"].get<double>() == doctest::Approx(0.1778).epsilon(5e-4));
    CHECK(gdoc["simultaneous"]["lab_effect_detected"] == false);

    const auto text = run_cli({"analyze", data_file("hydroquinone.csv")});
    CHECK(text.code == 0);
    CHECK(text.out.find("0.1333") != std::string::npos);

    const auto positive = run_cli({"analyze", data_file("all_positive.csv")});
    CHECK(positive.code == 2);
    CHECK(positive.err.find("no within-lab variation") != std::string::npos);
    CHECK_FALSE(positive.out.empty());

    CHECK(run_cli({"analyze", data_file("nonbinary.csv")}).code == 1);
    CHECK(run_cli({"analyze", data_file("nonbinary.csv")}).err.find("row 3, column t2") != std::string::npos);
    CHECK(run_cli({"analyze", data_file("one_trial.csv")}).code == 1);
    CHECK(run_cli({"analyze", data_file("missing.csv")}).code == 1);
    CHECK(run_cli({"analyze", data_file("listeria.csv"), "--alpha", "0"}).code == 1);
    CHECK(run_cli({"analyze", data_file("listeria.csv"), "--interval-mode", "wilson"}).code == 1);
    CHECK(run_cli({"analyze"}).code == 1);
    CHECK(run_cli({}).code == 1);
    CHECK(run_cli({"--help"}).code == 0);
    CHECK(run_cli({"--version"}).out.find(software_version()) != std::string::npos);
}

TEST_CASE("cli analyze output is byte-identical across runs") {
    const auto first = run_cli({"analyze", data_file("listeria.csv"), "--format", "json"});
    const auto second = run_cli({"analyze", data_file("listeria.csv"), "--format", "json"});
    CHECK(first.out == second.out);
}

TEST_CASE("cli simulate") {
    CHECK(run_cli({"simulate", "--reps", "0"}).code == 1);
    CHECK(run_cli({"simulate", "--labs", "1"}).code == 1);
    CHECK(run_cli({"simulate", "--a", "-1"}).code == 1);

    const auto serial = run_cli({"simulate", "--reps", "2000", "--seed", "7", "--threads", "1"});
    const auto parallel = run_cli({"simulate", "--reps", "2000", "--seed", "7", "--threads", "4"});
    CHECK(serial.code == 0);
    CHECK(serial.out == parallel.out);
    const auto doc = nlohmann::json::parse(serial.out);
    CHECK(doc["schema"] == "bbprec/simulation-summary");
    CHECK(doc["config"]["master_seed"] == 7);
    CHECK(doc["sigma2_r"]["expected"].get<double>() == doctest::Approx(0.2));

    const auto text = run_cli({"simulate", "--reps", "200", "--no-intervals", "--format", "text"});
    CHECK(text.code == 0);
    CHECK(text.out.find("sigma2_r") != std::string::npos);
}

TEST_CASE("cli convert round-trips the example files") {
    const auto json = run_cli({"convert", data_file("listeria.csv"), "--to", "json"});
    CHECK(json.code == 0);
    const auto doc = nlohmann::json::parse(json.out);
    CHECK(doc["study_id"] == "listeria");
    CHECK(doc["labs"].size() == 10);

    const auto counts = run_cli({"convert", data_file("propyl_gallate.json"), "--to", "csv-counts"});
    CHECK(counts.code == 0);
    CHECK(counts.out == "lab_id,x,n\nlab1,0,3\nlab2,2,3\nlab3,0,3\nlab4,1,3\nlab5,0,3\n");

    CHECK(run_cli({"convert", data_file("hydroquinone.csv"), "--to", "csv-trials"}).code == 1);
}
