#include "bbprec/cli.hpp"

#include "bbprec/error.hpp"
#include "bbprec/io.hpp"
#include "bbprec/report.hpp"
#include "bbprec/simulation.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <ostream>

namespace bbprec::cli {
namespace {

enum class OutputFormat { Text, Json };

const std::map<std::string, OutputFormat> kOutputFormats = {{"text", OutputFormat::Text},
                                                            {"json", OutputFormat::Json}};

void write_output(const std::string& body, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << body;
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw InputError("cannot write '" + path + "'");
    file << body;
}

struct AnalyzeArgs {
    std::string input;
    std::string input_format;
    double alpha = 0.05;
    std::string interval_mode = "definition";
    std::string ab_formula = "paper";
    OutputFormat format = OutputFormat::Text;
    std::string output;
};

struct SimulateArgs {
    double a = 2.0;
    double b = 3.0;
    int n = 5;
    int labs = 10;
    long long reps = 10000;
    unsigned long long seed = 1;
    double alpha = 0.05;
    std::string interval_mode = "definition";
    std::string ab_formula = "paper";
    unsigned threads = 0;
    bool no_intervals = false;
    OutputFormat format = OutputFormat::Json;
    std::string output;
};

struct ConvertArgs {
    std::string input;
    std::string input_format;
    std::string to = "json";
    std::string output;
};

int do_analyze(const AnalyzeArgs& args, std::ostream& out, std::ostream& err) {
    std::optional<io::InputFormat> fmt;
    if (!args.input_format.empty()) fmt = io::input_format_from_string(args.input_format);
    const auto data = io::ingest(args.input, fmt);

    AnalysisOptions options;
    options.alpha = args.alpha;
    options.interval_mode = interval_mode_from_string(args.interval_mode);
    options.ab_formula = ab_formula_from_string(args.ab_formula);
    const auto report = analyze(data, options);

    if (report.iso.chi_squared && !report.iso.chi_squared->valid) {
        err << "warning: " << report.iso.chi_squared->validity_note
            << "; the ISO chi-squared verdict is advisory only\n";
    }
    if (report.diagnostic) err << "diagnostic: " << report.diagnostic->message << '\n';

    const std::string body =
        args.format == OutputFormat::Json ? to_json(report).dump(2) + "\n" : to_text(report);
    write_output(body, args.output, out);
    return report.exit_code();
}

int do_simulate(const SimulateArgs& args, std::ostream& out) {
    SimulationConfig config;
    config.shape = BetaParams(args.a, args.b);
    config.n = args.n;
    config.labs = args.labs;
    config.replicates = args.reps;
    config.master_seed = args.seed;
    config.overall_alpha = args.alpha;
    config.interval_mode = interval_mode_from_string(args.interval_mode);
    config.ab_formula = ab_formula_from_string(args.ab_formula);
    config.score_intervals = !args.no_intervals;
    config.threads = args.threads;
    config.validate();

    const auto summary = simulation::run_verification(config);
    const std::string body =
        args.format == OutputFormat::Json ? to_json(summary).dump(2) + "\n" : to_text(summary);
    write_output(body, args.output, out);
    return 0;
}

int do_convert(const ConvertArgs& args, std::ostream& out) {
    std::optional<io::InputFormat> fmt;
    if (!args.input_format.empty()) fmt = io::input_format_from_string(args.input_format);
    const auto data = io::ingest(args.input, fmt);
    write_output(io::emit(data, io::input_format_from_string(args.to)), args.output, out);
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Precision analysis of binary measurement methods in collaborative studies "
                 "(beta-binomial model with ISO 5725-2 baseline)",
                 "bbprec"};
    app.set_version_flag("--version", std::string(software_version()));
    app.require_subcommand(1);

    const std::vector<std::string> input_formats = {"csv-trials", "csv-counts", "json"};
    const std::vector<std::string> interval_modes = {"definition", "posterior"};
    const std::vector<std::string> ab_formulas = {"paper", "prop1"};

    AnalyzeArgs analyze_args;
    auto* analyze_cmd = app.add_subcommand("analyze", "Analyse one collaborative study");
    analyze_cmd->add_option("input", analyze_args.input, "Study file")->required();
    analyze_cmd->add_option("--input-format", analyze_args.input_format,
                            "csv-trials | csv-counts | json (default: detect)")
        ->check(CLI::IsMember(input_formats));
    analyze_cmd->add_option("--alpha", analyze_args.alpha, "Overall significance level")
        ->capture_default_str();
    analyze_cmd->add_option("--interval-mode", analyze_args.interval_mode,
                            "Interval beta shape: definition (x-a+1, n-x-b+1) or posterior (x+a, n-x+b)")
        ->check(CLI::IsMember(interval_modes))
        ->capture_default_str();
    analyze_cmd->add_option("--ab-formula", analyze_args.ab_formula,
                            "Ratio for (a, b): paper (sigma2_L/sigma2_r) or prop1 (sigma2_r/sigma2_L)")
        ->check(CLI::IsMember(ab_formulas))
        ->capture_default_str();
    analyze_cmd->add_option("--format", analyze_args.format, "text | json")
        ->transform(CLI::CheckedTransformer(kOutputFormats));
    analyze_cmd->add_option("-o,--output", analyze_args.output, "Write the report to a file");

    SimulateArgs sim_args;
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo verification under the model");
    sim_cmd->add_option("--a", sim_args.a, "Beta shape a")->capture_default_str();
    sim_cmd->add_option("--b", sim_args.b, "Beta shape b")->capture_default_str();
    sim_cmd->add_option("--n", sim_args.n, "Trials per lab")->capture_default_str();
    sim_cmd->add_option("--labs", sim_args.labs, "Number of labs")->capture_default_str();
    sim_cmd->add_option("--reps", sim_args.reps, "Replicate studies")->capture_default_str();
    sim_cmd->add_option("--seed", sim_args.seed, "Master seed")->capture_default_str();
    sim_cmd->add_option("--alpha", sim_args.alpha, "Overall significance level")
        ->capture_default_str();
    sim_cmd->add_option("--interval-mode", sim_args.interval_mode)
        ->check(CLI::IsMember(interval_modes))
        ->capture_default_str();
    sim_cmd->add_option("--ab-formula", sim_args.ab_formula)
        ->check(CLI::IsMember(ab_formulas))
        ->capture_default_str();
    sim_cmd->add_option("--threads", sim_args.threads, "Worker threads (0 = all cores)")
        ->capture_default_str();
    sim_cmd->add_flag("--no-intervals", sim_args.no_intervals,
                      "Skip interval coverage and the lab-effect test");
    sim_cmd->add_option("--format", sim_args.format, "text | json")
        ->transform(CLI::CheckedTransformer(kOutputFormats));
    sim_cmd->add_option("-o,--output", sim_args.output, "Write the summary to a file");

    ConvertArgs conv_args;
    auto* conv_cmd = app.add_subcommand("convert", "Rewrite a study file in another format");
    conv_cmd->add_option("input", conv_args.input, "Study file")->required();
    conv_cmd->add_option("--input-format", conv_args.input_format)
        ->check(CLI::IsMember(input_formats));
    conv_cmd->add_option("--to", conv_args.to, "csv-trials | csv-counts | json")
        ->check(CLI::IsMember(input_formats))
        ->capture_default_str();
    conv_cmd->add_option("-o,--output", conv_args.output, "Output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*analyze_cmd) return do_analyze(analyze_args, out, err);
        if (*sim_cmd) return do_simulate(sim_args, out);
        if (*conv_cmd) return do_convert(conv_args, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace bbprec::cli
