#pragma once

#include "bbprec/estimation.hpp"
#include "bbprec/intervals.hpp"
#include "bbprec/iso_baseline.hpp"
#include "bbprec/simulation.hpp"
#include "bbprec/study.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace bbprec {

inline constexpr const char* kReportSchemaVersion = "1";

struct AnalysisOptions {
    double alpha = 0.05;
    IntervalMode interval_mode = IntervalMode::Definition;
    AbFormula ab_formula = AbFormula::Paper;
};

// Why the beta-binomial interval stage could not run.
struct ModelDiagnostic {
    std::string kind;  // no_within_lab_variation | no_between_lab_variation | invalid_interval_shape
    std::string message;
    std::optional<double> raw_value;
};

struct IsoBlock {
    VarianceComponents variances{};
    AnovaTable anova;
    std::optional<ChiSquaredResult> chi_squared;
    std::optional<std::string> chi_squared_error;
};

struct AnalysisReport {
    std::string study_id;
    int lab_count = 0;
    int n = 0;
    std::vector<std::string> lab_ids;
    std::vector<int> counts;
    AnalysisOptions options;
    PrecisionEstimates estimates;
    std::optional<BetaParams> beta_params;
    std::optional<ModelDiagnostic> diagnostic;
    std::optional<SimultaneousResult> simultaneous;
    IsoBlock iso;
    std::string software_version;

    bool degenerate() const noexcept { return diagnostic.has_value(); }
    /// 0 on success, 2 when the model diagnostics stopped the interval stage.
    int exit_code() const noexcept { return degenerate() ? 2 : 0; }
};

/// Runs the full analysis. Input problems (n = 1, invalid alpha) throw;
/// model degeneracy is recorded in the report instead.
AnalysisReport analyze(const StudyData& data, const AnalysisOptions& options = {});

nlohmann::ordered_json to_json(const AnalysisReport& report);
std::string to_text(const AnalysisReport& report);

nlohmann::ordered_json to_json(const SimulationSummary& summary);
std::string to_text(const SimulationSummary& summary);

/// 4 significant digits, as used in text reports.
std::string format_sig4(double value);

const char* software_version();

}  // namespace bbprec
