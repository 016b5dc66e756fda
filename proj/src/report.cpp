#include "bbprec/report.hpp"

#include "bbprec/error.hpp"
#include "bbprec/version.hpp"

#include <cstdio>
#include <sstream>

namespace bbprec {

const char* software_version() { return BBPREC_VERSION; }

std::string format_sig4(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", value);
    return buf;
}

AnalysisReport analyze(const StudyData& data, const AnalysisOptions& options) {
    if (!(options.alpha > 0.0 && options.alpha < 1.0)) {
        throw InputError("alpha must lie strictly between 0 and 1");
    }
    AnalysisReport report;
    report.study_id = data.id();
    report.lab_count = data.lab_count();
    report.n = data.n();
    for (const auto& lab : data.labs()) report.lab_ids.push_back(lab.lab_id);
    report.counts = data.counts();
    report.options = options;
    report.software_version = software_version();

    report.estimates = estimation::estimate_variances(data);

    try {
        report.beta_params = estimation::estimate_beta_params(report.estimates, options.ab_formula);
        report.simultaneous = intervals::simultaneous_test(data, *report.beta_params,
                                                           options.alpha, options.interval_mode);
    } catch (const DegenerateModel& e) {
        const bool within = e.kind() == DegenerateModel::Kind::NoWithinLabVariation;
        report.diagnostic = ModelDiagnostic{
            within ? "no_within_lab_variation" : "no_between_lab_variation", e.what(),
            e.raw_value()};
    } catch (const ShapeError& e) {
        report.diagnostic = ModelDiagnostic{"invalid_interval_shape", e.what(), std::nullopt};
    }

    report.iso.variances = iso::iso_variance_estimates(data);
    report.iso.anova = iso::iso_anova(data);
    try {
        report.iso.chi_squared = iso::chi_squared_homogeneity(data);
    } catch (const DomainError& e) {
        report.iso.chi_squared_error = e.what();
    }
    return report;
}

namespace {

using Json = nlohmann::ordered_json;

Json shape_json(const BetaParams& s) { return Json{{"a", s.a}, {"b", s.b}}; }

Json interval_json(const LabInterval& li) {
    Json j;
    j["lab_id"] = li.lab_id;
    j["x"] = li.x;
    j["lower"] = li.lower;
    j["upper"] = li.upper;
    j["shape_used"] = shape_json(li.shape_used);
    j["per_lab_level"] = li.per_lab_level;
    return j;
}

Json estimator_json(const EstimatorSummary& s) {
    return Json{{"mean", s.mean}, {"std_error", s.std_error}, {"expected", s.expected}};
}

template <class T>
Json optional_json(const std::optional<T>& v) {
    return v ? Json(*v) : Json(nullptr);
}

}  // namespace

nlohmann::ordered_json to_json(const AnalysisReport& r) {
    Json j;
    j["schema"] = "bbprec/analysis-report";
    j["schema_version"] = kReportSchemaVersion;
    j["software_version"] = r.software_version;
    j["study"] = Json{{"id", r.study_id}, {"L", r.lab_count}, {"n", r.n},
                      {"lab_ids", r.lab_ids}, {"counts", r.counts}};
    j["config"] = Json{{"alpha", r.options.alpha},
                       {"interval_mode", std::string(to_string(r.options.interval_mode))},
                       {"ab_formula", std::string(to_string(r.options.ab_formula))}};

    const auto& e = r.estimates;
    j["estimates"] = Json{{"p_hat_i", e.p_hat_i},       {"p_hat", e.p_hat},
                          {"sigma2_r", e.sigma2_r},     {"sigma2_BBi", e.sigma2_BBi},
                          {"sigma2_L", e.sigma2_L},     {"sigma2_L_truncated", e.sigma2_L_truncated()},
                          {"sigma2_R", e.sigma2_R}};
    j["beta_params"] = r.beta_params ? shape_json(*r.beta_params) : Json(nullptr);
    if (r.diagnostic) {
        j["diagnostic"] = Json{{"kind", r.diagnostic->kind},
                               {"message", r.diagnostic->message},
                               {"raw_value", optional_json(r.diagnostic->raw_value)}};
    } else {
        j["diagnostic"] = nullptr;
    }
    if (r.simultaneous) {
        const auto& s = *r.simultaneous;
        Json list = Json::array();
        for (const auto& li : s.intervals) list.push_back(interval_json(li));
        Json sim;
        sim["overall_alpha"] = s.overall_alpha;
        sim["overall_level"] = s.overall_level;
        sim["per_lab_level"] = s.per_lab_level;
        sim["intervals"] = std::move(list);
        sim["intersection"] = s.intersection
                                  ? Json{{"lower", s.intersection->lower},
                                         {"upper", s.intersection->upper}}
                                  : Json(nullptr);
        sim["lab_effect_detected"] = s.lab_effect_detected;
        j["simultaneous"] = std::move(sim);
    } else {
        j["simultaneous"] = nullptr;
    }

    const auto& a = r.iso.anova;
    Json iso;
    iso["variances"] = Json{{"sigma2_r", r.iso.variances.sigma2_r},
                            {"sigma2_L", r.iso.variances.sigma2_L},
                            {"sigma2_R", r.iso.variances.sigma2_R}};
    iso["anova"] = Json{{"ss_between", a.ss_between}, {"ss_within", a.ss_within},
                        {"ss_total", a.ss_total},     {"df_between", a.df_between},
                        {"df_within", a.df_within},   {"df_total", a.df_total},
                        {"ms_between", a.ms_between}, {"ms_within", a.ms_within}};
    if (r.iso.chi_squared) {
        const auto& c = *r.iso.chi_squared;
        iso["chi_squared"] = Json{{"statistic", c.statistic}, {"df", c.df},
                                  {"p_value", c.p_value},     {"pooled_p", c.pooled_p},
                                  {"valid", c.valid},         {"validity_note", c.validity_note}};
    } else {
        iso["chi_squared"] = nullptr;
    }
    iso["chi_squared_error"] = optional_json(r.iso.chi_squared_error);
    j["iso_baseline"] = std::move(iso);
    j["exit_code"] = r.exit_code();
    return j;
}

std::string to_text(const AnalysisReport& r) {
    std::ostringstream out;
    const auto f = format_sig4;
    const auto& e = r.estimates;
    out << "Study " << r.study_id << ": L = " << r.lab_count << " laboratories, n = " << r.n
        << " trials each\n";
    out << "Options: alpha = " << f(r.options.alpha)
        << ", interval mode = " << to_string(r.options.interval_mode)
        << ", a-b formula = " << to_string(r.options.ab_formula) << "\n\n";

    out << "Beta-binomial estimates\n";
    out << "  lab          x    p_hat_i\n";
    for (std::size_t i = 0; i < r.lab_ids.size(); ++i) {
        char line[128];
        std::snprintf(line, sizeof line, "  %-10s %3d    %s\n", r.lab_ids[i].c_str(), r.counts[i],
                      f(e.p_hat_i[i]).c_str());
        out << line;
    }
    out << "  p_hat        = " << f(e.p_hat) << '\n';
    out << "  sigma2_r     = " << f(e.sigma2_r) << "  (repeatability)\n";
    out << "  sigma2_L     = " << f(e.sigma2_L) << "  (between-laboratory";
    if (e.sigma2_L < 0.0) out << ", negative; truncated value 0";
    out << ")\n";
    out << "  sigma2_R     = " << f(e.sigma2_R) << "  (reproducibility)\n";
    out << "  sigma2_BBi   = " << f(e.sigma2_BBi) << '\n';

    if (r.beta_params) {
        out << "  a_hat = " << f(r.beta_params->a) << ", b_hat = " << f(r.beta_params->b) << '\n';
    }
    if (r.diagnostic) {
        out << "\nModel diagnostic: " << r.diagnostic->message << '\n';
        out << "  intervals and the laboratory-effect test are omitted\n";
    }
    if (r.simultaneous) {
        const auto& s = *r.simultaneous;
        out << "\nJeffreys-type intervals at " << f(100.0 * s.per_lab_level)
            << "% per lab (overall " << f(100.0 * s.overall_level) << "%)\n";
        for (const auto& li : s.intervals) {
            char line[200];
            std::snprintf(line, sizeof line, "  %-10s x=%-3d Beta(%s, %s)  [%s, %s]\n",
                          li.lab_id.c_str(), li.x, f(li.shape_used.a).c_str(),
                          f(li.shape_used.b).c_str(), f(li.lower).c_str(), f(li.upper).c_str());
            out << line;
        }
        if (s.intersection) {
            out << "  simultaneous interval = [" << f(s.intersection->lower) << ", "
                << f(s.intersection->upper) << "]\n";
        } else {
            out << "  simultaneous interval is empty\n";
        }
        out << "  laboratory effect detected: " << (s.lab_effect_detected ? "yes" : "no") << '\n';
    }

    const auto& a = r.iso.anova;
    out << "\nISO 5725-2 baseline\n";
    out << "  source     SS          df   MS\n";
    char line[160];
    std::snprintf(line, sizeof line, "  between    %-10s  %-4d %s\n", f(a.ss_between).c_str(),
                  a.df_between, f(a.ms_between).c_str());
    out << line;
    std::snprintf(line, sizeof line, "  within     %-10s  %-4d %s\n", f(a.ss_within).c_str(),
                  a.df_within, f(a.ms_within).c_str());
    out << line;
    std::snprintf(line, sizeof line, "  total      %-10s  %-4d\n", f(a.ss_total).c_str(),
                  a.df_total);
    out << line;
    out << "  sigma2_r = " << f(r.iso.variances.sigma2_r)
        << ", sigma2_L = " << f(r.iso.variances.sigma2_L)
        << ", sigma2_R = " << f(r.iso.variances.sigma2_R) << '\n';
    if (r.iso.chi_squared) {
        const auto& c = *r.iso.chi_squared;
        out << "  chi-squared homogeneity: statistic = " << f(c.statistic) << ", df = " << c.df
            << ", p = " << f(c.p_value) << '\n';
        if (!c.valid) out << "  WARNING: " << c.validity_note << "; the verdict is advisory\n";
    } else if (r.iso.chi_squared_error) {
        out << "  chi-squared homogeneity: " << *r.iso.chi_squared_error << '\n';
    }
    return out.str();
}

nlohmann::ordered_json to_json(const SimulationSummary& s) {
    const auto& c = s.config;
    Json j;
    j["schema"] = "bbprec/simulation-summary";
    j["schema_version"] = kReportSchemaVersion;
    j["software_version"] = software_version();
    j["config"] = Json{{"a", c.shape.a},
                       {"b", c.shape.b},
                       {"n", c.n},
                       {"L", c.labs},
                       {"replicates", c.replicates},
                       {"master_seed", c.master_seed},
                       {"alpha", c.overall_alpha},
                       {"interval_mode", std::string(to_string(c.interval_mode))},
                       {"ab_formula", std::string(to_string(c.ab_formula))},
                       {"score_intervals", c.score_intervals}};
    j["p_hat"] = estimator_json(s.p_hat);
    j["sigma2_r"] = estimator_json(s.sigma2_r);
    j["sigma2_L"] = estimator_json(s.sigma2_L);
    j["sigma2_R"] = estimator_json(s.sigma2_R);
    j["per_lab_coverage"] = optional_json(s.per_lab_coverage);
    j["lab_effect_rejection_rate"] = optional_json(s.lab_effect_rejection_rate);
    j["scored_replicates"] = s.scored_replicates;
    j["scored_labs"] = s.scored_labs;
    j["degenerate_count"] = s.degenerate_count;
    j["invalid_shape_count"] = s.invalid_shape_count;
    return j;
}

std::string to_text(const SimulationSummary& s) {
    std::ostringstream out;
    const auto f = format_sig4;
    const auto& c = s.config;
    out << "Simulation: Beta(" << f(c.shape.a) << ", " << f(c.shape.b) << "), n = " << c.n
        << ", L = " << c.labs << ", replicates = " << c.replicates
        << ", seed = " << c.master_seed << '\n';
    out << "  estimator   mean        std.err     expected    |z|\n";
    const auto row = [&](const char* name, const EstimatorSummary& e) {
        char line[160];
        std::snprintf(line, sizeof line, "  %-10s  %-10s  %-10s  %-10s  %s\n", name,
                      f(e.mean).c_str(), f(e.std_error).c_str(), f(e.expected).c_str(),
                      f(e.z_score()).c_str());
        out << line;
    };
    row("p_hat", s.p_hat);
    row("sigma2_r", s.sigma2_r);
    row("sigma2_L", s.sigma2_L);
    row("sigma2_R", s.sigma2_R);
    if (s.per_lab_coverage) {
        out << "  per-lab coverage (level " << f(100.0 * (1.0 - c.overall_alpha / c.labs))
            << "%): " << f(*s.per_lab_coverage) << '\n';
        out << "  lab-effect rejection rate: " << f(*s.lab_effect_rejection_rate) << '\n';
    }
    out << "  degenerate replicates: " << s.degenerate_count
        << ", invalid interval shapes: " << s.invalid_shape_count << '\n';
    return out.str();
}

}  // namespace bbprec
