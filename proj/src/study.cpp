#include "bbprec/study.hpp"

#include "bbprec/error.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace bbprec {

LabRecord LabRecord::from_outcomes(std::string id, std::vector<std::uint8_t> outcomes) {
    LabRecord rec;
    rec.lab_id = std::move(id);
    rec.success_count = std::accumulate(outcomes.begin(), outcomes.end(), 0);
    rec.outcomes = std::move(outcomes);
    return rec;
}

LabRecord LabRecord::from_count(std::string id, int successes) {
    LabRecord rec;
    rec.lab_id = std::move(id);
    rec.success_count = successes;
    return rec;
}

StudyData::StudyData(std::string study_id, int trials_per_lab, std::vector<LabRecord> labs)
    : id_(std::move(study_id)), n_(trials_per_lab), labs_(std::move(labs)) {
    if (n_ < 1) throw InputError("trials per lab must be >= 1");
    if (labs_.size() < 2) throw InputError("a study needs at least 2 laboratories");
    std::set<std::string> seen;
    for (const auto& lab : labs_) {
        if (!seen.insert(lab.lab_id).second) {
            throw InputError("duplicate lab_id '" + lab.lab_id + "'");
        }
        if (lab.outcomes) {
            const auto& y = *lab.outcomes;
            if (static_cast<int>(y.size()) != n_) {
                throw InputError("lab '" + lab.lab_id + "' has " + std::to_string(y.size()) +
                                 " trials, expected " + std::to_string(n_));
            }
            if (std::any_of(y.begin(), y.end(), [](std::uint8_t v) { return v > 1; })) {
                throw InputError("lab '" + lab.lab_id + "' has a non-binary outcome");
            }
            if (std::accumulate(y.begin(), y.end(), 0) != lab.success_count) {
                throw InputError("lab '" + lab.lab_id + "' success count disagrees with outcomes");
            }
        }
        if (lab.success_count < 0 || lab.success_count > n_) {
            throw InputError("lab '" + lab.lab_id + "' success count " +
                             std::to_string(lab.success_count) + " outside [0, " +
                             std::to_string(n_) + "]");
        }
    }
}

StudyData StudyData::from_counts(std::string study_id, int trials_per_lab,
                                 const std::vector<int>& counts) {
    std::vector<LabRecord> labs;
    labs.reserve(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        labs.push_back(LabRecord::from_count(std::to_string(i + 1), counts[i]));
    }
    return StudyData(std::move(study_id), trials_per_lab, std::move(labs));
}

std::vector<int> StudyData::counts() const {
    std::vector<int> x;
    x.reserve(labs_.size());
    for (const auto& lab : labs_) x.push_back(lab.success_count);
    return x;
}

bool StudyData::has_trial_outcomes() const {
    return std::all_of(labs_.begin(), labs_.end(),
                       [](const LabRecord& lab) { return lab.outcomes.has_value(); });
}

}  // namespace bbprec
