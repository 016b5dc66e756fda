#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bbprec {

// One laboratory's results: either the individual 0/1 trial outcomes, the
// success count, or both (in which case they must agree).
struct LabRecord {
    std::string lab_id;
    std::optional<std::vector<std::uint8_t>> outcomes;
    int success_count = 0;

    static LabRecord from_outcomes(std::string id, std::vector<std::uint8_t> outcomes);
    static LabRecord from_count(std::string id, int successes);

    friend bool operator==(const LabRecord&, const LabRecord&) = default;
};

// A balanced collaborative study: L >= 2 laboratories, each with the same
// number n of binary trials.
class StudyData {
public:
    /// Validates the invariants and throws InputError naming the offending lab.
    StudyData(std::string study_id, int trials_per_lab, std::vector<LabRecord> labs);

    static StudyData from_counts(std::string study_id, int trials_per_lab,
                                 const std::vector<int>& counts);

    const std::string& id() const noexcept { return id_; }
    int n() const noexcept { return n_; }
    int lab_count() const noexcept { return static_cast<int>(labs_.size()); }
    const std::vector<LabRecord>& labs() const noexcept { return labs_; }
    std::vector<int> counts() const;
    bool has_trial_outcomes() const;

    friend bool operator==(const StudyData&, const StudyData&) = default;

private:
    std::string id_;
    int n_;
    std::vector<LabRecord> labs_;
};

}  // namespace bbprec
