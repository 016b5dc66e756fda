#pragma once

#include "bbprec/study.hpp"

#include <string>
#include <vector>

namespace fixtures {

// L. monocytogenes study: 10 labs x 5 trials.
inline bbprec::StudyData listeria() {
    const std::vector<std::vector<std::uint8_t>> rows = {
        {1, 1, 1, 1, 1}, {1, 1, 1, 1, 1}, {1, 1, 1, 1, 1}, {1, 1, 1, 1, 1}, {0, 0, 1, 1, 1},
        {1, 1, 1, 1, 1}, {0, 0, 1, 1, 1}, {1, 1, 1, 1, 1}, {1, 1, 1, 1, 1}, {1, 1, 1, 1, 1}};
    std::vector<bbprec::LabRecord> labs;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        labs.push_back(bbprec::LabRecord::from_outcomes(std::to_string(i + 1), rows[i]));
    }
    return bbprec::StudyData("listeria", 5, std::move(labs));
}

// h-CLAT hydroquinone: 5 labs x 3 repetitions.
inline bbprec::StudyData hydroquinone() {
    return bbprec::StudyData::from_counts("hydroquinone", 3, {3, 3, 1, 3, 3});
}

// h-CLAT propyl gallate: 5 labs x 3 repetitions.
inline bbprec::StudyData propyl_gallate() {
    return bbprec::StudyData::from_counts("propyl_gallate", 3, {0, 2, 0, 1, 0});
}

}  // namespace fixtures
