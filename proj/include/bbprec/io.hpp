#pragma once

#include "bbprec/study.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace bbprec::io {

// csv-trials: header `lab_id,t1,...,tn`, one row per lab, cells 0 or 1.
// csv-counts: header `lab_id,x,n`, n constant across rows.
// json:       {"study_id": ..., "n": ..., "labs": [{"lab_id", "outcomes" | "success_count"}]}
enum class InputFormat { CsvTrials, CsvCounts, Json };

std::string_view to_string(InputFormat format);
InputFormat input_format_from_string(std::string_view text);

/// Guesses the format from the extension and, for CSV, the header row.
InputFormat detect_format(const std::filesystem::path& path);

/// Parses study text. Errors are InputError messages naming row and column
/// (rows count from 1 and include the header).
StudyData parse_study(std::string_view text, InputFormat format, std::string study_id);

/// Reads and parses a file; the study id defaults to the file stem.
StudyData ingest(const std::filesystem::path& path, std::optional<InputFormat> format = {});

/// Serializes a study; csv-trials requires per-trial outcomes for every lab.
std::string emit(const StudyData& data, InputFormat format);

}  // namespace bbprec::io
