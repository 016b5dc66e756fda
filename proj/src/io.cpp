#include "bbprec/io.hpp"

#include "bbprec/error.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

namespace bbprec::io {
namespace {

using Row = std::vector<std::string>;

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

struct CsvLine {
    int row;  // 1-based line number
    Row cells;
};

std::vector<CsvLine> split_csv(std::string_view text) {
    std::vector<CsvLine> lines;
    if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
    int row = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++row;
        const auto line = trim(text.substr(start, end - start));
        if (!line.empty()) {
            Row cells;
            std::size_t pos = 0;
            for (;;) {
                const std::size_t comma = line.find(',', pos);
                cells.emplace_back(trim(line.substr(pos, comma - pos)));
                if (comma == std::string_view::npos) break;
                pos = comma + 1;
            }
            lines.push_back({row, std::move(cells)});
        }
        start = end + 1;
    }
    return lines;
}

std::string where(int row, const std::string& column) {
    return "row " + std::to_string(row) + ", column " + column;
}

int parse_int(const std::string& cell, int row, const std::string& column) {
    int value = 0;
    const auto* first = cell.data();
    const auto* last = cell.data() + cell.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (cell.empty() || ec != std::errc() || ptr != last) {
        throw InputError("expected an integer at " + where(row, column) + ", got '" + cell + "'");
    }
    return value;
}

void check_width(const CsvLine& line, std::size_t width) {
    if (line.cells.size() != width) {
        throw InputError("ragged row " + std::to_string(line.row) + ": " +
                         std::to_string(line.cells.size()) + " cells, header has " +
                         std::to_string(width));
    }
}

void check_unique(std::set<std::string>& seen, const std::string& id, int row) {
    if (id.empty()) throw InputError("empty lab_id at " + where(row, "lab_id"));
    if (!seen.insert(id).second) {
        throw InputError("duplicate lab_id '" + id + "' at row " + std::to_string(row));
    }
}

StudyData parse_trials(const std::vector<CsvLine>& lines, std::string study_id) {
    const auto& header = lines.front().cells;
    if (header.size() < 2 || header[0] != "lab_id") {
        throw InputError("csv-trials header must be lab_id,t1,...,tn");
    }
    for (std::size_t j = 1; j < header.size(); ++j) {
        if (header[j] != "t" + std::to_string(j)) {
            throw InputError("csv-trials header column " + std::to_string(j + 1) +
                             " must be 't" + std::to_string(j) + "', got '" + header[j] + "'");
        }
    }
    const int n = static_cast<int>(header.size()) - 1;
    std::set<std::string> seen;
    std::vector<LabRecord> labs;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& line = lines[i];
        check_width(line, header.size());
        check_unique(seen, line.cells[0], line.row);
        std::vector<std::uint8_t> outcomes;
        outcomes.reserve(n);
        for (std::size_t j = 1; j < line.cells.size(); ++j) {
            const auto& cell = line.cells[j];
            if (cell != "0" && cell != "1") {
                throw InputError("non-binary outcome at " + where(line.row, header[j]) +
                                 ": '" + cell + "'");
            }
            outcomes.push_back(cell == "1" ? 1 : 0);
        }
        labs.push_back(LabRecord::from_outcomes(line.cells[0], std::move(outcomes)));
    }
    return StudyData(std::move(study_id), n, std::move(labs));
}

StudyData parse_counts(const std::vector<CsvLine>& lines, std::string study_id) {
    const auto& header = lines.front().cells;
    if (header != Row{"lab_id", "x", "n"}) {
        throw InputError("csv-counts header must be lab_id,x,n");
    }
    std::optional<int> n;
    std::set<std::string> seen;
    std::vector<LabRecord> labs;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& line = lines[i];
        check_width(line, 3);
        check_unique(seen, line.cells[0], line.row);
        const int x = parse_int(line.cells[1], line.row, "x");
        const int trials = parse_int(line.cells[2], line.row, "n");
        if (trials < 1) throw InputError("n must be >= 1 at " + where(line.row, "n"));
        if (n && *n != trials) {
            throw InputError("inconsistent n at " + where(line.row, "n") + ": " +
                             std::to_string(trials) + " differs from " + std::to_string(*n));
        }
        n = trials;
        if (x < 0 || x > trials) {
            throw InputError("count outside [0, n] at " + where(line.row, "x"));
        }
        labs.push_back(LabRecord::from_count(line.cells[0], x));
    }
    if (!n) throw InputError("a study needs at least 2 laboratories");
    return StudyData(std::move(study_id), *n, std::move(labs));
}

StudyData parse_json(std::string_view text, std::string study_id) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
    try {
        if (doc.contains("study_id")) study_id = doc.at("study_id").get<std::string>();
        const int n = doc.at("n").get<int>();
        std::vector<LabRecord> labs;
        std::set<std::string> seen;
        const auto& entries = doc.at("labs");
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const auto& entry = entries[i];
            const std::string label = "labs[" + std::to_string(i) + "]";
            auto id = entry.at("lab_id").get<std::string>();
            if (!seen.insert(id).second) {
                throw InputError("duplicate lab_id '" + id + "' at " + label);
            }
            LabRecord rec;
            if (entry.contains("outcomes")) {
                std::vector<std::uint8_t> y;
                for (const auto& v : entry.at("outcomes")) {
                    const int value = v.get<int>();
                    if (value != 0 && value != 1) {
                        throw InputError("non-binary outcome in " + label + ".outcomes");
                    }
                    y.push_back(static_cast<std::uint8_t>(value));
                }
                rec = LabRecord::from_outcomes(std::move(id), std::move(y));
                if (entry.contains("success_count") &&
                    entry.at("success_count").get<int>() != rec.success_count) {
                    throw InputError(label + ".success_count disagrees with outcomes");
                }
            } else {
                rec = LabRecord::from_count(std::move(id), entry.at("success_count").get<int>());
            }
            labs.push_back(std::move(rec));
        }
        return StudyData(std::move(study_id), n, std::move(labs));
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed study JSON: ") + e.what());
    }
}

}  // namespace

std::string_view to_string(InputFormat format) {
    switch (format) {
        case InputFormat::CsvTrials: return "csv-trials";
        case InputFormat::CsvCounts: return "csv-counts";
        case InputFormat::Json: return "json";
    }
    return "json";
}

InputFormat input_format_from_string(std::string_view text) {
    if (text == "csv-trials") return InputFormat::CsvTrials;
    if (text == "csv-counts") return InputFormat::CsvCounts;
    if (text == "json") return InputFormat::Json;
    throw InputError("unknown input format '" + std::string(text) + "'");
}

InputFormat detect_format(const std::filesystem::path& path) {
    if (path.extension() == ".json") return InputFormat::Json;
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    const auto lines = split_csv(header);
    if (!lines.empty() && lines.front().cells.size() == 3 && lines.front().cells[1] == "x") {
        return InputFormat::CsvCounts;
    }
    return InputFormat::CsvTrials;
}

StudyData parse_study(std::string_view text, InputFormat format, std::string study_id) {
    if (format == InputFormat::Json) return parse_json(text, std::move(study_id));
    const auto lines = split_csv(text);
    if (lines.empty()) throw InputError("empty input");
    if (lines.size() < 3) throw InputError("a study needs at least 2 laboratories");
    return format == InputFormat::CsvTrials ? parse_trials(lines, std::move(study_id))
                                            : parse_counts(lines, std::move(study_id));
}

StudyData ingest(const std::filesystem::path& path, std::optional<InputFormat> format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_study(buf.str(), format ? *format : detect_format(path), path.stem().string());
}

std::string emit(const StudyData& data, InputFormat format) {
    std::ostringstream out;
    switch (format) {
        case InputFormat::CsvTrials: {
            if (!data.has_trial_outcomes()) {
                throw InputError("csv-trials needs per-trial outcomes for every lab");
            }
            out << "lab_id";
            for (int j = 1; j <= data.n(); ++j) out << ",t" << j;
            out << '\n';
            for (const auto& lab : data.labs()) {
                out << lab.lab_id;
                for (auto y : *lab.outcomes) out << ',' << static_cast<int>(y);
                out << '\n';
            }
            break;
        }
        case InputFormat::CsvCounts:
            out << "lab_id,x,n\n";
            for (const auto& lab : data.labs()) {
                out << lab.lab_id << ',' << lab.success_count << ',' << data.n() << '\n';
            }
            break;
        case InputFormat::Json: {
            nlohmann::ordered_json doc;
            doc["study_id"] = data.id();
            doc["n"] = data.n();
            auto labs = nlohmann::ordered_json::array();
            for (const auto& lab : data.labs()) {
                nlohmann::ordered_json entry;
                entry["lab_id"] = lab.lab_id;
                if (lab.outcomes) {
                    std::vector<int> y(lab.outcomes->begin(), lab.outcomes->end());
                    entry["outcomes"] = y;
                }
                entry["success_count"] = lab.success_count;
                labs.push_back(std::move(entry));
            }
            doc["labs"] = std::move(labs);
            out << doc.dump(2) << '\n';
            break;
        }
    }
    return out.str();
}

}  // namespace bbprec::io
