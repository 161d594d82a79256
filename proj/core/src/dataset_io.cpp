#include "sumnorm/dataset_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "sumnorm/errors.hpp"

namespace sumnorm {

namespace {

using json = nlohmann::json;

constexpr std::array<std::string_view, 12> kColumns{
    "study_id", "outcome", "arm", "group_label", "n",  "mean",
    "sd",       "min",     "q1",  "median",      "q3", "max"};

enum Col { kStudy, kOutcome, kArm, kLabel, kN, kMean, kSd, kMin, kQ1, kMedian, kQ3, kMax };

struct RawRow {
    std::array<std::string, kColumns.size()> cells;
    std::size_t line = 0;
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

bool is_missing(std::string_view cell) { return cell.empty() || cell == "NS"; }

std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no) {
    std::vector<std::string> out;
    std::string cell;
    bool quoted = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cell += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cell += c;
            }
        } else if (c == '"') {
            quoted = true;
            was_quoted = true;
        } else if (c == ',') {
            out.push_back(was_quoted ? cell : std::string(trim(cell)));
            cell.clear();
            was_quoted = false;
        } else {
            cell += c;
        }
    }
    if (quoted) {
        throw ParseError("unterminated quoted field", line_no);
    }
    out.push_back(was_quoted ? cell : std::string(trim(cell)));
    return out;
}

std::optional<double> parse_real(std::string_view cell, std::string_view column,
                                 std::size_t line) {
    if (is_missing(cell)) return std::nullopt;
    double value = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    if (*first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw ParseError("column '" + std::string(column) + "': not a number: '" +
                             std::string(cell) + "'",
                         line);
    }
    return value;
}

int parse_count(std::string_view cell, std::size_t line) {
    if (is_missing(cell)) {
        throw ParseError("column 'n' is required", line);
    }
    int value = 0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
        throw ParseError("column 'n': not an integer: '" + std::string(cell) + "'", line);
    }
    return value;
}

struct Keyed {
    GroupRecord group;
    std::string outcome;
    std::size_t line = 0;
};

Keyed build_group(const RawRow& row) {
    const auto& c = row.cells;
    const std::size_t line = row.line;
    if (c[kStudy].empty()) throw ParseError("column 'study_id' is required", line);
    if (c[kOutcome].empty()) throw ParseError("column 'outcome' is required", line);
    const auto arm = parse_arm(c[kArm]);
    if (!arm) {
        throw ParseError("column 'arm' must be 'case' or 'control', got '" + c[kArm] + "'", line);
    }

    Keyed out;
    out.line = line;
    out.outcome = c[kOutcome];
    GroupRecord& g = out.group;
    g.study_id = c[kStudy];
    g.group_label = c[kLabel].empty() ? std::string(to_string(*arm)) : c[kLabel];
    g.arm = *arm;
    g.n = parse_count(c[kN], line);
    g.reported_mean = parse_real(c[kMean], "mean", line);
    g.reported_sd = parse_real(c[kSd], "sd", line);

    const auto min = parse_real(c[kMin], "min", line);
    const auto q1 = parse_real(c[kQ1], "q1", line);
    const auto median = parse_real(c[kMedian], "median", line);
    const auto q3 = parse_real(c[kQ3], "q3", line);
    const auto max = parse_real(c[kMax], "max", line);
    if (median) {
        g.summary = QuantileSummary{g.n, min, q1, *median, q3, max};
    } else if (min || q1 || q3 || max) {
        throw ParseError("quantiles reported without a median", line);
    }
    return out;
}

std::vector<Study> assemble(const std::vector<Keyed>& rows) {
    std::vector<Study> studies;
    std::map<std::pair<std::string, std::string>, std::size_t> index;
    std::set<std::tuple<std::string, std::string, std::string>> seen;
    for (const auto& row : rows) {
        const auto key = std::make_tuple(row.group.study_id, row.group.group_label, row.outcome);
        if (!seen.insert(key).second) {
            throw ParseError("duplicate row for study '" + row.group.study_id + "', group '" +
                                 row.group.group_label + "', outcome '" + row.outcome + "'",
                             row.line);
        }
        const auto skey = std::make_pair(row.group.study_id, row.outcome);
        auto it = index.find(skey);
        if (it == index.end()) {
            it = index.emplace(skey, studies.size()).first;
            Study s;
            s.study_id = row.group.study_id;
            s.outcome = row.outcome;
            studies.push_back(std::move(s));
        }
        Study& study = studies[it->second];
        for (const auto& v : validate(row.group)) {
            study.warnings.push_back("group '" + row.group.group_label + "': " + v.field + ": " +
                                     v.rule);
        }
        (row.group.arm == Arm::Case ? study.case_groups : study.control_groups)
            .push_back(row.group);
    }
    for (auto& s : studies) {
        if (s.case_groups.empty()) s.warnings.emplace_back("study has no case group");
        if (s.control_groups.empty()) s.warnings.emplace_back("study has no control group");
    }
    return studies;
}

std::string format_real(double v) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return ec == std::errc{} ? std::string(buf.data(), ptr) : std::string("nan");
}

std::string csv_cell(std::string_view text) {
    if (text.find_first_of(",\"\n") == std::string_view::npos && trim(text) == text) {
        return std::string(text);
    }
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

template <class Fn>
void for_each_row(std::span<const Study> studies, Fn&& fn) {
    for (const auto& s : studies) {
        for (const auto& g : s.case_groups) fn(s, g);
        for (const auto& g : s.control_groups) fn(s, g);
    }
}

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

}  // namespace

DataFormat format_from_path(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    return ext == ".json" ? DataFormat::Json : DataFormat::Csv;
}

std::vector<Study> parse_studies(const std::filesystem::path& path,
                                 std::optional<DataFormat> format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open '" + path.string() + "'", 0);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    const DataFormat fmt = format.value_or(format_from_path(path));
    try {
        return fmt == DataFormat::Json ? parse_studies_json(text) : parse_studies_csv(text);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what(), e.line());
    }
}

std::vector<Study> parse_studies_csv(std::string_view text) {
    std::vector<Keyed> rows;
    std::optional<std::array<int, kColumns.size()>> layout;
    std::size_t ncells = 0;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    if (text.substr(0, 3) == "\xEF\xBB\xBF") pos = 3;

    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view raw = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;

        auto cells = split_csv_line(line, line_no);
        if (!layout) {
            std::array<int, kColumns.size()> idx{};
            idx.fill(-1);
            for (std::size_t i = 0; i < cells.size(); ++i) {
                const auto it = std::find(kColumns.begin(), kColumns.end(), cells[i]);
                if (it == kColumns.end()) {
                    throw ParseError("unknown column '" + cells[i] + "' in header", line_no);
                }
                auto& slot = idx[static_cast<std::size_t>(it - kColumns.begin())];
                if (slot != -1) {
                    throw ParseError("column '" + cells[i] + "' repeated in header", line_no);
                }
                slot = static_cast<int>(i);
            }
            for (std::size_t c = 0; c < kColumns.size(); ++c) {
                if (idx[c] == -1) {
                    throw ParseError("header is missing column '" + std::string(kColumns[c]) + "'",
                                     line_no);
                }
            }
            layout = idx;
            ncells = cells.size();
            continue;
        }
        if (cells.size() != ncells) {
            throw ParseError("expected " + std::to_string(ncells) + " fields, found " +
                                 std::to_string(cells.size()),
                             line_no);
        }
        RawRow row;
        row.line = line_no;
        for (std::size_t c = 0; c < kColumns.size(); ++c) {
            row.cells[c] = cells[static_cast<std::size_t>((*layout)[c])];
        }
        rows.push_back(build_group(row));
    }
    if (!layout) {
        throw ParseError("empty input: no header row", line_no);
    }
    if (rows.empty()) {
        throw ParseError("no data rows after header", line_no);
    }
    return assemble(rows);
}

std::vector<Study> parse_studies_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), line_of_offset(text, e.byte));
    }
    if (!doc.is_array()) {
        throw ParseError("JSON dataset must be an array of row objects", 1);
    }
    if (doc.empty()) {
        throw ParseError("empty input: no rows", 1);
    }
    std::vector<Keyed> rows;
    std::size_t index = 0;
    for (const auto& item : doc) {
        ++index;
        const std::string where = "row " + std::to_string(index) + ": ";
        if (!item.is_object()) {
            throw ParseError(where + "expected an object", 0);
        }
        for (const auto& [key, value] : item.items()) {
            if (std::find(kColumns.begin(), kColumns.end(), key) == kColumns.end()) {
                throw ParseError(where + "unknown field '" + key + "'", 0);
            }
        }
        RawRow row;
        for (std::size_t c = 0; c < kColumns.size(); ++c) {
            const auto it = item.find(std::string(kColumns[c]));
            if (it == item.end() || it->is_null()) continue;
            if (it->is_string()) {
                row.cells[c] = it->get<std::string>();
            } else if (it->is_number_integer() || it->is_number_unsigned()) {
                row.cells[c] = std::to_string(it->get<long long>());
            } else if (it->is_number_float()) {
                row.cells[c] = format_real(it->get<double>());
            } else {
                throw ParseError(where + "field '" + std::string(kColumns[c]) +
                                     "' must be a string, number or null",
                                 0);
            }
        }
        try {
            rows.push_back(build_group(row));
        } catch (const ParseError& e) {
            throw ParseError(where + e.what(), 0);
        }
    }
    return assemble(rows);
}

std::string serialize_csv(std::span<const Study> studies) {
    std::string out(kCsvHeader);
    out += '\n';
    const auto opt = [](const std::optional<double>& v) { return v ? format_real(*v) : ""; };
    for_each_row(studies, [&](const Study& s, const GroupRecord& g) {
        const QuantileSummary* q = g.summary ? &*g.summary : nullptr;
        out += csv_cell(s.study_id) + ',' + csv_cell(s.outcome) + ',' +
               std::string(to_string(g.arm)) + ',' + csv_cell(g.group_label) + ',' +
               std::to_string(g.n) + ',' + opt(g.reported_mean) + ',' + opt(g.reported_sd) + ',' +
               (q ? opt(q->min) : "") + ',' + (q ? opt(q->q1) : "") + ',' +
               (q ? format_real(q->median) : "") + ',' + (q ? opt(q->q3) : "") + ',' +
               (q ? opt(q->max) : "") + '\n';
    });
    return out;
}

std::string serialize_json(std::span<const Study> studies) {
    using ojson = nlohmann::ordered_json;
    ojson doc = ojson::array();
    const auto opt = [](const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); };
    for_each_row(studies, [&](const Study& s, const GroupRecord& g) {
        const QuantileSummary* q = g.summary ? &*g.summary : nullptr;
        ojson row = ojson::object();
        row["study_id"] = s.study_id;
        row["outcome"] = s.outcome;
        row["arm"] = std::string(to_string(g.arm));
        row["group_label"] = g.group_label;
        row["n"] = g.n;
        row["mean"] = opt(g.reported_mean);
        row["sd"] = opt(g.reported_sd);
        row["min"] = q ? opt(q->min) : ojson(nullptr);
        row["q1"] = q ? opt(q->q1) : ojson(nullptr);
        row["median"] = q ? ojson(q->median) : ojson(nullptr);
        row["q3"] = q ? opt(q->q3) : ojson(nullptr);
        row["max"] = q ? opt(q->max) : ojson(nullptr);
        doc.push_back(std::move(row));
    });
    return doc.dump(2) + '\n';
}

}  // namespace sumnorm
