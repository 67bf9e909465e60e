#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fieldtrends/errors.hpp"

namespace fieldtrends {

// One (year, discipline) occurrence count. Discipline names are stored trimmed
// and compared case-sensitively.
struct CorpusCell {
    int year = 0;
    std::string discipline;
    std::int64_t count = 0;

    friend bool operator==(const CorpusCell&, const CorpusCell&) = default;
};

struct YearPoint {
    int year = 0;
    double value = 0.0;

    friend bool operator==(const YearPoint&, const YearPoint&) = default;
};

// Strictly increasing years, non-negative values.
class YearSeries {
public:
    YearSeries() = default;

    explicit YearSeries(std::vector<YearPoint> points) : points_(std::move(points)) {
        std::sort(points_.begin(), points_.end(),
                  [](const YearPoint& l, const YearPoint& r) { return l.year < r.year; });
        for (std::size_t i = 0; i < points_.size(); ++i) {
            if (i > 0 && points_[i].year == points_[i - 1].year)
                throw std::invalid_argument("YearSeries: duplicate year " +
                                            std::to_string(points_[i].year));
            if (!(points_[i].value >= 0.0))
                throw std::invalid_argument("YearSeries: negative value at year " +
                                            std::to_string(points_[i].year));
        }
    }

    const std::vector<YearPoint>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }

    friend bool operator==(const YearSeries&, const YearSeries&) = default;

private:
    std::vector<YearPoint> points_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const char* ws = " \t\f\v\r\n";
    const auto first = s.find_first_not_of(ws);
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(ws);
    return s.substr(first, last - first + 1);
}

template <typename Int>
inline bool parse_int(std::string_view field, Int& out) {
    if (field.empty()) return false;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto res = std::from_chars(begin, end, out);
    return res.ec == std::errc{} && res.ptr == end;
}

}  // namespace detail

// Immutable per-field corpus: unique (year, discipline) occurrence counts plus
// optional per-year document totals. Cells are kept sorted by (year, discipline).
class FieldCorpus {
public:
    FieldCorpus(std::string field_name, std::vector<CorpusCell> cells,
                std::map<int, std::int64_t> document_totals = {})
        : field_name_(std::move(field_name)),
          cells_(std::move(cells)),
          document_totals_(std::move(document_totals)) {
        if (cells_.empty()) raise(Errc::EmptyCorpus, "corpus has no cells");
        for (auto& cell : cells_) {
            const auto trimmed = detail::trim(cell.discipline);
            if (trimmed.empty())
                raise(Errc::MalformedRow, "empty discipline name in year " +
                                              std::to_string(cell.year));
            if (trimmed.size() != cell.discipline.size()) cell.discipline = std::string(trimmed);
            if (cell.count < 0)
                raise(Errc::NegativeCount, "count " + std::to_string(cell.count) + " for '" +
                                               cell.discipline + "' in year " +
                                               std::to_string(cell.year));
        }
        std::sort(cells_.begin(), cells_.end(), [](const CorpusCell& l, const CorpusCell& r) {
            return std::tie(l.year, l.discipline) < std::tie(r.year, r.discipline);
        });
        for (std::size_t i = 1; i < cells_.size(); ++i) {
            if (cells_[i].year == cells_[i - 1].year &&
                cells_[i].discipline == cells_[i - 1].discipline)
                raise(Errc::DuplicateCell, "'" + cells_[i].discipline + "' appears twice in year " +
                                               std::to_string(cells_[i].year));
        }
        for (const auto& [year, documents] : document_totals_) {
            if (documents < 0)
                raise(Errc::NegativeCount, "documents " + std::to_string(documents) +
                                               " in year " + std::to_string(year));
        }
        min_year_ = cells_.front().year;
        max_year_ = cells_.back().year;
    }

    const std::string& field_name() const noexcept { return field_name_; }
    const std::vector<CorpusCell>& cells() const noexcept { return cells_; }
    const std::map<int, std::int64_t>& document_totals() const noexcept {
        return document_totals_;
    }

    // Span is derived solely from the years present in cells.
    int min_year() const noexcept { return min_year_; }
    int max_year() const noexcept { return max_year_; }

    friend bool operator==(const FieldCorpus& l, const FieldCorpus& r) {
        return l.field_name_ == r.field_name_ && l.cells_ == r.cells_ &&
               l.document_totals_ == r.document_totals_;
    }

private:
    std::string field_name_;
    std::vector<CorpusCell> cells_;
    std::map<int, std::int64_t> document_totals_;
    int min_year_ = 0;
    int max_year_ = 0;
};

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

}  // namespace detail

// Parses the fixed-header CSV `year,discipline,count[,documents]`. UTF-8, LF or
// CRLF line endings, final newline optional. A year's documents value must be
// identical on every row of that year.
inline FieldCorpus parse_corpus_csv(std::string_view text, std::string field_name = {}) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    for (auto& line : lines) {
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    }
    // A final newline produces one empty trailing entry; drop it.
    if (!lines.empty() && lines.back().empty()) lines.pop_back();

    if (lines.empty()) raise(Errc::MalformedHeader, "input is empty");
    const std::string_view header = lines[0];
    bool has_documents = false;
    if (header == "year,discipline,count") {
        has_documents = false;
    } else if (header == "year,discipline,count,documents") {
        has_documents = true;
    } else {
        raise(Errc::MalformedHeader, "expected 'year,discipline,count[,documents]', got '" +
                                         std::string(header) + "'");
    }
    const std::size_t expected_fields = has_documents ? 4 : 3;

    std::vector<CorpusCell> cells;
    std::map<int, std::int64_t> document_totals;
    std::set<std::pair<int, std::string>> seen;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string row_label = "row " + std::to_string(i + 1);
        const auto fields = detail::split_fields(lines[i]);
        if (fields.size() != expected_fields)
            raise(Errc::MalformedRow, row_label + ": expected " +
                                          std::to_string(expected_fields) + " fields, got " +
                                          std::to_string(fields.size()));
        int year = 0;
        std::int64_t count = 0;
        if (!detail::parse_int(fields[0], year))
            raise(Errc::MalformedRow, row_label + ": year '" + std::string(fields[0]) +
                                          "' is not an integer");
        if (!detail::parse_int(fields[2], count))
            raise(Errc::MalformedRow, row_label + ": count '" + std::string(fields[2]) +
                                          "' is not an integer");
        if (count < 0)
            raise(Errc::NegativeCount, row_label + ": count " + std::to_string(count));
        const auto discipline = detail::trim(fields[1]);
        if (discipline.empty()) raise(Errc::MalformedRow, row_label + ": empty discipline");

        if (!seen.emplace(year, std::string(discipline)).second)
            raise(Errc::DuplicateCell, row_label + ": '" + std::string(discipline) +
                                           "' already given for year " + std::to_string(year));
        if (has_documents) {
            std::int64_t documents = 0;
            if (!detail::parse_int(fields[3], documents))
                raise(Errc::MalformedRow, row_label + ": documents '" + std::string(fields[3]) +
                                              "' is not an integer");
            if (documents < 0)
                raise(Errc::NegativeCount, row_label + ": documents " + std::to_string(documents));
            const auto [it, inserted] = document_totals.emplace(year, documents);
            if (!inserted && it->second != documents)
                raise(Errc::InconsistentDocuments,
                      row_label + ": year " + std::to_string(year) + " has documents " +
                          std::to_string(documents) + " but was " + std::to_string(it->second));
        }
        cells.push_back(CorpusCell{year, std::string(discipline), count});
    }
    if (cells.empty()) raise(Errc::EmptyCorpus, "no data rows");
    return FieldCorpus(std::move(field_name), std::move(cells), std::move(document_totals));
}

// Canonical CSV form: rows sorted by (year, discipline); the documents column is
// present iff document_totals is non-empty. parse(serialize(c)) == c.
inline std::string serialize_corpus_csv(const FieldCorpus& corpus) {
    const bool has_documents = !corpus.document_totals().empty();
    std::string out = has_documents ? "year,discipline,count,documents\n" : "year,discipline,count\n";
    for (const auto& cell : corpus.cells()) {
        out += std::to_string(cell.year);
        out += ',';
        out += cell.discipline;
        out += ',';
        out += std::to_string(cell.count);
        if (has_documents) {
            out += ',';
            const auto it = corpus.document_totals().find(cell.year);
            out += std::to_string(it == corpus.document_totals().end() ? 0 : it->second);
        }
        out += '\n';
    }
    return out;
}

// Per-year sum of occurrence counts. Years with no cells are absent, not zero.
inline YearSeries occurrence_totals(const FieldCorpus& corpus) {
    std::vector<YearPoint> points;
    for (const auto& cell : corpus.cells()) {
        if (!points.empty() && points.back().year == cell.year) {
            points.back().value += static_cast<double>(cell.count);
        } else {
            points.push_back(YearPoint{cell.year, static_cast<double>(cell.count)});
        }
    }
    return YearSeries(std::move(points));
}

// The series growth models are fitted on. Document totals take precedence over
// occurrence sums; occurrence_proxy records the fallback for reports.
struct TrendSeries {
    YearSeries series;
    bool occurrence_proxy = false;
};

inline TrendSeries trend_series(const FieldCorpus& corpus) {
    if (!corpus.document_totals().empty()) {
        std::vector<YearPoint> points;
        points.reserve(corpus.document_totals().size());
        for (const auto& [year, documents] : corpus.document_totals())
            points.push_back(YearPoint{year, static_cast<double>(documents)});
        return TrendSeries{YearSeries(std::move(points)), false};
    }
    return TrendSeries{occurrence_totals(corpus), true};
}

}  // namespace fieldtrends
