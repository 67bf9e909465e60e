#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fieldtrends/corpus.hpp"
#include "fieldtrends/errors.hpp"
#include "fieldtrends/metrics.hpp"
#include "fieldtrends/regress.hpp"

namespace fieldtrends {

// Knobs of the three law detectors. The laws are qualitative; every cutoff
// used to operationalize them lives here and is echoed into reports.
struct LawConfig {
    double threshold = 0.8;          // concentration share the covering set must reach
    int size_band_max = 6;           // covering-set size that still counts as "few"
    int origin_window_years = 1;     // nonzero years that define the origin set
    int top_k = 3;                   // rank cutoff for persistence and emergence
    double persistence_min = 0.75;   // fraction of years a critical discipline must rank
    double trend_alpha = 0.05;       // two-sided significance level for weight trends
    int emergence_final_window = 5;  // years over which final mean weights are taken
};

enum class TrendDirection { rising, falling, flat };

inline std::string_view trend_direction_name(TrendDirection direction) {
    switch (direction) {
        case TrendDirection::rising: return "rising";
        case TrendDirection::falling: return "falling";
        case TrendDirection::flat: return "flat";
    }
    return "unknown";
}

// direction is rising/falling only when the slope is significant at alpha;
// everything else (including a degenerate flat series) reads as flat.
struct TrendResult {
    double slope = 0.0;
    double r2 = 0.0;
    bool significant = false;
    TrendDirection direction = TrendDirection::flat;
};

struct Law1Finding {
    CoveringSet covering_set;
    int size = 0;
    bool pass = false;  // size <= size_band_max
};

struct Law2Finding {
    std::vector<std::string> origin;    // lexicographic
    std::vector<std::string> critical;  // origin plus emergent drivers, lexicographic
    double persistence = 0.0;           // fraction of nonzero years with a critical top-k rank
    bool pass = false;                  // persistence >= persistence_min
};

struct Law3Finding {
    std::vector<std::string> emergent;          // final-window mean descending
    std::vector<std::string> declining_native;  // lexicographic
    bool pass = false;                          // emergent non-empty
};

// A detector result or the error that prevented it.
template <typename T>
struct Outcome {
    std::optional<T> value;
    std::string error;

    bool ok() const noexcept { return value.has_value(); }
};

struct LawReport {
    std::string field_name;
    Outcome<BestFit> trend;
    Outcome<Law1Finding> law1;
    Outcome<Law2Finding> law2;
    Outcome<Law3Finding> law3;
    bool occurrence_proxy = false;
    LawConfig config;
};

// Disciplines with a positive count inside the first `window` nonzero-total
// years. All-zero leading years are skipped, not counted against the window.
inline std::set<std::string> origin_disciplines(const FieldCorpus& corpus, int window) {
    if (window < 1) throw std::invalid_argument("origin window must be >= 1");

    std::map<int, std::int64_t> totals;
    for (const auto& cell : corpus.cells()) totals[cell.year] += cell.count;

    std::set<int> window_years;
    for (const auto& [year, total] : totals) {
        if (total <= 0) continue;
        window_years.insert(year);
        if (static_cast<int>(window_years.size()) == window) break;
    }

    std::set<std::string> origin;
    for (const auto& cell : corpus.cells()) {
        if (cell.count > 0 && window_years.count(cell.year)) origin.insert(cell.discipline);
    }
    return origin;
}

inline TrendResult weight_trend(const YearSeries& weights, double alpha) {
    const FitResult line = fit(ModelKind::Linear, weights);
    TrendResult trend;
    trend.slope = line.b;
    trend.r2 = line.r2;
    trend.significant = !line.degenerate && line.p_value < alpha;
    if (trend.significant && trend.slope > 0.0) {
        trend.direction = TrendDirection::rising;
    } else if (trend.significant && trend.slope < 0.0) {
        trend.direction = TrendDirection::falling;
    } else {
        trend.direction = TrendDirection::flat;
    }
    return trend;
}

inline Law1Finding detect_law1(const FieldCorpus& corpus, const LawConfig& cfg) {
    if (cfg.size_band_max < 1) throw std::invalid_argument("size_band_max must be >= 1");
    Law1Finding finding;
    finding.covering_set = minimal_covering_set(aggregate_shares(corpus), cfg.threshold);
    finding.size = static_cast<int>(finding.covering_set.members.size());
    finding.pass = finding.size <= cfg.size_band_max;
    return finding;
}

namespace detail {

// Per-discipline weight series over the nonzero-total years, zero-filled where
// a discipline is absent. Keyed over every discipline the corpus mentions.
inline std::map<std::string, YearSeries> zero_filled_weight_series(const FieldCorpus& corpus,
                                                                   const WeightMatrix& matrix) {
    std::set<std::string> universe;
    for (const auto& cell : corpus.cells()) universe.insert(cell.discipline);

    std::map<std::string, YearSeries> series;
    for (const auto& discipline : universe) {
        std::vector<YearPoint> points;
        points.reserve(matrix.size());
        for (const auto& [year, weights] : matrix) {
            const auto it = weights.find(discipline);
            points.push_back(YearPoint{year, it == weights.end() ? 0.0 : it->second});
        }
        series.emplace(discipline, YearSeries(std::move(points)));
    }
    return series;
}

inline std::set<std::string> top_k_names(const std::map<std::string, double>& values, int k) {
    std::set<std::string> top;
    for (const auto& [name, value] : by_descending_share(values)) {
        if (static_cast<int>(top.size()) >= k) break;
        top.insert(name);
    }
    return top;
}

}  // namespace detail

inline Law3Finding detect_law3(const FieldCorpus& corpus, const LawConfig& cfg) {
    if (cfg.top_k < 1) throw std::invalid_argument("top_k must be >= 1");
    if (cfg.emergence_final_window < 1)
        throw std::invalid_argument("emergence_final_window must be >= 1");

    const WeightMatrix matrix = weight_matrix(corpus);
    const int n_years = static_cast<int>(matrix.size());
    if (n_years < 6)
        raise(Errc::InsufficientData, "need at least 6 years with nonzero totals, have " +
                                          std::to_string(n_years));

    const auto series = detail::zero_filled_weight_series(corpus, matrix);
    const auto origin = origin_disciplines(corpus, cfg.origin_window_years);

    const int window = std::min(cfg.emergence_final_window, n_years);
    std::map<std::string, double> final_mean;
    for (const auto& [discipline, weights] : series) {
        double sum = 0.0;
        const auto& points = weights.points();
        for (std::size_t i = points.size() - window; i < points.size(); ++i)
            sum += points[i].value;
        final_mean[discipline] = sum / window;
    }
    const auto top = detail::top_k_names(final_mean, cfg.top_k);

    Law3Finding finding;
    std::vector<std::pair<std::string, TrendDirection>> directions;
    for (const auto& [discipline, weights] : series)
        directions.emplace_back(discipline, weight_trend(weights, cfg.trend_alpha).direction);

    for (const auto& [discipline, value] : detail::by_descending_share(final_mean)) {
        if (origin.count(discipline) || !top.count(discipline)) continue;
        const auto it = std::find_if(directions.begin(), directions.end(),
                                     [&](const auto& d) { return d.first == discipline; });
        if (it->second == TrendDirection::rising) finding.emergent.push_back(discipline);
    }
    for (const auto& [discipline, direction] : directions) {
        if (origin.count(discipline) && direction == TrendDirection::falling)
            finding.declining_native.push_back(discipline);
    }
    finding.pass = !finding.emergent.empty();
    return finding;
}

inline Law2Finding detect_law2(const FieldCorpus& corpus, const LawConfig& cfg) {
    if (cfg.top_k < 1) throw std::invalid_argument("top_k must be >= 1");
    if (!(cfg.persistence_min >= 0.0 && cfg.persistence_min <= 1.0))
        throw std::invalid_argument("persistence_min must be in [0,1]");

    const WeightMatrix matrix = weight_matrix(corpus);
    const int n_years = static_cast<int>(matrix.size());
    if (n_years < 2)
        raise(Errc::InsufficientData, "need at least 2 years with nonzero totals, have " +
                                          std::to_string(n_years));

    Law2Finding finding;
    const auto origin = origin_disciplines(corpus, cfg.origin_window_years);
    std::set<std::string> critical(origin.begin(), origin.end());
    // The critical discipline may also be an emergent driver; when the
    // emergence detector cannot run (short history) the origin set stands alone.
    try {
        for (const auto& name : detect_law3(corpus, cfg).emergent) critical.insert(name);
    } catch (const Error&) {
    }

    int hits = 0;
    for (const auto& [year, weights] : matrix) {
        const auto top = detail::top_k_names(weights, cfg.top_k);
        const bool hit = std::any_of(critical.begin(), critical.end(),
                                     [&](const std::string& d) { return top.count(d) > 0; });
        if (hit) ++hits;
    }

    finding.origin.assign(origin.begin(), origin.end());
    finding.critical.assign(critical.begin(), critical.end());
    finding.persistence = static_cast<double>(hits) / n_years;
    finding.pass = finding.persistence >= cfg.persistence_min;
    return finding;
}

// Runs the trend fit and all three detectors, recording each failure as a
// per-part error marker instead of failing the whole report.
inline LawReport evaluate_field(const FieldCorpus& corpus, const LawConfig& cfg = {}) {
    LawReport report;
    report.field_name = corpus.field_name();
    report.config = cfg;

    const TrendSeries trend = trend_series(corpus);
    report.occurrence_proxy = trend.occurrence_proxy;
    try {
        report.trend.value = best_fit(trend.series);
    } catch (const Error& e) {
        report.trend.error = e.what();
    }
    try {
        report.law1.value = detect_law1(corpus, cfg);
    } catch (const Error& e) {
        report.law1.error = e.what();
    }
    try {
        report.law2.value = detect_law2(corpus, cfg);
    } catch (const Error& e) {
        report.law2.error = e.what();
    }
    try {
        report.law3.value = detect_law3(corpus, cfg);
    } catch (const Error& e) {
        report.law3.error = e.what();
    }
    return report;
}

}  // namespace fieldtrends
