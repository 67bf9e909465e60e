#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fieldtrends/corpus.hpp"
#include "fieldtrends/errors.hpp"

namespace fieldtrends {

// year -> (discipline -> weight). A year is present only if its occurrence
// total is positive; within a year the weights sum to 1 (within 1e-12).
using WeightMatrix = std::map<int, std::map<std::string, double>>;

enum class ShareBasis { aggregate_occurrences, single_year };

inline std::string_view share_basis_name(ShareBasis basis) {
    return basis == ShareBasis::aggregate_occurrences ? "aggregate_occurrences" : "single_year";
}

// Normalized production shares. Shares are >= 0 and sum to 1 (within 1e-12).
struct ShareVector {
    std::map<std::string, double> shares;
    ShareBasis basis = ShareBasis::aggregate_occurrences;
};

// Smallest prefix of the descending-share ordering that reaches the threshold.
// Members keep that ordering (share descending, name ascending on ties).
struct CoveringSet {
    std::vector<std::string> members;
    double cumulative_share = 0.0;
    double threshold = 0.0;
};

// Slack for the ">= threshold" stopping rule. Cumulative sums like 0.5 + 0.3
// land one ulp under 0.8 in binary floating point; the comparison must still
// treat that as covered.
inline constexpr double kCoverageEps = 1e-9;

inline WeightMatrix weight_matrix(const FieldCorpus& corpus) {
    std::map<int, std::int64_t> totals;
    for (const auto& cell : corpus.cells()) totals[cell.year] += cell.count;

    WeightMatrix matrix;
    for (const auto& cell : corpus.cells()) {
        const auto total = totals[cell.year];
        if (total <= 0) continue;
        matrix[cell.year][cell.discipline] =
            static_cast<double>(cell.count) / static_cast<double>(total);
    }
    return matrix;
}

// share(d) = sum_t count(d,t) / grand total over the range. Disciplines whose
// cells all carry count 0 inside the range still appear, with share 0.
inline ShareVector aggregate_shares(const FieldCorpus& corpus,
                                    std::optional<std::pair<int, int>> year_range = {}) {
    const int first = year_range ? year_range->first : corpus.min_year();
    const int last = year_range ? year_range->second : corpus.max_year();

    std::map<std::string, std::int64_t> per_discipline;
    std::int64_t grand_total = 0;
    for (const auto& cell : corpus.cells()) {
        if (cell.year < first || cell.year > last) continue;
        per_discipline[cell.discipline] += cell.count;
        grand_total += cell.count;
    }
    if (per_discipline.empty())
        raise(Errc::EmptyRange, "no cells in years [" + std::to_string(first) + "," +
                                    std::to_string(last) + "]");
    if (grand_total <= 0)
        raise(Errc::EmptyRange, "total occurrences in years [" + std::to_string(first) + "," +
                                    std::to_string(last) + "] are zero");

    ShareVector result;
    result.basis = ShareBasis::aggregate_occurrences;
    for (const auto& [discipline, sum] : per_discipline)
        result.shares[discipline] =
            static_cast<double>(sum) / static_cast<double>(grand_total);
    return result;
}

// One year of the weight matrix viewed as a ShareVector.
inline ShareVector year_shares(const WeightMatrix& matrix, int year) {
    const auto it = matrix.find(year);
    if (it == matrix.end())
        raise(Errc::EmptyRange, "year " + std::to_string(year) + " has no weights");
    return ShareVector{it->second, ShareBasis::single_year};
}

namespace detail {

// Descending share, ascending name on ties. The single ordering used by the
// covering set and by every top-k ranking.
inline std::vector<std::pair<std::string, double>> by_descending_share(
    const std::map<std::string, double>& shares) {
    std::vector<std::pair<std::string, double>> ordered(shares.begin(), shares.end());
    std::stable_sort(ordered.begin(), ordered.end(), [](const auto& l, const auto& r) {
        if (l.second != r.second) return l.second > r.second;
        return l.first < r.first;
    });
    return ordered;
}

}  // namespace detail

inline CoveringSet minimal_covering_set(const ShareVector& shares, double threshold) {
    if (!(threshold > 0.0 && threshold <= 1.0))
        raise(Errc::InvalidThreshold, "threshold must be in (0,1]");

    CoveringSet result;
    result.threshold = threshold;
    for (const auto& [discipline, share] : detail::by_descending_share(shares.shares)) {
        result.members.push_back(discipline);
        result.cumulative_share += share;
        if (result.cumulative_share + kCoverageEps >= threshold) return result;
    }
    // Valid share vectors sum to 1 >= threshold - eps, so the loop always
    // returns; reaching here means the input violated the sum invariant.
    raise(Errc::InvalidThreshold,
          "shares sum to " + std::to_string(result.cumulative_share) + ", below threshold");
}

}  // namespace fieldtrends
