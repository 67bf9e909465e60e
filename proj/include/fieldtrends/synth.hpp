#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fieldtrends/corpus.hpp"
#include "fieldtrends/errors.hpp"
#include "fieldtrends/regress.hpp"
#include "fieldtrends/rng.hpp"

namespace fieldtrends {

// Parameters of the synthetic-corpus generator. Totals follow the trend model
// (a, b, kind) over calendar years; the discipline mixture interpolates
// logistically from mixture_start to mixture_end around transition_midpoint.
struct SynthSpec {
    std::string field_name = "synthetic";
    ModelKind kind = ModelKind::Growth;
    double a = 0.0;
    double b = 0.0;
    int first_year = 0;
    int last_year = 0;
    double noise_sd_log = 0.0;
    std::map<std::string, double> mixture_start;
    std::map<std::string, double> mixture_end;  // empty = same as mixture_start
    double transition_midpoint = 0.0;
    double transition_rate = 0.0;
    std::uint64_t seed = 0;
};

namespace detail {

inline void check_mixture(const std::map<std::string, double>& mixture, const char* label) {
    double sum = 0.0;
    for (const auto& [discipline, weight] : mixture) {
        if (trim(discipline).empty() || trim(discipline).size() != discipline.size())
            raise(Errc::InvalidSpec, std::string(label) + " has an untrimmed or empty name");
        if (!(weight >= 0.0))
            raise(Errc::InvalidSpec, std::string(label) + "." + discipline + " is negative");
        sum += weight;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        raise(Errc::InvalidSpec,
              std::string(label) + " sums to " + std::to_string(sum) + ", expected 1");
}

}  // namespace detail

inline void validate_spec(const SynthSpec& spec) {
    if (spec.first_year > spec.last_year)
        raise(Errc::InvalidSpec, "years.first " + std::to_string(spec.first_year) +
                                     " exceeds years.last " + std::to_string(spec.last_year));
    if (!std::isfinite(spec.a) || !std::isfinite(spec.b))
        raise(Errc::InvalidSpec, "coefficients must be finite");
    if (!(spec.noise_sd_log >= 0.0)) raise(Errc::InvalidSpec, "noise_sd_log must be >= 0");
    if (!std::isfinite(spec.transition_midpoint) || !std::isfinite(spec.transition_rate))
        raise(Errc::InvalidSpec, "transition parameters must be finite");
    if (spec.mixture_start.empty()) raise(Errc::InvalidSpec, "mixture_start is empty");
    detail::check_mixture(spec.mixture_start, "mixture_start");
    if (!spec.mixture_end.empty()) detail::check_mixture(spec.mixture_end, "mixture_end");
}

// w(t) = start + sigma(rate (t - midpoint)) (end - start), renormalized.
// Disciplines named in only one endpoint carry weight 0 in the other.
inline std::map<std::string, double> mixture_at(const SynthSpec& spec, int t) {
    if (t < spec.first_year || t > spec.last_year)
        raise(Errc::InvalidSpec, "year " + std::to_string(t) + " outside spec years");
    const auto& end = spec.mixture_end.empty() ? spec.mixture_start : spec.mixture_end;
    const double sigma =
        1.0 / (1.0 + std::exp(-spec.transition_rate * (t - spec.transition_midpoint)));

    std::set<std::string> names;
    for (const auto& [name, weight] : spec.mixture_start) names.insert(name);
    for (const auto& [name, weight] : end) names.insert(name);

    std::map<std::string, double> mixture;
    double sum = 0.0;
    for (const auto& name : names) {
        const auto s = spec.mixture_start.find(name);
        const auto e = end.find(name);
        const double ws = s == spec.mixture_start.end() ? 0.0 : s->second;
        const double we = e == end.end() ? 0.0 : e->second;
        const double w = ws + sigma * (we - ws);
        mixture[name] = w;
        sum += w;
    }
    if (!(sum > 0.0)) raise(Errc::InvalidSpec, "mixture sums to zero at year " + std::to_string(t));
    for (auto& [name, weight] : mixture) weight /= sum;
    return mixture;
}

namespace detail {

inline double ideal_total(const SynthSpec& spec, int t) {
    switch (spec.kind) {
        case ModelKind::Linear: return spec.a + spec.b * t;
        case ModelKind::Growth: return std::exp(spec.a + spec.b * t);
        case ModelKind::Exponential: return spec.a * std::exp(spec.b * t);
    }
    return 0.0;
}

}  // namespace detail

// Deterministic generator. One SplitMix64 stream seeded by spec.seed; per year
// in ascending order the stream serves, in this exact layout:
//   - one Normal(0,1) pair of uniforms, only when noise_sd_log > 0;
//   - one uniform per binomial split (mixture size minus one), only when the
//     rounded total is positive.
// Totals are rounded half-to-even; years whose total rounds to <= 0 are left
// out of the corpus entirely. Only positive cell counts are emitted.
inline FieldCorpus generate_corpus(const SynthSpec& spec) {
    validate_spec(spec);

    SplitMix64 rng(spec.seed);
    std::vector<CorpusCell> cells;
    std::map<int, std::int64_t> document_totals;
    for (int t = spec.first_year; t <= spec.last_year; ++t) {
        double m = detail::ideal_total(spec, t);
        if (spec.noise_sd_log > 0.0) m *= std::exp(rng.normal() * spec.noise_sd_log);
        if (!std::isfinite(m) || m >= 9.0e18)
            raise(Errc::InvalidSpec, "ideal total at year " + std::to_string(t) +
                                         " is not representable");
        std::int64_t total = m <= 0.0 ? 0 : std::llrint(m);
        if (total <= 0) continue;

        document_totals[t] = total;
        const auto mixture = mixture_at(spec, t);

        // Multinomial allocation as sequential conditional binomials in
        // lexicographic discipline order; the last discipline takes the
        // remainder, so counts always sum to the total exactly.
        std::int64_t remaining = total;
        double weight_left = 0.0;
        for (const auto& [name, weight] : mixture) weight_left += weight;
        std::size_t index = 0;
        for (const auto& [name, weight] : mixture) {
            std::int64_t k;
            if (index + 1 == mixture.size()) {
                k = remaining;
            } else {
                double p = weight_left > 0.0 ? weight / weight_left : 0.0;
                if (p < 0.0) p = 0.0;
                if (p > 1.0) p = 1.0;
                k = binomial_draw(rng, remaining, p);
            }
            if (k > 0) cells.push_back(CorpusCell{t, name, k});
            remaining -= k;
            weight_left -= weight;
            ++index;
        }
    }
    if (cells.empty())
        raise(Errc::EmptyCorpus, "spec generates no positive totals in " +
                                     std::to_string(spec.first_year) + ".." +
                                     std::to_string(spec.last_year));
    return FieldCorpus(spec.field_name, std::move(cells), std::move(document_totals));
}

}  // namespace fieldtrends
