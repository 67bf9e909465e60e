#pragma once

#include <string>
#include <string_view>

#include "fieldtrends/jsonio.hpp"
#include "fieldtrends/laws.hpp"
#include "fieldtrends/metrics.hpp"
#include "fieldtrends/regress.hpp"
#include "fieldtrends/version.hpp"

namespace fieldtrends {

inline Json fit_result_json(const FitResult& fit) {
    Json out = Json::object();
    out["kind"] = model_kind_name(fit.kind);
    out["a"] = fit.a;
    out["b"] = fit.b;
    out["se_a"] = fit.se_a;
    out["se_b"] = fit.se_b;
    out["std_coef"] = fit.std_coef;
    out["r2"] = fit.r2;
    out["f_stat"] = fit.f_stat;
    out["p_sig"] = significance_name(fit.p_sig);
    out["p_value"] = fit.p_value;
    out["n_used"] = fit.n_used;
    out["n_dropped"] = fit.n_dropped;
    out["estimation_scale"] =
        fit.estimation_scale == EstimationScale::log ? "log" : "original";
    out["degenerate"] = fit.degenerate;
    return out;
}

inline Json covering_set_json(const CoveringSet& set) {
    Json members = Json::array();
    for (const auto& name : set.members) members.push_back(name);
    Json out = Json::object();
    out["members"] = std::move(members);
    out["cumulative_share"] = set.cumulative_share;
    out["threshold"] = set.threshold;
    return out;
}

inline Json law_config_json(const LawConfig& cfg) {
    Json out = Json::object();
    out["threshold"] = cfg.threshold;
    out["size_band_max"] = cfg.size_band_max;
    out["origin_window_years"] = cfg.origin_window_years;
    out["top_k"] = cfg.top_k;
    out["persistence_min"] = cfg.persistence_min;
    out["trend_alpha"] = cfg.trend_alpha;
    out["emergence_final_window"] = cfg.emergence_final_window;
    return out;
}

namespace detail {

inline Json string_list_json(const std::vector<std::string>& names) {
    Json out = Json::array();
    for (const auto& name : names) out.push_back(name);
    return out;
}

template <typename T, typename Fn>
Json outcome_json(const Outcome<T>& outcome, Fn&& to_json) {
    if (!outcome.ok()) {
        Json out = Json::object();
        out["error"] = outcome.error;
        return out;
    }
    return to_json(*outcome.value);
}

}  // namespace detail

inline Json laws_json(const LawReport& report) {
    Json laws = Json::object();
    laws["law1"] = detail::outcome_json(report.law1, [](const Law1Finding& f) {
        Json out = Json::object();
        out["covering_set"] = covering_set_json(f.covering_set);
        out["size"] = f.size;
        out["pass"] = f.pass;
        return out;
    });
    laws["law2"] = detail::outcome_json(report.law2, [](const Law2Finding& f) {
        Json out = Json::object();
        out["origin"] = detail::string_list_json(f.origin);
        out["critical"] = detail::string_list_json(f.critical);
        out["persistence"] = f.persistence;
        out["pass"] = f.pass;
        return out;
    });
    laws["law3"] = detail::outcome_json(report.law3, [](const Law3Finding& f) {
        Json out = Json::object();
        out["emergent"] = detail::string_list_json(f.emergent);
        out["declining_native"] = detail::string_list_json(f.declining_native);
        out["pass"] = f.pass;
        return out;
    });
    return laws;
}

inline Json trend_block_json(const Outcome<BestFit>& trend) {
    return detail::outcome_json(trend, [](const BestFit& best) {
        Json out = fit_result_json(best.fit);
        out["sse_original"] = best.sse_original;
        return out;
    });
}

inline Json law_report_json(const LawReport& report) {
    Json out = Json::object();
    out["field_name"] = report.field_name;
    out["config"] = law_config_json(report.config);
    out["laws"] = laws_json(report);
    out["trend"] = trend_block_json(report.trend);
    out["occurrence_proxy"] = report.occurrence_proxy;
    return out;
}

inline Json weights_json(const WeightMatrix& matrix) {
    Json out = Json::object();
    for (const auto& [year, weights] : matrix) {
        Json year_obj = Json::object();
        for (const auto& [discipline, weight] : weights) year_obj[discipline] = weight;
        out[std::to_string(year)] = std::move(year_obj);
    }
    return out;
}

// Long-format weights table, 12 decimal places (absolute error < 5e-13).
inline std::string weights_csv(const WeightMatrix& matrix) {
    std::string out = "year,discipline,weight\n";
    for (const auto& [year, weights] : matrix) {
        for (const auto& [discipline, weight] : weights) {
            out += std::to_string(year);
            out += ',';
            out += discipline;
            out += ',';
            out += format_fixed(weight, 12);
            out += '\n';
        }
    }
    return out;
}

// The full report document. input_digest ties the document to the exact input
// bytes, so reruns on equal inputs are byte-identical end to end.
inline Json report_document(const LawReport& report, const WeightMatrix& weights,
                            std::string_view input_digest) {
    Json out = Json::object();
    out["schema_version"] = kSchemaVersion;
    out["field_name"] = report.field_name;
    out["config"] = law_config_json(report.config);
    out["trend"] = trend_block_json(report.trend);
    out["laws"] = laws_json(report);
    out["weights"] = weights_json(weights);

    Json provenance = Json::object();
    provenance["input_digest"] = input_digest;
    provenance["occurrence_proxy"] = report.occurrence_proxy;
    provenance["tool_version"] = kToolVersion;
    out["provenance"] = std::move(provenance);
    return out;
}

}  // namespace fieldtrends
