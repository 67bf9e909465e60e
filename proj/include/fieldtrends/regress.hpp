#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "fieldtrends/corpus.hpp"
#include "fieldtrends/errors.hpp"
#include "fieldtrends/stats.hpp"

namespace fieldtrends {

enum class ModelKind { Linear, Growth, Exponential };

inline std::string_view model_kind_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::Linear: return "linear";
        case ModelKind::Growth: return "growth";
        case ModelKind::Exponential: return "exponential";
    }
    return "unknown";
}

enum class EstimationScale { original, log };

enum class Significance { below_0_001, below_0_01, below_0_05, not_significant };

inline std::string_view significance_name(Significance sig) {
    switch (sig) {
        case Significance::below_0_001: return "<0.001";
        case Significance::below_0_01: return "<0.01";
        case Significance::below_0_05: return "<0.05";
        case Significance::not_significant: return "n.s.";
    }
    return "unknown";
}

// One estimated trend model.
//
// Linear:       y = a + b t         (estimation on the original scale)
// Growth:       y = e^(a + b t)     (OLS of ln y on t; a is the intercept)
// Exponential:  y = a e^(b t)       (same log-scale OLS; a = exp(intercept),
//                                    se_a stays on the intercept/log scale)
//
// t is the calendar year. Standard errors, r2, std_coef and f_stat all live on
// the estimation scale. A series whose transformed y has zero variance yields
// degenerate=true with b=0 and r2/f_stat as NaN markers instead of an error.
struct FitResult {
    ModelKind kind = ModelKind::Linear;
    double a = 0.0;
    double b = 0.0;
    double se_a = 0.0;
    double se_b = 0.0;
    double std_coef = 0.0;
    double r2 = 0.0;
    double f_stat = 0.0;
    Significance p_sig = Significance::not_significant;
    double p_value = 1.0;
    int n_used = 0;
    int n_dropped = 0;
    EstimationScale estimation_scale = EstimationScale::original;
    bool degenerate = false;
};

namespace detail {

inline Significance significance_bucket(double p) {
    if (p < 0.001) return Significance::below_0_001;
    if (p < 0.01) return Significance::below_0_01;
    if (p < 0.05) return Significance::below_0_05;
    return Significance::not_significant;
}

}  // namespace detail

// OLS of the (possibly log-transformed) response on calendar year. Internally
// t is centered at its mean; the reported intercept is transformed back to the
// t=0 origin, so magnitudes match the calendar-year convention.
inline FitResult fit(ModelKind kind, const YearSeries& series) {
    const bool log_scale = kind != ModelKind::Linear;

    std::vector<double> t, z;
    int n_dropped = 0;
    for (const auto& point : series.points()) {
        if (log_scale && !(point.value > 0.0)) {
            ++n_dropped;
            continue;
        }
        t.push_back(static_cast<double>(point.year));
        z.push_back(log_scale ? std::log(point.value) : point.value);
    }
    const int n = static_cast<int>(t.size());
    if (n < 3)
        raise(Errc::InsufficientData, "need at least 3 usable points, have " +
                                          std::to_string(n) + " (" + std::to_string(n_dropped) +
                                          " dropped)");

    double tbar = 0.0, zbar = 0.0;
    for (int i = 0; i < n; ++i) {
        tbar += t[i];
        zbar += z[i];
    }
    tbar /= n;
    zbar /= n;

    double sxx = 0.0, sxz = 0.0, szz = 0.0;
    for (int i = 0; i < n; ++i) {
        const double dt = t[i] - tbar;
        const double dz = z[i] - zbar;
        sxx += dt * dt;
        sxz += dt * dz;
        szz += dz * dz;
    }
    if (sxx <= 0.0) raise(Errc::DegenerateSeries, "zero variance in t");

    FitResult result;
    result.kind = kind;
    result.n_used = n;
    result.n_dropped = n_dropped;
    result.estimation_scale = log_scale ? EstimationScale::log : EstimationScale::original;

    if (szz <= 0.0) {
        // Flat response: slope is exactly 0, the variance-ratio statistics are
        // 0/0 and stay undefined.
        result.degenerate = true;
        result.a = kind == ModelKind::Exponential ? std::exp(zbar) : zbar;
        result.b = 0.0;
        result.se_a = 0.0;
        result.se_b = 0.0;
        result.std_coef = std::nan("");
        result.r2 = std::nan("");
        result.f_stat = std::nan("");
        result.p_value = std::nan("");
        result.p_sig = Significance::not_significant;
        return result;
    }

    const double b = sxz / sxx;
    const double a_origin = zbar - b * tbar;
    double sse = szz - b * sxz;
    if (sse < 0.0) sse = 0.0;
    const double s2 = sse / (n - 2);

    result.b = b;
    result.a = kind == ModelKind::Exponential ? std::exp(a_origin) : a_origin;
    result.se_b = std::sqrt(s2 / sxx);
    result.se_a = std::sqrt(s2 * (1.0 / n + tbar * tbar / sxx));
    result.std_coef = b * std::sqrt(sxx / szz);

    double r2 = 1.0 - sse / szz;
    if (r2 < 0.0) r2 = 0.0;
    if (r2 > 1.0) r2 = 1.0;
    result.r2 = r2;

    // On an exact fit se_b is 0 and these become inf / 0; both are meaningful
    // limits and serialize as such.
    const double t_stat = result.b / result.se_b;
    result.f_stat = t_stat * t_stat;
    result.p_value = student_t_two_sided_p(t_stat, n - 2);
    result.p_sig = detail::significance_bucket(result.p_value);
    return result;
}

inline double predict(const FitResult& fit, double t) {
    if (fit.degenerate) raise(Errc::DegenerateFit, "cannot predict from a degenerate fit");
    switch (fit.kind) {
        case ModelKind::Linear: return fit.a + fit.b * t;
        case ModelKind::Growth: return std::exp(fit.a + fit.b * t);
        case ModelKind::Exponential: return fit.a * std::exp(fit.b * t);
    }
    raise(Errc::DegenerateFit, "unknown model kind");
}

// Sum of squared errors on the original scale over every point of the series,
// back-transforming log-model predictions. Points a log model dropped still
// count against it here.
inline double original_scale_sse(const FitResult& fit, const YearSeries& series) {
    double sse = 0.0;
    for (const auto& point : series.points()) {
        const double err = point.value - predict(fit, static_cast<double>(point.year));
        sse += err * err;
    }
    return sse;
}

struct BestFit {
    ModelKind kind = ModelKind::Linear;
    FitResult fit;
    double sse_original = 0.0;
};

// Fits all three kinds and returns the one with the smallest original-scale
// SSE. Kinds that error out, come back degenerate, or produce a non-finite
// SSE (overflow in back-transformation) are excluded. Near-ties within a 1e-9
// relative band resolve in the order Linear < Growth < Exponential.
inline BestFit best_fit(const YearSeries& series) {
    constexpr ModelKind kinds[] = {ModelKind::Linear, ModelKind::Growth,
                                   ModelKind::Exponential};
    std::vector<BestFit> candidates;
    for (const ModelKind kind : kinds) {
        try {
            FitResult result = fit(kind, series);
            if (result.degenerate) continue;
            const double sse = original_scale_sse(result, series);
            if (std::isnan(sse)) continue;
            candidates.push_back(BestFit{kind, result, sse});
        } catch (const Error&) {
        }
    }
    if (candidates.empty()) raise(Errc::NoModelFits, "no model could be fitted");

    double min_sse = candidates.front().sse_original;
    for (const auto& candidate : candidates) min_sse = std::min(min_sse, candidate.sse_original);
    for (const auto& candidate : candidates) {
        if (candidate.sse_original <= min_sse * (1.0 + 1e-9) + 1e-12) return candidate;
    }
    return candidates.front();
}

// Inverts F = r2 (n-2) / (1 - r2), the variance-ratio identity of simple
// regression, to recover the fitted sample size from published statistics.
inline double effective_sample_size(double r2, double f_stat) {
    if (!(r2 > 0.0 && r2 < 1.0))
        raise(Errc::OutOfDomain, "r2 must be in (0,1)");
    if (!(f_stat > 0.0)) raise(Errc::OutOfDomain, "f_stat must be positive");
    return 2.0 + f_stat * (1.0 - r2) / r2;
}

}  // namespace fieldtrends
