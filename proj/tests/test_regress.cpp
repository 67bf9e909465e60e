#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "fieldtrends/regress.hpp"
#include "fieldtrends/stats.hpp"
#include "oracles.hpp"

using namespace fieldtrends;

namespace {

YearSeries series_from(const std::vector<double>& values, int first_year = 2000) {
    std::vector<YearPoint> points;
    for (std::size_t i = 0; i < values.size(); ++i)
        points.push_back(YearPoint{first_year + static_cast<int>(i), values[i]});
    return YearSeries(std::move(points));
}

YearSeries model_series(ModelKind kind, double a, double b, int first_year, int n) {
    std::vector<YearPoint> points;
    for (int i = 0; i < n; ++i) {
        const double t = first_year + i;
        double y = 0.0;
        switch (kind) {
            case ModelKind::Linear: y = a + b * t; break;
            case ModelKind::Growth: y = std::exp(a + b * t); break;
            case ModelKind::Exponential: y = a * std::exp(b * t); break;
        }
        points.push_back(YearPoint{first_year + i, y});
    }
    return YearSeries(std::move(points));
}

double rel_err(double actual, double expected) {
    return std::abs(actual - expected) / std::abs(expected);
}

}  // namespace

TEST_CASE("exact linear data is recovered exactly") {
    std::vector<double> values;
    for (int t = 0; t < 10; ++t) values.push_back(3.0 + 2.0 * t);
    const auto result = fit(ModelKind::Linear, series_from(values, 0));
    CHECK(result.a == Catch::Approx(3.0).margin(1e-9));
    CHECK(result.b == Catch::Approx(2.0).margin(1e-12));
    CHECK(result.r2 == 1.0);
    CHECK(result.n_used == 10);
    CHECK(result.n_dropped == 0);
    CHECK(result.estimation_scale == EstimationScale::original);
    // a perfect fit's variance ratio diverges
    CHECK(std::isinf(result.f_stat));
    CHECK(result.p_sig == Significance::below_0_001);
}

TEST_CASE("noiseless growth series reproduces its generating coefficients") {
    // same shape as the published microbiome and evolutionary-robotics fits
    const struct {
        double a, b;
        int first, n;
    } cases[] = {{-1246.91, 0.62, 2002, 16}, {-317.31, 0.16, 1980, 38}};
    for (const auto& c : cases) {
        const auto result = fit(ModelKind::Growth, model_series(ModelKind::Growth, c.a, c.b, c.first, c.n));
        CHECK(rel_err(result.a, c.a) < 1e-8);
        CHECK(rel_err(result.b, c.b) < 1e-8);
        CHECK(result.r2 > 1.0 - 1e-9);
        CHECK(result.n_used == c.n);
        CHECK(result.estimation_scale == EstimationScale::log);
    }
}

TEST_CASE("noiseless recovery holds across random coefficients and kinds") {
    std::mt19937_64 rng(2201);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const auto kind = static_cast<ModelKind>(trial % 3);
        const int first = 1950 + static_cast<int>(rng() % 60);
        const int n = 5 + static_cast<int>(rng() % 30);
        double a = 0.0, b = 0.0;
        switch (kind) {
            case ModelKind::Linear:
                a = 20.0 + 180.0 * unit(rng);
                b = 2.0 * unit(rng) + 0.05;
                break;
            case ModelKind::Growth:
                b = 0.4 * unit(rng) + 0.01;
                a = 2.0 * unit(rng) - b * first;  // keeps exp() in range
                break;
            case ModelKind::Exponential:
                b = 0.3 * unit(rng) + 0.01;
                a = std::exp(2.0 * unit(rng) - b * first);
                break;
        }
        const auto result = fit(kind, model_series(kind, a, b, first, n));
        CHECK(rel_err(result.a, a) < 1e-8);
        CHECK(rel_err(result.b, b) < 1e-8);
    }
}

TEST_CASE("fit matches an uncentered long-double reference on noisy data") {
    std::mt19937_64 rng(2202);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 5 + static_cast<int>(rng() % 30);
        const int first = 1960 + static_cast<int>(rng() % 40);
        std::vector<double> t, y;
        std::vector<YearPoint> points;
        for (int i = 0; i < n; ++i) {
            const double value = 50.0 + 2.5 * i + 8.0 * noise(rng) + 60.0;
            t.push_back(first + i);
            y.push_back(value);
            points.push_back(YearPoint{first + i, value});
        }
        const auto result = fit(ModelKind::Linear, YearSeries(points));
        const auto ref = oracle::ols_reference(t, y);
        CHECK(rel_err(result.a, static_cast<double>(ref.a)) < 1e-9);
        CHECK(rel_err(result.b, static_cast<double>(ref.b)) < 1e-9);
        CHECK(rel_err(result.se_a, static_cast<double>(ref.se_a)) < 1e-8);
        CHECK(rel_err(result.se_b, static_cast<double>(ref.se_b)) < 1e-8);
        CHECK(std::abs(result.r2 - static_cast<double>(ref.r2)) < 1e-9);
        CHECK(rel_err(result.f_stat, static_cast<double>(ref.f)) < 1e-8);
    }
}

TEST_CASE("statistical identities hold on noisy fits") {
    std::mt19937_64 rng(2203);
    std::normal_distribution<double> noise(0.0, 0.3);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 6 + static_cast<int>(rng() % 35);
        std::vector<YearPoint> points;
        for (int i = 0; i < n; ++i)
            points.push_back(
                YearPoint{1980 + i, std::exp(0.5 + 0.08 * i + noise(rng))});
        const auto kind = trial % 2 == 0 ? ModelKind::Growth : ModelKind::Linear;
        const auto result = fit(kind, YearSeries(points));
        REQUIRE_FALSE(result.degenerate);
        if (result.r2 >= 1.0 || result.r2 <= 0.0) continue;

        const double t_stat = result.b / result.se_b;
        CHECK(rel_err(result.f_stat, t_stat * t_stat) < 1e-9);
        const double expected_std = (result.b < 0 ? -1.0 : 1.0) * std::sqrt(result.r2);
        CHECK(std::abs(result.std_coef - expected_std) < 1e-9);
        CHECK(result.r2 >= 0.0);
        CHECK(result.r2 <= 1.0);
        CHECK(std::abs(effective_sample_size(result.r2, result.f_stat) - result.n_used) < 1e-6);
    }
}

TEST_CASE("growth and exponential fits agree up to the intercept transform") {
    std::mt19937_64 rng(2204);
    std::normal_distribution<double> noise(0.0, 0.2);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<YearPoint> points;
        for (int i = 0; i < 20; ++i)
            points.push_back(YearPoint{1995 + i, std::exp(1.0 + 0.1 * i + noise(rng))});
        const YearSeries series(points);
        const auto growth = fit(ModelKind::Growth, series);
        const auto exponential = fit(ModelKind::Exponential, series);
        CHECK(rel_err(exponential.a, std::exp(growth.a)) < 1e-12);
        CHECK(exponential.b == growth.b);
        CHECK(exponential.se_a == growth.se_a);
        CHECK(exponential.se_b == growth.se_b);
        CHECK(exponential.r2 == growth.r2);
        CHECK(exponential.f_stat == growth.f_stat);
    }
}

TEST_CASE("non-positive values are dropped for log models") {
    const auto series = series_from({0.0, 5.0, 0.0, 7.0});
    try {
        fit(ModelKind::Growth, series);
        FAIL("expected InsufficientData");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::InsufficientData);
        CHECK(std::string(e.what()).find("2 dropped") != std::string::npos);
    }

    const auto enough = series_from({0.0, 5.0, 6.0, 7.5, 9.0});
    const auto result = fit(ModelKind::Growth, enough);
    CHECK(result.n_dropped == 1);
    CHECK(result.n_used == 4);
}

TEST_CASE("scaling the response shifts only the growth intercept") {
    std::mt19937_64 rng(2205);
    std::normal_distribution<double> noise(0.0, 0.25);
    std::vector<YearPoint> points, scaled;
    const double c = 12.5;
    for (int i = 0; i < 24; ++i) {
        const double y = std::exp(0.8 + 0.07 * i + noise(rng));
        points.push_back(YearPoint{1990 + i, y});
        scaled.push_back(YearPoint{1990 + i, c * y});
    }
    const auto base = fit(ModelKind::Growth, YearSeries(points));
    const auto shifted = fit(ModelKind::Growth, YearSeries(scaled));
    CHECK(std::abs(shifted.a - base.a - std::log(c)) < 1e-9);
    CHECK(std::abs(shifted.b - base.b) < 1e-9);
    CHECK(std::abs(shifted.r2 - base.r2) < 1e-9);
    CHECK(rel_err(shifted.f_stat, base.f_stat) < 1e-9);
    CHECK(std::abs(shifted.std_coef - base.std_coef) < 1e-9);
}

TEST_CASE("degenerate flat series is flagged, not an error") {
    const auto flat = fit(ModelKind::Linear, series_from({4.0, 4.0, 4.0, 4.0}));
    CHECK(flat.degenerate);
    CHECK(flat.b == 0.0);
    CHECK(flat.a == 4.0);
    CHECK(std::isnan(flat.r2));
    CHECK_THROWS_AS(predict(flat, 2010.0), Error);

    const auto flat_growth = fit(ModelKind::Growth, series_from({5.0, 5.0, 5.0}));
    CHECK(flat_growth.degenerate);
    CHECK(flat_growth.a == Catch::Approx(std::log(5.0)));
}

TEST_CASE("prediction evaluates the model forward") {
    FitResult growth;
    growth.kind = ModelKind::Growth;
    growth.a = -317.31;
    growth.b = 0.16;
    CHECK(std::abs(predict(growth, 2010.0) - 72.97) <= 0.01);

    FitResult linear;
    linear.kind = ModelKind::Linear;
    linear.a = 5.0;
    linear.b = 0.0;
    CHECK(predict(linear, 1600.0) == 5.0);
    CHECK(predict(linear, 2030.0) == 5.0);

    FitResult exponential;
    exponential.kind = ModelKind::Exponential;
    exponential.a = 2.0;
    exponential.b = 0.5;
    CHECK(predict(exponential, 0.0) == 2.0);
}

TEST_CASE("residual sum of squares is a local minimum") {
    std::mt19937_64 rng(2206);
    std::normal_distribution<double> noise(0.0, 2.0);
    std::vector<YearPoint> points;
    for (int i = 0; i < 25; ++i)
        points.push_back(YearPoint{1990 + i, 40.0 + 1.7 * i + noise(rng)});
    const YearSeries series(points);
    const auto result = fit(ModelKind::Linear, series);

    const auto sse_at = [&](double a, double b) {
        double sum = 0.0;
        for (const auto& p : series.points()) {
            const double e = p.value - (a + b * p.year);
            sum += e * e;
        }
        return sum;
    };
    const double best = sse_at(result.a, result.b);
    std::uniform_real_distribution<double> sign(-1.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double da = sign(rng) * 1e-3 * std::abs(result.a);
        const double db = sign(rng) * 1e-3 * std::abs(result.b);
        CHECK(best <= sse_at(result.a + da, result.b + db) + 1e-9);
    }
}

TEST_CASE("best fit ranks by original-scale error with a fixed tie order") {
    // exact exponential data: Growth and Exponential tie at zero error and the
    // tie resolves to Growth; Linear is strictly worse on the curved data
    const auto curved = model_series(ModelKind::Growth, -0.5, 0.12, 0, 18);
    const auto best_curved = best_fit(curved);
    CHECK(best_curved.kind == ModelKind::Growth);
    CHECK(best_curved.sse_original <= 1e-12);

    std::vector<double> line;
    for (int i = 0; i < 12; ++i) line.push_back(10.0 + 3.0 * i);
    CHECK(best_fit(series_from(line)).kind == ModelKind::Linear);

    // zeros leave fewer than 3 usable points for the log models
    const auto zeros = series_from({0.0, 0.0, 0.0, 4.0, 9.0});
    CHECK(best_fit(zeros).kind == ModelKind::Linear);

    CHECK_THROWS_AS(best_fit(series_from({3.0, 3.0, 3.0, 3.0})), Error);
}

TEST_CASE("effective sample size inverts the variance-ratio identity") {
    CHECK(std::abs(effective_sample_size(0.84, 123.27) - 25.48) <= 0.01);
    CHECK(effective_sample_size(0.5, 8.0) == Catch::Approx(10.0).margin(1e-12));
    CHECK_THROWS_AS(effective_sample_size(1.0, 10.0), Error);
    CHECK_THROWS_AS(effective_sample_size(0.0, 10.0), Error);
    CHECK_THROWS_AS(effective_sample_size(0.5, 0.0), Error);
    CHECK_THROWS_AS(effective_sample_size(std::nan(""), 10.0), Error);
}

TEST_CASE("student t tail probabilities match published values") {
    const struct {
        double t;
        int df;
        double p;
    } cases[] = {
        {2.144787, 14, 0.0499999710}, {4.586894, 10, 0.0009999998}, {2.0, 5, 0.1019394788},
        {1.0, 30, 0.3253086154},      {12.7062, 1, 0.0500000186},   {0.5, 3, 0.6514479648},
    };
    for (const auto& c : cases) {
        CHECK(std::abs(student_t_two_sided_p(c.t, c.df) - c.p) < 1e-8);
        CHECK(std::abs(student_t_two_sided_p(-c.t, c.df) - c.p) < 1e-8);
    }
    CHECK(student_t_two_sided_p(std::numeric_limits<double>::infinity(), 10) == 0.0);
    CHECK(std::isnan(student_t_two_sided_p(std::nan(""), 10)));
}

TEST_CASE("insufficient points and short series raise") {
    CHECK_THROWS_AS(fit(ModelKind::Linear, series_from({1.0, 2.0})), Error);
    CHECK_THROWS_AS(fit(ModelKind::Growth, series_from({1.0, 2.0})), Error);
}
