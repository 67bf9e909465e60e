#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <map>
#include <string>

#include "fieldtrends/laws.hpp"
#include "fieldtrends/synth.hpp"
#include "oracles.hpp"

using namespace fieldtrends;

namespace {

double total_at(const YearSeries& series, int year) {
    for (const auto& point : series.points())
        if (point.year == year) return point.value;
    FAIL("no point for year " + std::to_string(year));
    return -1.0;
}

SynthSpec growth_spec() {
    SynthSpec spec;
    spec.kind = ModelKind::Growth;
    spec.a = -89.0;
    spec.b = 0.05;
    spec.first_year = 2000;
    spec.last_year = 2039;
    spec.mixture_start = {{"Medicine", 0.6}, {"Chemistry", 0.4}};
    spec.transition_midpoint = 2020.0;
    spec.seed = 11;
    return spec;
}

}  // namespace

TEST_CASE("generator stream matches the published reference outputs") {
    SplitMix64 zero(0);
    CHECK(zero.next() == 0xe220a8397b1dcdafull);
    CHECK(zero.next() == 0x6e789e6aa1b965f4ull);
    CHECK(zero.next() == 0x06c45d188009454full);

    SplitMix64 forty_two(42);
    CHECK(forty_two.next() == 0xbdd732262feb6e95ull);
    CHECK(forty_two.next() == 0x28efe333b266f103ull);
    CHECK(forty_two.next() == 0x47526757130f9f52ull);

    CHECK(SplitMix64(0).uniform01() == 0.88331080821364261);
    CHECK(SplitMix64(0).normal() == -0.45275774021745802);
    CHECK(SplitMix64(7).normal() == 1.3649922974572282);
}

TEST_CASE("normal and binomial draws consume a fixed number of raw values") {
    SplitMix64 a(99);
    SplitMix64 b(99);
    (void)a.normal();
    b.next();
    b.next();
    CHECK(a.next() == b.next());  // exactly two raws per normal

    SplitMix64 c(100);
    SplitMix64 d(100);
    (void)binomial_draw(c, 50, 0.3);
    (void)binomial_draw(c, 0, 0.3);   // edge cases burn a draw too
    (void)binomial_draw(c, 50, 0.0);
    (void)binomial_draw(c, 50, 1.0);
    for (int i = 0; i < 4; ++i) d.next();
    CHECK(c.next() == d.next());
}

TEST_CASE("binomial draws stay in range and hit the edges") {
    SplitMix64 rng(5);
    CHECK(binomial_draw(rng, 0, 0.5) == 0);
    CHECK(binomial_draw(rng, 12, 0.0) == 0);
    CHECK(binomial_draw(rng, 12, 1.0) == 12);

    double sum = 0.0;
    const int trials = 4000;
    for (int i = 0; i < trials; ++i) {
        const auto k = binomial_draw(rng, 40, 0.25);
        REQUIRE(k >= 0);
        REQUIRE(k <= 40);
        sum += static_cast<double>(k);
    }
    // mean 10, sd of the sample mean ~ 0.043; allow five sigma
    CHECK(sum / trials == Catch::Approx(10.0).margin(0.22));
}

TEST_CASE("mixture interpolation respects its endpoints") {
    SynthSpec spec;
    spec.first_year = 1980;
    spec.last_year = 2017;
    spec.mixture_start = {{"Mathematics", 0.7}, {"Engineering", 0.3}};
    spec.mixture_end = {{"Computer Science", 0.6}, {"Mathematics", 0.2}, {"Engineering", 0.2}};
    spec.transition_rate = 2.0;

    spec.transition_midpoint = 2400.0;  // exp overflows, sigma is exactly zero
    auto early = mixture_at(spec, 1980);
    CHECK(early.at("Mathematics") == Catch::Approx(0.7).margin(1e-12));
    CHECK(early.at("Engineering") == Catch::Approx(0.3).margin(1e-12));
    CHECK(early.at("Computer Science") == 0.0);

    spec.transition_midpoint = 2000.0;  // sigma is exactly one half there
    auto blend = mixture_at(spec, 2000);
    CHECK(blend.at("Mathematics") == Catch::Approx(0.45).margin(1e-12));
    CHECK(blend.at("Engineering") == Catch::Approx(0.25).margin(1e-12));
    CHECK(blend.at("Computer Science") == Catch::Approx(0.30).margin(1e-12));

    CHECK_THROWS_AS(mixture_at(spec, 1979), Error);
    CHECK_THROWS_AS(mixture_at(spec, 2018), Error);

    // identical endpoints pin the mixture for every year
    spec.mixture_end.clear();
    for (int t = 1980; t <= 2017; ++t) {
        const auto w = mixture_at(spec, t);
        CHECK(w.at("Mathematics") == Catch::Approx(0.7).margin(1e-12));
    }
}

TEST_CASE("spec validation rejects malformed parameter sets") {
    const auto expect_invalid = [](SynthSpec spec) {
        try {
            validate_spec(spec);
            FAIL("expected InvalidSpec");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::InvalidSpec);
        }
    };

    SynthSpec base = growth_spec();
    validate_spec(base);  // sanity: the template itself is fine

    SynthSpec years = base;
    years.first_year = 2040;
    expect_invalid(years);

    SynthSpec noise = base;
    noise.noise_sd_log = -0.1;
    expect_invalid(noise);

    SynthSpec empty = base;
    empty.mixture_start.clear();
    expect_invalid(empty);

    SynthSpec sum_off = base;
    sum_off.mixture_start = {{"Medicine", 0.6}, {"Chemistry", 0.5}};
    expect_invalid(sum_off);

    SynthSpec negative = base;
    negative.mixture_start = {{"Medicine", 1.4}, {"Chemistry", -0.4}};
    expect_invalid(negative);

    SynthSpec padded = base;
    padded.mixture_start = {{" Medicine", 0.6}, {"Chemistry", 0.4}};
    expect_invalid(padded);

    SynthSpec coeff = base;
    coeff.a = std::numeric_limits<double>::infinity();
    expect_invalid(coeff);
}

TEST_CASE("generation is a pure function of the spec") {
    const auto spec = growth_spec();
    const auto first = generate_corpus(spec);
    const auto second = generate_corpus(spec);
    CHECK(first == second);
    CHECK(serialize_corpus_csv(first) == serialize_corpus_csv(second));

    SynthSpec reseeded = spec;
    reseeded.seed = 12;
    reseeded.noise_sd_log = 0.1;
    SynthSpec again = reseeded;
    CHECK(generate_corpus(reseeded) == generate_corpus(again));
}

TEST_CASE("noiseless totals follow the rounded model mean") {
    const auto spec = growth_spec();
    const auto corpus = generate_corpus(spec);
    const auto totals = occurrence_totals(corpus);
    REQUIRE(corpus.document_totals().size() == 40);
    for (const auto& [year, documents] : corpus.document_totals()) {
        const auto expected = std::llrint(std::exp(spec.a + spec.b * year));
        CHECK(documents == expected);
        CHECK(total_at(totals, year) == static_cast<double>(expected));
    }
}

TEST_CASE("noisy totals still split exactly across disciplines") {
    SynthSpec spec = growth_spec();
    spec.noise_sd_log = 0.25;
    spec.mixture_start = {{"Medicine", 0.5}, {"Chemistry", 0.3}, {"Physics", 0.2}};
    spec.seed = 314;
    const auto corpus = generate_corpus(spec);
    const auto totals = occurrence_totals(corpus);
    for (const auto& [year, documents] : corpus.document_totals())
        CHECK(total_at(totals, year) == static_cast<double>(documents));
}

TEST_CASE("a single-discipline mixture routes every document to it") {
    SynthSpec spec = growth_spec();
    spec.mixture_start = {{"Medicine", 1.0}};
    const auto corpus = generate_corpus(spec);
    for (const auto& cell : corpus.cells()) CHECK(cell.discipline == "Medicine");
    const auto totals = occurrence_totals(corpus);
    for (const auto& [year, documents] : corpus.document_totals())
        CHECK(total_at(totals, year) == static_cast<double>(documents));
}

TEST_CASE("years whose total rounds to zero are omitted") {
    SynthSpec spec;
    spec.kind = ModelKind::Growth;
    spec.a = -600.3;
    spec.b = 0.3;  // crosses exp(...) = 0.5 between 2000 and 2001
    spec.first_year = 1998;
    spec.last_year = 2010;
    spec.mixture_start = {{"Medicine", 1.0}};
    const auto corpus = generate_corpus(spec);
    CHECK(corpus.min_year() > spec.first_year);
    for (const auto& [year, documents] : corpus.document_totals()) {
        CHECK(documents > 0);
        CHECK(year >= corpus.min_year());
    }

    // pushing the curve below one document everywhere leaves nothing
    SynthSpec hopeless = spec;
    hopeless.last_year = 1998;
    try {
        generate_corpus(hopeless);
        FAIL("expected EmptyCorpus");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::EmptyCorpus);
    }

    // totals beyond the integer range are refused up front
    SynthSpec huge = growth_spec();
    huge.a = 1000.0;
    try {
        generate_corpus(huge);
        FAIL("expected InvalidSpec");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::InvalidSpec);
    }
}

TEST_CASE("documented stream layout reproduces a noisy two-way corpus") {
    SynthSpec spec;
    spec.kind = ModelKind::Growth;
    spec.a = -600.45;
    spec.b = 0.3;
    spec.first_year = 1999;
    spec.last_year = 2014;
    spec.noise_sd_log = 0.2;
    spec.mixture_start = {{"Alpha", 0.65}, {"Beta", 0.35}};
    spec.seed = 2020;
    const auto corpus = generate_corpus(spec);

    SplitMix64 replay(spec.seed);
    std::vector<CorpusCell> cells;
    std::map<int, std::int64_t> documents;
    for (int t = spec.first_year; t <= spec.last_year; ++t) {
        const double m =
            std::exp(spec.a + spec.b * t) * std::exp(replay.normal() * spec.noise_sd_log);
        const std::int64_t total = m <= 0.0 ? 0 : std::llrint(m);
        if (total <= 0) continue;  // omitted years consume no split draws
        documents[t] = total;
        const std::int64_t alpha = binomial_draw(replay, total, 0.65);
        if (alpha > 0) cells.push_back(CorpusCell{t, "Alpha", alpha});
        if (total - alpha > 0) cells.push_back(CorpusCell{t, "Beta", total - alpha});
    }
    CHECK(corpus == FieldCorpus(spec.field_name, cells, documents));
    REQUIRE(!documents.empty());
    CHECK(documents.begin()->first > spec.first_year);  // layout covers skipped years
}

TEST_CASE("refitting a noiseless synthetic corpus recovers its coefficients") {
    const auto spec = growth_spec();
    const auto corpus = generate_corpus(spec);
    const auto series = trend_series(corpus).series;
    const auto result = fit(ModelKind::Growth, series);
    CHECK(std::abs(result.a - spec.a) / std::abs(spec.a) < 1e-4);
    CHECK(std::abs(result.b - spec.b) / std::abs(spec.b) < 1e-4);
    CHECK(result.r2 > 0.9999);
    CHECK(best_fit(series).kind == ModelKind::Growth);
}

TEST_CASE("a mixture shift produces a detectable takeover") {
    SynthSpec spec;
    spec.kind = ModelKind::Growth;
    spec.a = -233.7;
    spec.b = 0.12;
    spec.first_year = 1980;
    spec.last_year = 2017;
    spec.mixture_start = {{"Mathematics", 0.7}, {"Engineering", 0.3}};
    spec.mixture_end = {{"Computer Science", 0.6}, {"Mathematics", 0.2}, {"Engineering", 0.2}};
    spec.transition_midpoint = 1998.0;
    spec.transition_rate = 0.35;
    spec.seed = 20;
    const auto corpus = generate_corpus(spec);

    const auto report = evaluate_field(corpus);
    REQUIRE(report.law3.ok());
    CHECK(report.law3.value->pass);
    CHECK(std::find(report.law3.value->emergent.begin(), report.law3.value->emergent.end(),
                    "Computer Science") != report.law3.value->emergent.end());
    REQUIRE(report.law2.ok());
    const auto& critical = report.law2.value->critical;
    CHECK(std::find(critical.begin(), critical.end(), "Computer Science") != critical.end());
}
