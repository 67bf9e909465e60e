#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <string_view>

#include <CLI11.hpp>

#include "fieldtrends/corpus.hpp"
#include "fieldtrends/errors.hpp"
#include "fieldtrends/jsonio.hpp"
#include "fieldtrends/laws.hpp"
#include "fieldtrends/metrics.hpp"
#include "fieldtrends/regress.hpp"
#include "fieldtrends/report.hpp"
#include "fieldtrends/svg.hpp"
#include "fieldtrends/synth.hpp"
#include "fieldtrends/version.hpp"

namespace fieldtrends {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::IoFailure, "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) raise(Errc::IoFailure, "cannot read '" + path + "'");
    return buffer.str();
}

inline void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);  // binary keeps LF newlines as-is
    if (!out) raise(Errc::IoFailure, "cannot write '" + path + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) raise(Errc::IoFailure, "cannot write '" + path + "'");
}

namespace detail {

inline std::string field_name_from_path(const std::string& path) {
    const auto stem = std::filesystem::path(path).stem().string();
    return stem.empty() ? "field" : stem;
}

inline ModelKind model_kind_from_name(std::string_view name) {
    if (name == "linear") return ModelKind::Linear;
    if (name == "growth") return ModelKind::Growth;
    if (name == "exponential") return ModelKind::Exponential;
    raise(Errc::InvalidSpec, "unknown model kind '" + std::string(name) + "'");
}

inline double parse_config_double(std::string_view value, const std::string& key) {
    double out = 0.0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
    if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
        raise(Errc::InvalidSpec, key + ": '" + std::string(value) + "' is not a number");
    return out;
}

template <typename Int>
inline Int parse_config_int(std::string_view value, const std::string& key) {
    Int out{};
    const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
    if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
        raise(Errc::InvalidSpec, key + ": '" + std::string(value) + "' is not an integer");
    return out;
}

}  // namespace detail

// Flat `key = value` config, one pair per line, `#` comment lines, UTF-8.
// Keys mirror the SynthSpec fields; mixture entries look like
// `mixture_start.Computer Science = 0.6`.
inline SynthSpec parse_synth_config(std::string_view text) {
    SynthSpec spec;
    bool have_kind = false, have_a = false, have_b = false;
    bool have_first = false, have_last = false, have_midpoint = false;

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto nl = text.find('\n', start);
        std::string_view line =
            nl == std::string_view::npos ? text.substr(start) : text.substr(start, nl - start);
        start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        line = detail::trim(line);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            raise(Errc::InvalidSpec,
                  "line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key{detail::trim(line.substr(0, eq))};
        const std::string_view value = detail::trim(line.substr(eq + 1));

        if (key == "field_name") {
            spec.field_name = std::string(value);
        } else if (key == "kind") {
            spec.kind = detail::model_kind_from_name(value);
            have_kind = true;
        } else if (key == "a") {
            spec.a = detail::parse_config_double(value, key);
            have_a = true;
        } else if (key == "b") {
            spec.b = detail::parse_config_double(value, key);
            have_b = true;
        } else if (key == "years.first") {
            spec.first_year = detail::parse_config_int<int>(value, key);
            have_first = true;
        } else if (key == "years.last") {
            spec.last_year = detail::parse_config_int<int>(value, key);
            have_last = true;
        } else if (key == "noise_sd_log") {
            spec.noise_sd_log = detail::parse_config_double(value, key);
        } else if (key == "transition_midpoint") {
            spec.transition_midpoint = detail::parse_config_double(value, key);
            have_midpoint = true;
        } else if (key == "transition_rate") {
            spec.transition_rate = detail::parse_config_double(value, key);
        } else if (key == "seed") {
            spec.seed = detail::parse_config_int<std::uint64_t>(value, key);
        } else if (key.rfind("mixture_start.", 0) == 0) {
            const std::string name{detail::trim(std::string_view(key).substr(14))};
            if (name.empty()) raise(Errc::InvalidSpec, "mixture_start entry without a name");
            spec.mixture_start[name] = detail::parse_config_double(value, key);
        } else if (key.rfind("mixture_end.", 0) == 0) {
            const std::string name{detail::trim(std::string_view(key).substr(12))};
            if (name.empty()) raise(Errc::InvalidSpec, "mixture_end entry without a name");
            spec.mixture_end[name] = detail::parse_config_double(value, key);
        } else {
            raise(Errc::InvalidSpec, "unknown key '" + key + "'");
        }
    }

    const std::pair<bool, const char*> required[] = {
        {!have_kind, "kind"},
        {!have_a, "a"},
        {!have_b, "b"},
        {!have_first, "years.first"},
        {!have_last, "years.last"},
        {spec.mixture_start.empty(), "mixture_start.*"},
    };
    for (const auto& [missing, name] : required) {
        if (missing) raise(Errc::InvalidSpec, std::string("missing required key '") + name + "'");
    }
    if (!have_midpoint)
        spec.transition_midpoint = (spec.first_year + spec.last_year) / 2.0;
    return spec;
}

namespace detail {

inline void run_fit(const std::string& input, const std::string& model) {
    const FieldCorpus corpus = parse_corpus_csv(read_file(input), field_name_from_path(input));
    const TrendSeries trend = trend_series(corpus);
    Json out;
    if (model == "best") {
        const BestFit best = best_fit(trend.series);
        out = fit_result_json(best.fit);
        out["sse_original"] = best.sse_original;
    } else {
        out = fit_result_json(fit(model_kind_from_name(model), trend.series));
    }
    out["occurrence_proxy"] = trend.occurrence_proxy;
    std::cout << out.dump();
}

inline void run_weights(const std::string& input, bool as_csv) {
    const FieldCorpus corpus = parse_corpus_csv(read_file(input), field_name_from_path(input));
    const WeightMatrix matrix = weight_matrix(corpus);
    if (as_csv) {
        std::cout << weights_csv(matrix);
    } else {
        std::cout << weights_json(matrix).dump();
    }
}

inline void run_laws(const std::string& input, const LawConfig& cfg) {
    const FieldCorpus corpus = parse_corpus_csv(read_file(input), field_name_from_path(input));
    std::cout << law_report_json(evaluate_field(corpus, cfg)).dump();
}

inline void run_report(const std::string& input, const std::string& out_dir,
                       const LawConfig& cfg) {
    const std::string text = read_file(input);
    const FieldCorpus corpus = parse_corpus_csv(text, field_name_from_path(input));
    const LawReport report = evaluate_field(corpus, cfg);
    const WeightMatrix matrix = weight_matrix(corpus);

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) raise(Errc::IoFailure, "cannot create directory '" + out_dir + "'");
    const auto dir = std::filesystem::path(out_dir);

    write_file((dir / "report.json").string(),
               report_document(report, matrix, fnv1a64_digest(text)).dump());
    write_file((dir / "weights.csv").string(), weights_csv(matrix));

    const TrendSeries trend = trend_series(corpus);
    const BestFit* best = report.trend.ok() ? &*report.trend.value : nullptr;
    write_file((dir / "trend.svg").string(),
               trend_chart_svg(trend.series, best, corpus.field_name() + ": yearly totals",
                               report.occurrence_proxy ? "occurrences" : "documents"));
    write_file((dir / "weights.svg").string(),
               weights_chart_svg(matrix, corpus.field_name() + ": discipline weights"));
}

inline void run_synth(const std::string& spec_path, const std::string& out_path) {
    const SynthSpec spec = parse_synth_config(read_file(spec_path));
    write_file(out_path, serialize_corpus_csv(generate_corpus(spec)));
}

}  // namespace detail

// Exit codes: 0 success, 1 analysis error, 2 usage/IO/parse error. Diagnostics
// go to standard error as a single line.
inline int run(int argc, const char* const* argv) {
    CLI::App app{"Research-field trend and discipline-dynamics analyzer"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    std::string input, model = "best", out_dir, spec_path, out_path;
    bool as_csv = false;
    LawConfig cfg;

    auto* fit_cmd = app.add_subcommand("fit", "Fit a trend model to the yearly totals");
    fit_cmd->add_option("--input", input, "corpus CSV file")->required();
    fit_cmd->add_option("--model", model, "linear, growth, exponential or best")
        ->check(CLI::IsMember({"linear", "growth", "exponential", "best"}));

    auto* weights_cmd = app.add_subcommand("weights", "Per-year discipline weights");
    weights_cmd->add_option("--input", input, "corpus CSV file")->required();
    weights_cmd->add_flag("--csv", as_csv, "emit long-format CSV instead of JSON");

    auto* laws_cmd = app.add_subcommand("laws", "Evaluate the three evolution laws");
    laws_cmd->add_option("--input", input, "corpus CSV file")->required();
    laws_cmd->add_option("--threshold", cfg.threshold, "concentration threshold")
        ->check(CLI::Range(1e-9, 1.0));
    laws_cmd->add_option("--band-max", cfg.size_band_max, "max covering-set size that passes")
        ->check(CLI::Range(1, 1 << 20));
    laws_cmd->add_option("--top-k", cfg.top_k, "rank cutoff for persistence/emergence")
        ->check(CLI::Range(1, 1 << 20));
    laws_cmd->add_option("--persistence-min", cfg.persistence_min, "law 2 pass threshold")
        ->check(CLI::Range(0.0, 1.0));

    auto* report_cmd = app.add_subcommand("report", "Write report.json, weights.csv and charts");
    report_cmd->add_option("--input", input, "corpus CSV file")->required();
    report_cmd->add_option("--out", out_dir, "output directory")->required();

    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic corpus CSV");
    synth_cmd->add_option("--spec", spec_path, "generator config file")->required();
    synth_cmd->add_option("--out", out_path, "output CSV path")->required();

    try {
        app.parse(argc, argv);
        if (app.got_subcommand(fit_cmd)) {
            detail::run_fit(input, model);
        } else if (app.got_subcommand(weights_cmd)) {
            detail::run_weights(input, as_csv);
        } else if (app.got_subcommand(laws_cmd)) {
            detail::run_laws(input, cfg);
        } else if (app.got_subcommand(report_cmd)) {
            detail::run_report(input, out_dir, cfg);
        } else if (app.got_subcommand(synth_cmd)) {
            detail::run_synth(spec_path, out_path);
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return is_input_error(e.code()) ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace fieldtrends
