#include "scai/cli.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "scai/batch.hpp"
#include "scai/calibration.hpp"
#include "scai/cohort.hpp"
#include "scai/error.hpp"
#include "scai/histogram.hpp"
#include "scai/report_io.hpp"
#include "scai/synth.hpp"

namespace scai {

using nlohmann::ordered_json;

namespace {

// Invalid flag combinations detected after CLI11 parsing.
struct BadArguments : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string(), path.string());
    out << text;
}

ordered_json params_json(const MetricParams& p) {
    ordered_json j;
    j["alpha"] = p.alpha;
    j["beta"] = p.beta;
    j["gamma"] = p.gamma;
    return j;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string(), path.string());
    return out;
}

void prepare_output_dir(const std::filesystem::path& dir) {
    const auto parent = std::filesystem::absolute(dir).parent_path();
    if (!std::filesystem::is_directory(parent))
        throw BadArguments("output parent directory does not exist: " + parent.string());
    std::filesystem::create_directories(dir);
}

CorpusFormat detect_format(const std::filesystem::path& path, std::optional<CorpusFormat> declared) {
    if (declared) return *declared;
    return std::filesystem::is_directory(path) ? CorpusFormat::CsvBundle : CorpusFormat::Jsonl;
}

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::MalformedRecord:
        case ErrorCode::DanglingReference:
        case ErrorCode::DuplicateId:
        case ErrorCode::MalformedProfileFile:
        case ErrorCode::Io:
            return kExitParseFailure;
        case ErrorCode::InvalidSpec:
        case ErrorCode::InvalidParams:
        case ErrorCode::InvalidRate:
        case ErrorCode::OutOfRange:
            return kExitBadArguments;
        default:
            return kExitInternal;
    }
}

void error_record(std::ostream& err, int exit_code, std::string_view kind, const std::string& message,
                  const Error* detail = nullptr) {
    ordered_json j;
    j["status"] = "error";
    j["exit_code"] = exit_code;
    j["error"] = std::string(kind);
    j["message"] = message;
    if (detail && !detail->subject().empty()) j["subject"] = detail->subject();
    if (detail && detail->line()) j["line"] = *detail->line();
    err << j.dump() << '\n';
}

std::optional<SelfCitationMode> mode_from(const std::string& text) {
    auto mode = parse_self_citation_mode(text);
    if (!mode) throw BadArguments("--self-citation-mode must be 'focal' or 'any-overlap'");
    return mode;
}

}  // namespace

std::filesystem::path resolve_locator(const std::string& locator) {
    constexpr std::string_view kFileScheme = "file://";
    if (locator.starts_with(kFileScheme)) {
        std::string rest = locator.substr(kFileScheme.size());
        // file://localhost/path
        if (rest.starts_with("localhost/")) rest.erase(0, 9);
        return rest;
    }
    if (auto pos = locator.find("://"); pos != std::string::npos)
        throw std::invalid_argument("only local paths and file:// URLs are supported: " + locator);
    return locator;
}

AnalyzeSummary run_analyze(const RunConfig& config, std::ostream& log) {
    if (config.max_papers && *config.max_papers < 1) throw BadArguments("--max-papers must be >= 1");
    if (config.max_citations && *config.max_citations < 1)
        throw BadArguments("--max-citations must be >= 1");
    prepare_output_dir(config.output_path);

    const auto input = resolve_locator(config.input_locator);
    if (!std::filesystem::exists(input))
        throw Error(ErrorCode::Io, "input not found: " + input.string(), input.string());
    const auto format = detect_format(input, config.format);
    if (config.visible) log << "loading " << input.string() << '\n';
    const Corpus full = parse_corpus(input, format);

    const bool truncate = config.max_papers || config.max_citations;
    const Corpus corpus =
        truncate ? truncate_corpus(full, config.max_papers, config.max_citations) : full;
    const auto warnings = validate_corpus(corpus);
    if (config.visible) {
        log << fmt::format("corpus: {} researchers, {} publications, {} citations, {} warnings\n",
                           corpus.researchers().size(), corpus.publications().size(),
                           corpus.edges().size(), warnings.size());
    }

    const ProfileSet profiles = config.profiles_path ? load_profiles(*config.profiles_path)
                                                     : default_profiles();
    const MetricParams fallback{};
    const auto params = to_discipline_params(profiles, fallback);
    const int reference_year = config.reference_year.value_or(current_year());

    const auto reports = compute_reports(corpus, params, config.self_citation_mode);
    if (config.visible) log << "computed " << reports.size() << " reports\n";

    const auto& dir = config.output_path;
    {
        auto out = open_output(dir / "reports.json");
        write_reports_json(reports, out);
    }
    {
        auto out = open_output(dir / "reports.csv");
        out << reports_csv_header() << '\n';
        for (const auto& r : reports) out << to_csv_row(r) << '\n';
    }
    const std::pair<CohortDimension, const char*> cohort_files[] = {
        {CohortDimension::Discipline, "cohort_discipline.csv"},
        {CohortDimension::Gender, "cohort_gender.csv"},
        {CohortDimension::CareerStage, "cohort_career_stage.csv"},
    };
    for (const auto& [dimension, name] : cohort_files) {
        auto out = open_output(dir / name);
        std::vector<CohortSummary> summaries;
        if (!reports.empty()) summaries = cohort_aggregate(reports, corpus, dimension, reference_year);
        write_cohort_csv(summaries, out);
    }

    ordered_json manifest;
    manifest["tool"] = "scai";
    manifest["version"] = kToolVersion;
    manifest["generated_at"] = utc_timestamp();
    manifest["input"] = {{"locator", config.input_locator},
                         {"source", full.provenance().source},
                         {"format_version", full.provenance().format_version}};
    manifest["corpus"] = {{"researchers", corpus.researchers().size()},
                          {"publications", corpus.publications().size()},
                          {"citations", corpus.edges().size()}};
    manifest["truncation"] = {
        {"applied", truncate},
        {"max_papers", config.max_papers ? ordered_json(*config.max_papers) : ordered_json(nullptr)},
        {"max_citations",
         config.max_citations ? ordered_json(*config.max_citations) : ordered_json(nullptr)},
        {"order", "lowest pub_id, then lowest (citing, cited) id pair"},
        {"publications_dropped", full.publications().size() - corpus.publications().size()},
        {"citations_dropped", full.edges().size() - corpus.edges().size()}};
    manifest["self_citation_mode"] = std::string(to_string(config.self_citation_mode));
    manifest["reference_year"] = reference_year;
    manifest["profiles_path"] =
        config.profiles_path ? ordered_json(config.profiles_path->string()) : ordered_json(nullptr);
    ordered_json disciplines = ordered_json::object();
    for (Discipline d : kFieldDisciplines) {
        auto entry = params_json(params.get(d));
        auto it = profiles.find(d);
        entry["basis"] = std::string(to_string(it != profiles.end() ? it->second.basis : ProfileBasis::Default));
        entry["sample_size"] = it != profiles.end() ? it->second.sample_size : 0;
        disciplines[std::string(to_string(d))] = std::move(entry);
    }
    manifest["parameters"] = {{"fallback", params_json(params.get(Discipline::Other))},
                              {"disciplines", std::move(disciplines)}};
    manifest["warnings"] = warnings.size();
    manifest["outputs"] = {"reports.json", "reports.csv", "cohort_discipline.csv",
                           "cohort_gender.csv", "cohort_career_stage.csv"};
    write_text(dir / "manifest.json", manifest.dump(2) + "\n");

    if (config.debug) {
        ordered_json diag;
        diag["warnings"] = ordered_json::array();
        for (const auto& w : warnings)
            diag["warnings"].push_back({{"kind", std::string(to_string(w.kind))},
                                        {"subject", w.subject},
                                        {"detail", w.detail}});
        diag["tallies"] = ordered_json::array();
        for (ResearcherIndex r = 0; r < corpus.researchers().size(); ++r) {
            const auto tally = count_citations(corpus, r, config.self_citation_mode);
            ordered_json t;
            t["researcher_id"] = tally.researcher_id;
            t["publications"] = ordered_json::array();
            for (const auto& p : tally.publications)
                t["publications"].push_back(
                    {{"pub_id", p.pub_id}, {"total", p.total}, {"self", p.self}, {"external", p.external}});
            diag["tallies"].push_back(std::move(t));
        }
        write_text(dir / "diagnostics.json", diag.dump(2) + "\n");
        log << "debug: wrote " << (dir / "diagnostics.json").string() << '\n';
    }

    return {corpus.researchers().size(), corpus.publications().size(), corpus.edges().size(),
            warnings.size(), truncate};
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Self-citation adjusted citation analytics"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    RunConfig analyze_cfg;
    std::string analyze_mode = "focal";
    std::string analyze_format;
    std::string analyze_profiles;
    auto* analyze = app.add_subcommand("analyze", "Compute per-researcher metrics and cohort tables");
    analyze->add_option("url", analyze_cfg.input_locator, "Corpus file, CSV bundle directory or file:// URL")
        ->required();
    analyze->add_option("--max-papers", analyze_cfg.max_papers, "Keep only the N lowest publication ids");
    analyze->add_option("--max-citations", analyze_cfg.max_citations, "Keep only the first N citations");
    analyze->add_option("--output", analyze_cfg.output_path, "Output directory")->required();
    analyze->add_flag("--visible", analyze_cfg.visible, "Print progress to stderr");
    analyze->add_flag("--debug", analyze_cfg.debug, "Write diagnostics.json");
    analyze->add_option("--self-citation-mode", analyze_mode, "focal | any-overlap");
    analyze->add_option("--profiles", analyze_profiles, "Field profile JSON");
    analyze->add_option("--reference-year", analyze_cfg.reference_year, "Year used for career stages");
    analyze->add_option("--format", analyze_format, "jsonl | csv (default: by input type)");

    std::string synth_spec;
    std::string synth_output;
    bool synth_visible = false;
    bool synth_debug = false;
    auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus from a generator spec");
    synth->add_option("--spec", synth_spec, "Generator spec JSON")->required();
    synth->add_option("--output", synth_output, "Output JSONL path")->required();
    synth->add_flag("--visible", synth_visible, "Print progress to stderr");
    synth->add_flag("--debug", synth_debug, "Echo the parsed spec to stderr");

    std::string hist_input;
    std::string hist_output;
    std::size_t hist_bins = 5;
    double hist_width = 5.0;
    bool hist_visible = false;
    auto* histogram = app.add_subcommand("histogram", "Bin SCAI adjustment magnitudes from reports.json");
    histogram->add_option("reports", hist_input, "reports.json written by analyze")->required();
    histogram->add_option("--bins", hist_bins, "Number of bins");
    histogram->add_option("--bin-width", hist_width, "Bin width in percentage points");
    histogram->add_option("--output", hist_output, "Output directory")->required();
    histogram->add_flag("--visible", hist_visible, "Print the bins to stderr");

    RunConfig cal_cfg;
    std::string cal_mode = "focal";
    std::string cal_format;
    std::string cal_profiles;
    std::size_t cal_min = kMinCalibrationCohort;
    auto* calibrate = app.add_subcommand("calibrate", "Estimate per-discipline beta from a corpus");
    calibrate->add_option("url", cal_cfg.input_locator, "Corpus file, CSV bundle directory or file:// URL")
        ->required();
    calibrate->add_option("--output", cal_cfg.output_path, "Profile file to write")->required();
    calibrate->add_option("--profiles", cal_profiles, "Template profile file (alpha, gamma, fallbacks)");
    calibrate->add_option("--self-citation-mode", cal_mode, "focal | any-overlap");
    calibrate->add_option("--min-cohort", cal_min, "Minimum cited researchers per discipline");
    calibrate->add_option("--format", cal_format, "jsonl | csv (default: by input type)");
    calibrate->add_flag("--visible", cal_cfg.visible, "Print estimates to stderr");

    std::vector<std::string> argv_store{"scai"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());

    auto parse_format = [](const std::string& text) -> std::optional<CorpusFormat> {
        if (text.empty()) return std::nullopt;
        if (text == "jsonl") return CorpusFormat::Jsonl;
        if (text == "csv") return CorpusFormat::CsvBundle;
        throw BadArguments("--format must be 'jsonl' or 'csv'");
    };

    try {
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::ParseError& e) {
            const int code = app.exit(e, out, err);
            return code == 0 ? kExitOk : kExitBadArguments;
        }

        if (*analyze) {
            analyze_cfg.self_citation_mode = *mode_from(analyze_mode);
            analyze_cfg.format = parse_format(analyze_format);
            if (!analyze_profiles.empty()) analyze_cfg.profiles_path = analyze_profiles;
            const auto s = run_analyze(analyze_cfg, err);
            out << fmt::format("analyzed {} researchers ({} publications, {} citations{}) -> {}\n",
                               s.researchers, s.publications, s.citations,
                               s.truncated ? ", truncated" : "", analyze_cfg.output_path.string());
        } else if (*synth) {
            const auto spec = load_generator_spec(synth_spec);
            if (synth_debug) err << to_json(spec).dump(2) << '\n';
            const auto parent = std::filesystem::absolute(synth_output).parent_path();
            if (!std::filesystem::is_directory(parent))
                throw BadArguments("output parent directory does not exist: " + parent.string());
            Corpus corpus = generate_synthetic_corpus(spec);
            if (spec.apply_compounding)
                corpus = apply_compounding(corpus, spec.compounding_rate,
                                           spec.compounding_horizon_years, spec.seed);
            auto file = open_output(synth_output);
            write_jsonl(corpus, file);
            if (synth_visible)
                err << fmt::format("generated {} researchers, {} publications, {} citations\n",
                                   corpus.researchers().size(), corpus.publications().size(),
                                   corpus.edges().size());
            out << "wrote " << synth_output << '\n';
        } else if (*histogram) {
            std::ifstream in(hist_input, std::ios::binary);
            if (!in) throw Error(ErrorCode::Io, "cannot open " + hist_input, hist_input);
            const auto reports = read_reports_json(in);
            prepare_output_dir(hist_output);
            const auto hist = emit_histogram(reports, hist_bins, hist_output, hist_width);
            if (hist_visible) write_histogram_csv(hist, err);
            out << fmt::format("binned {} eligible reports into {} bins -> {}\n", hist.eligible,
                               hist.bins.size(), hist_output);
        } else if (*calibrate) {
            const auto input = resolve_locator(cal_cfg.input_locator);
            if (!std::filesystem::exists(input))
                throw Error(ErrorCode::Io, "input not found: " + input.string(), input.string());
            const auto mode = *mode_from(cal_mode);
            const auto corpus = parse_corpus(input, detect_format(input, parse_format(cal_format)));
            ProfileSet profiles = cal_profiles.empty() ? default_profiles() : load_profiles(cal_profiles);
            for (Discipline d : kFieldDisciplines) {
                auto [it, fresh] = profiles.try_emplace(d);
                if (fresh) it->second.discipline = d;
                auto& current = it->second;
                try {
                    current = estimate_field_beta(corpus, d, current.params, mode, cal_min);
                    if (cal_cfg.visible)
                        err << fmt::format("{}: beta = {} (n = {})\n", to_string(d),
                                           format_double(current.params.beta), current.sample_size);
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::InsufficientCohort) throw;
                    if (cal_cfg.visible)
                        err << fmt::format("{}: kept {} profile ({} cited researchers)\n", to_string(d),
                                           to_string(current.basis), e.count().value_or(0));
                }
            }
            save_profiles(profiles, cal_cfg.output_path);
            out << "wrote " << cal_cfg.output_path.string() << '\n';
        }
        return kExitOk;
    } catch (const BadArguments& e) {
        error_record(err, kExitBadArguments, "BadArguments", e.what());
        return kExitBadArguments;
    } catch (const std::invalid_argument& e) {
        error_record(err, kExitBadArguments, "BadArguments", e.what());
        return kExitBadArguments;
    } catch (const Error& e) {
        const int code = exit_code_for(e.code());
        error_record(err, code, to_string(e.code()), e.what(), &e);
        return code;
    } catch (const std::exception& e) {
        error_record(err, kExitInternal, "Internal", e.what());
        return kExitInternal;
    }
}

}  // namespace scai
