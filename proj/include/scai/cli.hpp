#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "scai/corpus.hpp"
#include "scai/identity.hpp"

namespace scai {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
    kExitOk = 0,
    kExitBadArguments = 2,
    kExitParseFailure = 3,
    kExitInternal = 4,
};

struct RunConfig {
    std::string input_locator;
    std::optional<CorpusFormat> format;
    std::optional<std::size_t> max_papers;
    std::optional<std::size_t> max_citations;
    std::filesystem::path output_path;
    bool visible = false;
    bool debug = false;
    SelfCitationMode self_citation_mode = SelfCitationMode::Focal;
    std::optional<std::filesystem::path> profiles_path;
    std::optional<int> reference_year;
};

// Resolves a local path or file:// URL. Throws std::invalid_argument for other schemes.
std::filesystem::path resolve_locator(const std::string& locator);

struct AnalyzeSummary {
    std::size_t researchers = 0;
    std::size_t publications = 0;
    std::size_t citations = 0;
    std::size_t warnings = 0;
    bool truncated = false;
};

// Writes reports.json, reports.csv, cohort_{discipline,gender,career_stage}.csv
// and manifest.json into config.output_path. Throws scai::Error.
AnalyzeSummary run_analyze(const RunConfig& config, std::ostream& log);

// Entry point shared by the executable and the tests. Never throws; failures
// print a one-line JSON error record on `err` and return the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace scai
