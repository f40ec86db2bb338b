#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "scai/cohort.hpp"
#include "scai/corpus.hpp"

namespace scai {

// Concentration (alpha + beta) of the per-researcher SCR Beta distribution.
inline constexpr double kScrConcentration = 30.0;
// Log-scale spread of per-researcher h targets around the group mean.
inline constexpr double kHSpreadSigma = 0.25;
// Log-scale spread of per-publication citation counts.
inline constexpr double kCountSigma = 1.0;
// Publications per unit of target h.
inline constexpr double kPublicationsPerH = 2.5;

struct GroupSpec {
    Discipline discipline = Discipline::Other;
    Gender gender = Gender::Unreported;
    std::optional<CareerStage> career_stage;
    std::size_t n_researchers = 0;
    double target_mean_scr = 0.0;
    double target_mean_h = 0.0;
};

// What target_mean_h describes: the h-index over all citations, or over
// external citations only, with self-citations added on top.
enum class HBasis { AllCitations, External };

std::string_view to_string(HBasis b);

struct GeneratorSpec {
    std::uint64_t seed = 0;
    std::vector<GroupSpec> groups;
    int first_year = 1990;
    int last_year = 2024;
    double compounding_rate = 3.0;
    int compounding_horizon_years = 5;
    HBasis h_basis = HBasis::AllCitations;
    // When set, run_synth passes the generated corpus through apply_compounding.
    bool apply_compounding = false;

    // Throws Error{InvalidSpec}.
    void validate() const;
};

// Throws Error{MalformedRecord} for structurally bad JSON, Error{InvalidSpec}
// for values that violate the spec invariants.
GeneratorSpec generator_spec_from_json(const nlohmann::json& j);
GeneratorSpec load_generator_spec(const std::filesystem::path& path);
nlohmann::ordered_json to_json(const GeneratorSpec& spec);

// Researcher ids are "g<group>-r<slot>", publication ids "<researcher>-p<k>".
// Researchers in the same slot of equally sized groups share their
// publication-count profile, so groups differ only through their targets.
Corpus generate_synthetic_corpus(const GeneratorSpec& spec);

// For every self-citation edge (author overlap between citing and cited),
// draws Poisson(rate) new external citations of the cited paper, dated
// uniformly in the `horizon_years` after the self-citation. Input unchanged.
// Throws Error{InvalidRate}.
Corpus apply_compounding(const Corpus& corpus, double rate, int horizon_years, std::uint64_t seed);

}  // namespace scai
