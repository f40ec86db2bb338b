#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "scai/batch.hpp"
#include "scai/corpus.hpp"
#include "scai/identity.hpp"
#include "scai/metrics.hpp"

namespace scai {

// Smallest cohort whose median SCR is trusted as a field threshold.
inline constexpr std::size_t kMinCalibrationCohort = 10;

enum class ProfileBasis { Default, Estimated };

std::string_view to_string(ProfileBasis b);

struct FieldProfile {
    Discipline discipline = Discipline::Other;
    MetricParams params;
    ProfileBasis basis = ProfileBasis::Default;
    std::size_t sample_size = 0;

    bool operator==(const FieldProfile&) const = default;
};

using ProfileSet = std::map<Discipline, FieldProfile>;

// Median; even-length input averages the two central values. Input must be non-empty.
double median(std::vector<double> values);

// Replaces template.beta with the median of `cohort_scrs`.
// Throws Error{InsufficientCohort} (count() holds the cohort size).
FieldProfile estimate_field_beta(std::span<const double> cohort_scrs, Discipline discipline,
                                 const MetricParams& params_template,
                                 std::size_t min_cohort = kMinCalibrationCohort);

// Cohort = researchers of `discipline` with at least one citation.
FieldProfile estimate_field_beta(const Corpus& corpus, Discipline discipline,
                                 const MetricParams& params_template,
                                 SelfCitationMode mode = SelfCitationMode::Focal,
                                 std::size_t min_cohort = kMinCalibrationCohort);

// Default-basis profiles for the six field disciplines.
ProfileSet default_profiles(const MetricParams& params = {});

// Missing file yields default_profiles(). Throws Error{MalformedProfileFile}.
ProfileSet load_profiles(const std::filesystem::path& path);
void save_profiles(const ProfileSet& profiles, const std::filesystem::path& path);

DisciplineParams to_discipline_params(const ProfileSet& profiles,
                                      const MetricParams& fallback = {});

}  // namespace scai
