#include "scai/calibration.hpp"

#include <algorithm>
#include <fstream>

#include <nlohmann/json.hpp>

#include "scai/error.hpp"

namespace scai {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view to_string(ProfileBasis b) {
    return b == ProfileBasis::Default ? "default" : "estimated";
}

double median(std::vector<double> values) {
    if (values.empty()) throw Error(ErrorCode::EmptyInput, "median of an empty set");
    const std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
    const double upper = values[mid];
    if (values.size() % 2 == 1) return upper;
    const double lower =
        *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
    return (lower + upper) / 2.0;
}

FieldProfile estimate_field_beta(std::span<const double> cohort_scrs, Discipline discipline,
                                 const MetricParams& params_template, std::size_t min_cohort) {
    params_template.validate();
    if (cohort_scrs.size() < min_cohort || cohort_scrs.empty())
        throw Error(ErrorCode::InsufficientCohort,
                    "cohort for " + std::string(to_string(discipline)) + " has " +
                        std::to_string(cohort_scrs.size()) + " researchers, need " +
                        std::to_string(std::max<std::size_t>(min_cohort, 1)),
                    std::string(to_string(discipline)), std::nullopt, cohort_scrs.size());
    FieldProfile profile{discipline, params_template, ProfileBasis::Estimated, cohort_scrs.size()};
    profile.params.beta = median({cohort_scrs.begin(), cohort_scrs.end()});
    return profile;
}

FieldProfile estimate_field_beta(const Corpus& corpus, Discipline discipline,
                                 const MetricParams& params_template, SelfCitationMode mode,
                                 std::size_t min_cohort) {
    std::vector<double> scrs;
    for (ResearcherIndex r = 0; r < corpus.researchers().size(); ++r) {
        if (corpus.researcher(r).discipline != discipline) continue;
        const auto tally = count_citations(corpus, r, mode);
        if (tally.total() == 0) continue;
        scrs.push_back(compute_scr(tally.self(), tally.total()));
    }
    return estimate_field_beta(scrs, discipline, params_template, min_cohort);
}

ProfileSet default_profiles(const MetricParams& params) {
    ProfileSet set;
    for (Discipline d : kFieldDisciplines) set[d] = {d, params, ProfileBasis::Default, 0};
    return set;
}

namespace {

[[noreturn]] void bad_profile(const std::filesystem::path& path, const std::string& reason) {
    throw Error(ErrorCode::MalformedProfileFile, path.string() + ": " + reason, path.string());
}

}  // namespace

ProfileSet load_profiles(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        if (!std::filesystem::exists(path)) return default_profiles();
        throw Error(ErrorCode::Io, "cannot read " + path.string(), path.string());
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        bad_profile(path, e.what());
    }
    if (!doc.is_object()) bad_profile(path, "top level must be an object");

    ProfileSet set;
    for (const auto& [key, value] : doc.items()) {
        auto d = parse_discipline(key);
        if (!d) bad_profile(path, "unknown discipline '" + key + "'");
        if (!value.is_object()) bad_profile(path, key + ": profile must be an object");
        FieldProfile p;
        p.discipline = *d;
        try {
            p.params.alpha = value.at("alpha").get<double>();
            p.params.beta = value.at("beta").get<double>();
            p.params.gamma = value.at("gamma").get<double>();
            const auto basis = value.at("basis").get<std::string>();
            if (basis == "default") {
                p.basis = ProfileBasis::Default;
            } else if (basis == "estimated") {
                p.basis = ProfileBasis::Estimated;
            } else {
                bad_profile(path, key + ": basis must be \"default\" or \"estimated\"");
            }
            if (auto it = value.find("sample_size"); it != value.end())
                p.sample_size = it->get<std::size_t>();
        } catch (const json::exception& e) {
            bad_profile(path, key + ": " + e.what());
        }
        if (!p.params.valid())
            bad_profile(path, key + ": need alpha >= 0, 0 <= beta <= 1, gamma >= 1");
        if (p.basis == ProfileBasis::Estimated && p.sample_size < kMinCalibrationCohort)
            bad_profile(path, key + ": estimated profile needs sample_size >= " +
                                  std::to_string(kMinCalibrationCohort));
        set[*d] = p;
    }
    return set;
}

void save_profiles(const ProfileSet& profiles, const std::filesystem::path& path) {
    ordered_json doc = ordered_json::object();
    for (const auto& [d, p] : profiles) {
        ordered_json entry;
        entry["alpha"] = p.params.alpha;
        entry["beta"] = p.params.beta;
        entry["gamma"] = p.params.gamma;
        entry["basis"] = std::string(to_string(p.basis));
        entry["sample_size"] = p.sample_size;
        doc[std::string(to_string(d))] = std::move(entry);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string(), path.string());
    out << doc.dump(2) << '\n';
}

DisciplineParams to_discipline_params(const ProfileSet& profiles, const MetricParams& fallback) {
    DisciplineParams params(fallback);
    for (const auto& [d, p] : profiles) params.set(d, p.params);
    return params;
}

}  // namespace scai
