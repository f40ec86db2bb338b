#include "scai/cohort.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include <fmt/format.h>

#include "scai/error.hpp"

namespace scai {

std::string_view to_string(CareerStage s) {
    switch (s) {
        case CareerStage::EarlyCareer: return "EarlyCareer";
        case CareerStage::MidCareer: return "MidCareer";
        case CareerStage::Senior: return "Senior";
    }
    return "Unknown";
}

CareerStage career_stage(int first_pub_year, int reference_year) {
    const int years = reference_year - first_pub_year;
    if (years < 10) return CareerStage::EarlyCareer;
    if (years <= 20) return CareerStage::MidCareer;
    return CareerStage::Senior;
}

std::string_view to_string(CohortDimension d) {
    switch (d) {
        case CohortDimension::Discipline: return "discipline";
        case CohortDimension::Gender: return "gender";
        case CohortDimension::CareerStage: return "career_stage";
    }
    return "unknown";
}

CohortKey CohortKey::of(Gender g) {
    if (g == Gender::Unreported) return {CohortDimension::Gender, Unreported{}};
    return {CohortDimension::Gender, g};
}

std::string CohortKey::label() const {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Unreported>) {
                return "Unreported";
            } else {
                return std::string(to_string(v));
            }
        },
        value);
}

CohortKey cohort_key_for(const Corpus& corpus, std::string_view researcher_id,
                         CohortDimension dimension, int reference_year) {
    const auto& r = corpus.researcher(corpus.require_researcher(researcher_id));
    switch (dimension) {
        case CohortDimension::Discipline: return CohortKey::of(r.discipline);
        case CohortDimension::Gender: return CohortKey::of(r.gender);
        case CohortDimension::CareerStage: {
            auto first = derive_first_pub_year(corpus, researcher_id);
            if (!first) return {CohortDimension::CareerStage, Unreported{}};
            return CohortKey::of(career_stage(*first, reference_year));
        }
    }
    return {dimension, Unreported{}};
}

namespace {

// Orders groups by enum declaration with Unreported last.
std::pair<std::size_t, int> order_key(const CohortKey& k) {
    return {k.value.index(), std::visit(
                                 [](const auto& v) -> int {
                                     using T = std::decay_t<decltype(v)>;
                                     if constexpr (std::is_same_v<T, Unreported>) {
                                         return 0;
                                     } else {
                                         return static_cast<int>(v);
                                     }
                                 },
                                 k.value)};
}

// Members sorted by researcher_id so floating-point sums do not depend on
// input order.
std::vector<const MetricsReport*> sorted_members(std::vector<const MetricsReport*> members) {
    std::sort(members.begin(), members.end(),
              [](auto* a, auto* b) { return a->researcher_id < b->researcher_id; });
    return members;
}

CohortSummary summarize(const CohortKey& key, const std::vector<const MetricsReport*>& members) {
    CohortSummary s;
    s.key = key;
    s.n = members.size();
    double scr = 0.0;
    double h = 0.0;
    double scai = 0.0;
    double inflation = 0.0;
    std::size_t with_inflation = 0;
    for (const auto* r : members) {
        scr += r->scr;
        h += static_cast<double>(r->h_index);
        scai += r->scai;
        if (r->inflation) {
            inflation += *r->inflation;
            ++with_inflation;
        }
    }
    const double n = static_cast<double>(s.n);
    s.mean_scr = scr / n;
    s.mean_h = h / n;
    s.mean_scai = scai / n;
    s.inflation_excluded = s.n - with_inflation;
    if (with_inflation > 0) s.mean_inflation = inflation / static_cast<double>(with_inflation);
    return s;
}

std::pair<double, double> mean_h_and_scai(std::span<const MetricsReport> reports) {
    std::vector<const MetricsReport*> members;
    for (const auto& r : reports) members.push_back(&r);
    const auto s = summarize({}, sorted_members(std::move(members)));
    return {s.mean_h, s.mean_scai};
}

}  // namespace

std::vector<CohortSummary> cohort_aggregate(std::span<const MetricsReport> reports,
                                            const Corpus& corpus, CohortDimension dimension,
                                            int reference_year) {
    if (reports.empty()) throw Error(ErrorCode::EmptyInput, "no reports to aggregate");

    std::map<std::pair<std::size_t, int>, std::pair<CohortKey, std::vector<const MetricsReport*>>>
        groups;
    for (const auto& r : reports) {
        auto key = cohort_key_for(corpus, r.researcher_id, dimension, reference_year);
        auto& slot = groups.try_emplace(order_key(key), key, std::vector<const MetricsReport*>{})
                         .first->second;
        slot.second.push_back(&r);
    }

    std::vector<CohortSummary> out;
    out.reserve(groups.size());
    for (auto& [order, group] : groups)
        out.push_back(summarize(group.first, sorted_members(std::move(group.second))));
    return out;
}

void write_cohort_csv(std::span<const CohortSummary> summaries, std::ostream& out) {
    out << "group,avg_scr,mean_inflation_pct,n\n";
    for (const auto& s : summaries) {
        out << s.key.label() << ',' << fmt::format("{:.4f}", s.mean_scr) << ','
            << (s.mean_inflation ? fmt::format("{:.2f}", *s.mean_inflation * 100.0) : std::string())
            << ',' << s.n << '\n';
    }
}

GapReport gap_reduction(std::span<const MetricsReport> group_a_reports,
                        std::span<const MetricsReport> group_b_reports, const CohortKey& group_a,
                        const CohortKey& group_b) {
    if (group_a_reports.empty())
        throw Error(ErrorCode::EmptyGroup, "group " + group_a.label() + " is empty", group_a.label());
    if (group_b_reports.empty())
        throw Error(ErrorCode::EmptyGroup, "group " + group_b.label() + " is empty", group_b.label());
    const auto [h_a, scai_a] = mean_h_and_scai(group_a_reports);
    const auto [h_b, scai_b] = mean_h_and_scai(group_b_reports);

    GapReport g{group_a, group_b};
    g.gap_h = h_a - h_b;
    g.gap_scai = scai_a - scai_b;
    if (g.gap_h == 0.0)
        throw Error(ErrorCode::ZeroGap, "mean h-index gap is zero; reduction undefined");
    g.reduction = 1.0 - g.gap_scai / g.gap_h;
    return g;
}

GapReport gap_reduction(std::span<const MetricsReport> reports, const Corpus& corpus,
                        const CohortKey& group_a, const CohortKey& group_b, int reference_year) {
    std::vector<MetricsReport> a;
    std::vector<MetricsReport> b;
    for (const auto& r : reports) {
        const auto key = cohort_key_for(corpus, r.researcher_id, group_a.dimension, reference_year);
        if (key == group_a) a.push_back(r);
        if (group_b.dimension != group_a.dimension) {
            if (cohort_key_for(corpus, r.researcher_id, group_b.dimension, reference_year) == group_b)
                b.push_back(r);
        } else if (key == group_b) {
            b.push_back(r);
        }
    }
    return gap_reduction(a, b, group_a, group_b);
}

double estimate_misallocation(double total_funding, double metric_weighted_share,
                              double misallocation_rate) {
    if (!(total_funding >= 0.0) || !std::isfinite(total_funding))
        throw Error(ErrorCode::OutOfRange, "total funding must be a finite non-negative amount");
    if (!(metric_weighted_share >= 0.0 && metric_weighted_share <= 1.0))
        throw Error(ErrorCode::OutOfRange, "metric-weighted share must lie in [0, 1]");
    if (!(misallocation_rate >= 0.0 && misallocation_rate <= 1.0))
        throw Error(ErrorCode::OutOfRange, "misallocation rate must lie in [0, 1]");
    return total_funding * metric_weighted_share * misallocation_rate;
}

}  // namespace scai
