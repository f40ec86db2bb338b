#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "scai/corpus.hpp"
#include "scai/metrics.hpp"

namespace scai {

enum class CareerStage { EarlyCareer, MidCareer, Senior };

std::string_view to_string(CareerStage s);

// < 10 years since first publication: early; 10..20 inclusive: mid; > 20: senior.
CareerStage career_stage(int first_pub_year, int reference_year);

enum class CohortDimension { Discipline, Gender, CareerStage };

std::string_view to_string(CohortDimension d);

// Bucket for researchers whose value on a dimension is unknown.
struct Unreported {
    bool operator==(const Unreported&) const = default;
};

struct CohortKey {
    using Value = std::variant<Discipline, Gender, CareerStage, Unreported>;

    CohortDimension dimension = CohortDimension::Discipline;
    Value value;

    static CohortKey of(Discipline d) { return {CohortDimension::Discipline, d}; }
    static CohortKey of(Gender g);
    static CohortKey of(CareerStage s) { return {CohortDimension::CareerStage, s}; }

    std::string label() const;
    bool operator==(const CohortKey&) const = default;
};

// Group of `researcher_id` along `dimension`. Gender::Unreported and an
// underivable career stage both map to the Unreported bucket.
CohortKey cohort_key_for(const Corpus& corpus, std::string_view researcher_id,
                         CohortDimension dimension, int reference_year);

struct CohortSummary {
    CohortKey key;
    std::size_t n = 0;
    double mean_scr = 0.0;
    // Over researchers with a defined inflation; absent when none has one.
    std::optional<double> mean_inflation;
    std::size_t inflation_excluded = 0;
    double mean_h = 0.0;
    double mean_scai = 0.0;
};

// One summary per observed group, in enum order with Unreported last.
// Throws Error{EmptyInput | UnknownResearcher}.
std::vector<CohortSummary> cohort_aggregate(std::span<const MetricsReport> reports,
                                            const Corpus& corpus, CohortDimension dimension,
                                            int reference_year = current_year());

// group, avg_scr, mean_inflation_pct, n
void write_cohort_csv(std::span<const CohortSummary> summaries, std::ostream& out);

struct GapReport {
    CohortKey group_a;
    CohortKey group_b;
    double gap_h = 0.0;
    double gap_scai = 0.0;
    double reduction = 0.0;
};

// Throws Error{EmptyGroup | ZeroGap}.
GapReport gap_reduction(std::span<const MetricsReport> reports, const Corpus& corpus,
                        const CohortKey& group_a, const CohortKey& group_b,
                        int reference_year = current_year());

// Same computation over two explicit report sets.
GapReport gap_reduction(std::span<const MetricsReport> group_a_reports,
                        std::span<const MetricsReport> group_b_reports, const CohortKey& group_a,
                        const CohortKey& group_b);

// total_funding * metric_weighted_share * misallocation_rate.
// Throws Error{OutOfRange}.
double estimate_misallocation(double total_funding, double metric_weighted_share,
                              double misallocation_rate);

}  // namespace scai
