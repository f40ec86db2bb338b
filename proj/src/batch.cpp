#include "scai/batch.hpp"

#include <algorithm>
#include <exception>

namespace scai {

const MetricParams& DisciplineParams::get(Discipline d) const {
    auto it = overrides_.find(d);
    return it == overrides_.end() ? fallback_ : it->second;
}

namespace {

MetricsReport report_for(const Corpus& corpus, ResearcherIndex r, const DisciplineParams& params,
                         SelfCitationMode mode) {
    return report_from_tally(count_citations(corpus, r, mode),
                             params.get(corpus.researcher(r).discipline));
}

void sort_by_id(std::vector<MetricsReport>& reports) {
    std::sort(reports.begin(), reports.end(),
              [](const auto& a, const auto& b) { return a.researcher_id < b.researcher_id; });
}

}  // namespace

std::vector<MetricsReport> compute_reports(const Corpus& corpus, const DisciplineParams& params,
                                           SelfCitationMode mode) {
    const auto n = static_cast<std::int64_t>(corpus.researchers().size());
    std::vector<MetricsReport> reports(static_cast<std::size_t>(n));
    std::exception_ptr failure;

    #pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            reports[static_cast<std::size_t>(i)] =
                report_for(corpus, static_cast<ResearcherIndex>(i), params, mode);
        } catch (...) {
            #pragma omp critical(scai_batch_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    sort_by_id(reports);
    return reports;
}

std::vector<MetricsReport> compute_reports_serial(const Corpus& corpus,
                                                  const DisciplineParams& params,
                                                  SelfCitationMode mode) {
    std::vector<MetricsReport> reports;
    reports.reserve(corpus.researchers().size());
    for (ResearcherIndex r = 0; r < corpus.researchers().size(); ++r)
        reports.push_back(report_for(corpus, r, params, mode));
    sort_by_id(reports);
    return reports;
}

}  // namespace scai
