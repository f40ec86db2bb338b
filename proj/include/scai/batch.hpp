#pragma once

#include <map>
#include <vector>

#include "scai/corpus.hpp"
#include "scai/identity.hpp"
#include "scai/metrics.hpp"

namespace scai {

// Parameter lookup by discipline, falling back to a shared default.
class DisciplineParams {
public:
    DisciplineParams() = default;
    explicit DisciplineParams(MetricParams fallback) : fallback_(fallback) {}

    void set(Discipline d, MetricParams p) { overrides_[d] = p; }
    const MetricParams& get(Discipline d) const;
    const MetricParams& fallback() const { return fallback_; }

private:
    MetricParams fallback_;
    std::map<Discipline, MetricParams> overrides_;
};

// Reports for every researcher, sorted by researcher_id. Researchers are
// spread across OpenMP threads; results are identical to the serial path.
std::vector<MetricsReport> compute_reports(const Corpus& corpus, const DisciplineParams& params,
                                           SelfCitationMode mode = SelfCitationMode::Focal);

// Single-threaded reference used by tests and the benchmark.
std::vector<MetricsReport> compute_reports_serial(const Corpus& corpus,
                                                  const DisciplineParams& params,
                                                  SelfCitationMode mode = SelfCitationMode::Focal);

}  // namespace scai
