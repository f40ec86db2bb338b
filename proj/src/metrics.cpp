#include "scai/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "scai/error.hpp"

namespace scai {

bool MetricParams::valid() const {
    return std::isfinite(alpha) && std::isfinite(beta) && std::isfinite(gamma) && alpha >= 0.0 &&
           beta >= 0.0 && beta <= 1.0 && gamma >= 1.0;
}

void MetricParams::validate() const {
    if (!valid())
        throw Error(ErrorCode::InvalidParams,
                    "invalid parameters: need alpha >= 0, 0 <= beta <= 1, gamma >= 1");
}

std::uint64_t compute_h_index(std::span<const std::uint64_t> citation_counts) {
    std::vector<std::uint64_t> sorted(citation_counts.begin(), citation_counts.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    std::uint64_t h = 0;
    while (h < sorted.size() && sorted[h] >= h + 1) ++h;
    return h;
}

std::uint64_t compute_i10(std::span<const std::uint64_t> citation_counts) {
    return static_cast<std::uint64_t>(
        std::count_if(citation_counts.begin(), citation_counts.end(), [](auto c) { return c >= 10; }));
}

double compute_scr(std::uint64_t self_citations, std::uint64_t total_citations) {
    if (self_citations > total_citations)
        throw Error(ErrorCode::SelfExceedsTotal, "self-citations exceed total citations");
    if (total_citations == 0) return 0.0;
    return static_cast<double>(self_citations) / static_cast<double>(total_citations);
}

double compute_scai(std::uint64_t h, double scr, const MetricParams& params) {
    params.validate();
    if (!(scr >= 0.0 && scr <= 1.0))
        throw Error(ErrorCode::InvalidParams, "self-citation ratio must lie in [0, 1]");
    const double hd = static_cast<double>(h);
    // (scr - beta)^gamma has no real value below the threshold.
    if (scr <= params.beta) return hd;
    const double adjusted = hd - params.alpha * std::pow(scr - params.beta, params.gamma) * hd;
    return std::max(0.0, adjusted);
}

std::uint64_t compute_s_index(std::span<const std::uint64_t> self_citation_counts) {
    return compute_h_index(self_citation_counts);
}

std::optional<double> compute_inflation(std::uint64_t h_all, std::uint64_t h_external) {
    if (h_external > h_all)
        throw Error(ErrorCode::ExternalExceedsAll, "external h-index exceeds overall h-index");
    if (h_external == 0) return std::nullopt;
    return static_cast<double>(h_all - h_external) / static_cast<double>(h_external);
}

MetricsReport report_from_tally(const CitationTally& tally, const MetricParams& params) {
    std::vector<std::uint64_t> totals;
    std::vector<std::uint64_t> externals;
    std::vector<std::uint64_t> selfs;
    totals.reserve(tally.publications.size());
    externals.reserve(tally.publications.size());
    selfs.reserve(tally.publications.size());
    for (const auto& p : tally.publications) {
        totals.push_back(p.total);
        externals.push_back(p.external);
        selfs.push_back(p.self);
    }

    MetricsReport r;
    r.researcher_id = tally.researcher_id;
    r.h_index = compute_h_index(totals);
    r.h_index_external = compute_h_index(externals);
    r.i10_index = compute_i10(totals);
    r.total_citations = tally.total();
    r.self_citations = tally.self();
    r.scr = compute_scr(r.self_citations, r.total_citations);
    r.scai = compute_scai(r.h_index, r.scr, params);
    r.s_index = compute_s_index(selfs);
    r.inflation = compute_inflation(r.h_index, r.h_index_external);
    for (const auto& [year, y] : tally.by_year) r.yearly_scr[year] = compute_scr(y.self, y.total);
    return r;
}

MetricsReport compute_report(const Corpus& corpus, std::string_view focal,
                             const MetricParams& params, SelfCitationMode mode) {
    params.validate();
    return report_from_tally(count_citations(corpus, focal, mode), params);
}

}  // namespace scai
