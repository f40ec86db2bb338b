#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "scai/corpus.hpp"
#include "scai/identity.hpp"

namespace scai {

// Free parameters of the adjusted index: penalty weight (alpha), tolerated
// self-citation ratio (beta) and penalty growth exponent (gamma).
struct MetricParams {
    double alpha = 0.5;
    double beta = 0.1;
    double gamma = 1.5;

    bool valid() const;
    // Throws Error{InvalidParams}.
    void validate() const;

    bool operator==(const MetricParams&) const = default;
};

struct MetricsReport {
    std::string researcher_id;
    std::uint64_t h_index = 0;
    std::uint64_t h_index_external = 0;
    std::uint64_t i10_index = 0;
    std::uint64_t total_citations = 0;
    std::uint64_t self_citations = 0;
    double scr = 0.0;
    double scai = 0.0;
    std::uint64_t s_index = 0;
    std::optional<double> inflation;
    std::map<int, double> yearly_scr;

    bool operator==(const MetricsReport&) const = default;
};

// Largest h such that at least h of the counts are >= h.
std::uint64_t compute_h_index(std::span<const std::uint64_t> citation_counts);

// Number of counts >= 10.
std::uint64_t compute_i10(std::span<const std::uint64_t> citation_counts);

// self / total, with 0/0 defined as 0. Throws Error{SelfExceedsTotal}.
double compute_scr(std::uint64_t self_citations, std::uint64_t total_citations);

// h - alpha * (scr - beta)^gamma * h for scr above beta, h otherwise, never
// below zero. Throws Error{InvalidParams} for bad params or scr outside [0,1].
double compute_scai(std::uint64_t h, double scr, const MetricParams& params = {});

// h-style index over per-publication self-citation counts.
std::uint64_t compute_s_index(std::span<const std::uint64_t> self_citation_counts);

// (h_all - h_external) / h_external, absent when h_external == 0.
// Throws Error{ExternalExceedsAll}.
std::optional<double> compute_inflation(std::uint64_t h_all, std::uint64_t h_external);

MetricsReport report_from_tally(const CitationTally& tally, const MetricParams& params);

// Throws Error{UnknownResearcher}.
MetricsReport compute_report(const Corpus& corpus, std::string_view focal,
                             const MetricParams& params = {},
                             SelfCitationMode mode = SelfCitationMode::Focal);

}  // namespace scai
