#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "scai/metrics.hpp"

namespace scai {

struct HistogramBin {
    double lower_pct = 0.0;
    double upper_pct = 0.0;
    std::size_t count = 0;
};

struct AdjustmentHistogram {
    std::vector<HistogramBin> bins;
    std::size_t eligible = 0;
};

// 100 * (h - scai) / h. Only meaningful for h > 0.
double adjustment_pct(const MetricsReport& report);

// Bins of `bin_width_pct` starting at 0%; the last bin also takes everything
// beyond its upper edge. Reports with h == 0 are skipped.
// Throws Error{NoEligibleReports | OutOfRange}.
AdjustmentHistogram bin_adjustments(std::span<const MetricsReport> reports, std::size_t bins,
                                    double bin_width_pct = 5.0);

void write_histogram_csv(const AdjustmentHistogram& h, std::ostream& out);
void write_histogram_svg(const AdjustmentHistogram& h, std::ostream& out);

// Writes histogram.csv and histogram.svg into `output_dir`.
AdjustmentHistogram emit_histogram(std::span<const MetricsReport> reports, std::size_t bins,
                                   const std::filesystem::path& output_dir,
                                   double bin_width_pct = 5.0);

}  // namespace scai
