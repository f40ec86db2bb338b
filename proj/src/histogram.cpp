#include "scai/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

#include <fmt/format.h>

#include "scai/error.hpp"

namespace scai {

double adjustment_pct(const MetricsReport& report) {
    const double h = static_cast<double>(report.h_index);
    return 100.0 * (h - report.scai) / h;
}

AdjustmentHistogram bin_adjustments(std::span<const MetricsReport> reports, std::size_t bins,
                                    double bin_width_pct) {
    if (bins < 1) throw Error(ErrorCode::OutOfRange, "histogram needs at least one bin");
    if (!(bin_width_pct > 0.0) || !std::isfinite(bin_width_pct))
        throw Error(ErrorCode::OutOfRange, "bin width must be positive");

    AdjustmentHistogram hist;
    for (std::size_t b = 0; b < bins; ++b) {
        hist.bins.push_back({static_cast<double>(b) * bin_width_pct,
                             static_cast<double>(b + 1) * bin_width_pct, 0});
    }
    for (const auto& r : reports) {
        if (r.h_index == 0) continue;
        const double pct = std::max(0.0, adjustment_pct(r));
        const auto idx = std::min(static_cast<std::size_t>(std::floor(pct / bin_width_pct)), bins - 1);
        ++hist.bins[idx].count;
        ++hist.eligible;
    }
    if (hist.eligible == 0)
        throw Error(ErrorCode::NoEligibleReports, "no report has a positive h-index");
    return hist;
}

void write_histogram_csv(const AdjustmentHistogram& h, std::ostream& out) {
    out << "bin_lower_pct,bin_upper_pct,count\n";
    for (const auto& b : h.bins) out << fmt::format("{:g},{:g},{}\n", b.lower_pct, b.upper_pct, b.count);
}

void write_histogram_svg(const AdjustmentHistogram& h, std::ostream& out) {
    constexpr double kWidth = 640;
    constexpr double kHeight = 420;
    constexpr double kLeft = 70;
    constexpr double kRight = 20;
    constexpr double kTop = 40;
    constexpr double kBottom = 60;
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;

    std::size_t peak = 1;
    for (const auto& b : h.bins) peak = std::max(peak, b.count);
    // Round the y-axis up to a multiple of a 1/2/5 step.
    double step = std::pow(10.0, std::floor(std::log10(static_cast<double>(peak))));
    if (static_cast<double>(peak) / step > 5) {
        step *= 2;
    } else if (static_cast<double>(peak) / step <= 2 && step >= 10) {
        step /= 2;
    }
    const double y_max = std::max(step, std::ceil(static_cast<double>(peak) / step) * step);
    const double bar_w = plot_w / static_cast<double>(h.bins.size());
    const double x_axis = kTop + plot_h;

    out << fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
        "viewBox=\"0 0 {0} {1}\" font-family=\"sans-serif\" font-size=\"12\">\n",
        kWidth, kHeight);
    out << fmt::format("<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n", kWidth, kHeight);
    out << fmt::format(
        "<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
        "Distribution of SCAI Adjustments</text>\n",
        kLeft + plot_w / 2);

    for (double y = 0; y <= y_max + 1e-9; y += step) {
        const double py = x_axis - plot_h * y / y_max;
        out << fmt::format(
            "<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" stroke=\"#dddddd\"/>\n",
            kLeft, py, kLeft + plot_w, py);
        out << fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{:g}</text>\n",
                           kLeft - 6, py + 4, y);
    }
    for (std::size_t i = 0; i < h.bins.size(); ++i) {
        const auto& b = h.bins[i];
        const double bh = plot_h * static_cast<double>(b.count) / y_max;
        out << fmt::format(
            "<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" "
            "fill=\"#8c9eff\" stroke=\"#3949ab\"><title>{:g}-{:g}%: {}</title></rect>\n",
            kLeft + bar_w * static_cast<double>(i) + 1, x_axis - bh, bar_w - 2, bh, b.lower_pct,
            b.upper_pct, b.count);
        out << fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{:g}</text>\n",
                           kLeft + bar_w * static_cast<double>(i), x_axis + 16, b.lower_pct);
    }
    if (!h.bins.empty()) {
        out << fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{:g}</text>\n",
                           kLeft + plot_w, x_axis + 16, h.bins.back().upper_pct);
    }
    out << fmt::format(
        "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2:.1f}\" stroke=\"black\"/>\n"
        "<line x1=\"{0}\" y1=\"{2:.1f}\" x2=\"{3:.1f}\" y2=\"{2:.1f}\" stroke=\"black\"/>\n",
        kLeft, kTop, x_axis, kLeft + plot_w);
    out << fmt::format(
        "<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">Adjustment Magnitude (%)</text>\n",
        kLeft + plot_w / 2, kHeight - 18);
    out << fmt::format(
        "<text x=\"18\" y=\"{0:.1f}\" text-anchor=\"middle\" "
        "transform=\"rotate(-90 18 {0:.1f})\">Frequency</text>\n",
        kTop + plot_h / 2);
    out << "</svg>\n";
}

AdjustmentHistogram emit_histogram(std::span<const MetricsReport> reports, std::size_t bins,
                                   const std::filesystem::path& output_dir, double bin_width_pct) {
    auto hist = bin_adjustments(reports, bins, bin_width_pct);
    std::filesystem::create_directories(output_dir);
    std::ofstream csv(output_dir / "histogram.csv", std::ios::binary);
    std::ofstream svg(output_dir / "histogram.svg", std::ios::binary);
    if (!csv || !svg)
        throw Error(ErrorCode::Io, "cannot write histogram into " + output_dir.string(),
                    output_dir.string());
    write_histogram_csv(hist, csv);
    write_histogram_svg(hist, svg);
    return hist;
}

}  // namespace scai
