// Serial vs OpenMP report computation on a generated corpus.
// Usage: bench_reports [researchers per group] [repetitions]

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include <omp.h>

#include "scai/batch.hpp"
#include "scai/synth.hpp"

using namespace scai;

namespace {

template <class F>
double best_of(int reps, F&& f) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    const std::size_t per_group = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 100;
    const int reps = argc > 2 ? std::atoi(argv[2]) : 3;

    GeneratorSpec spec;
    spec.seed = 42;
    for (auto d : {Discipline::ComputerScience, Discipline::LifeSciences, Discipline::PhysicalSciences,
                   Discipline::SocialSciences, Discipline::Engineering, Discipline::Humanities})
        spec.groups.push_back({d, Gender::Unreported, std::nullopt, per_group, 0.18, 20.0});
    const auto corpus = generate_synthetic_corpus(spec);
    const DisciplineParams params;

    std::vector<MetricsReport> serial;
    std::vector<MetricsReport> parallel;
    const double ts = best_of(reps, [&] { serial = compute_reports_serial(corpus, params); });
    const double tp = best_of(reps, [&] { parallel = compute_reports(corpus, params); });

    std::printf("researchers %zu  publications %zu  citations %zu  threads %d\n", corpus.researchers().size(),
                corpus.publications().size(), corpus.edges().size(), omp_get_max_threads());
    std::printf("serial   %8.3f s\nopenmp   %8.3f s\nspeedup  %8.2fx\n", ts, tp, ts / tp);
    if (serial != parallel) {
        std::printf("MISMATCH between serial and parallel reports\n");
        return 1;
    }
    std::printf("results identical (%zu reports)\n", serial.size());
    return 0;
}
