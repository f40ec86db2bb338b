#include "scai/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <unordered_set>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/random/poisson_distribution.hpp>
#include <fmt/format.h>

#include "scai/error.hpp"
#include "scai/identity.hpp"
#include "scai/metrics.hpp"

namespace scai {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

enum StreamTag : std::uint64_t {
    kSlotStream = 1,
    kHPermStream = 2,
    kScrPermStream = 3,
    kEdgeStream = 4,
    kCompoundingStream = 5,
};

std::uint64_t mix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Independent, reproducible engine per (seed, tag, a, b).
std::mt19937_64 stream(std::uint64_t seed, std::uint64_t tag, std::uint64_t a = 0,
                       std::uint64_t b = 0) {
    return std::mt19937_64(mix(seed ^ mix(tag ^ mix(a ^ mix(b)))));
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Open-interval variant for quantile functions.
double uniform_open(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(rng() % span);
}

std::vector<std::size_t> shuffled_positions(std::size_t n, std::mt19937_64 rng) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng() % i]);
    return perm;
}

double normal_quantile(double p) {
    return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

double beta_quantile(double mean, double p) {
    if (mean <= 0.0) return 0.0;
    if (mean >= 1.0) return 1.0;
    return boost::math::ibeta_inv(mean * kScrConcentration, (1.0 - mean) * kScrConcentration, p);
}

std::uint64_t h_of_scaled(const std::vector<double>& raw, double scale) {
    std::vector<std::uint64_t> counts(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i)
        counts[i] = static_cast<std::uint64_t>(std::llround(raw[i] * scale));
    return compute_h_index(counts);
}

// Scales a descending raw profile so its h-index reaches `target_h`.
std::vector<std::uint64_t> fit_counts(const std::vector<double>& raw, std::uint64_t target_h) {
    double lo = 0.0;
    double hi = (static_cast<double>(target_h) + 1.0) / raw[target_h - 1];
    for (int i = 0; i < 100; ++i) {
        const double mid = (lo + hi) / 2.0;
        if (h_of_scaled(raw, mid) >= target_h) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    std::vector<std::uint64_t> counts(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i)
        counts[i] = static_cast<std::uint64_t>(std::llround(raw[i] * hi));
    return counts;
}

// Splits `total_self` across papers in proportion to their citation counts,
// respecting per-paper capacity (largest remainder).
std::vector<std::uint64_t> allocate_self(const std::vector<std::uint64_t>& counts,
                                         const std::vector<std::uint64_t>& capacity,
                                         std::uint64_t total_self) {
    const double total = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}));
    std::vector<std::uint64_t> alloc(counts.size(), 0);
    if (total_self == 0 || total == 0.0) return alloc;
    std::vector<double> ideal(counts.size());
    std::uint64_t assigned = 0;
    for (std::size_t j = 0; j < counts.size(); ++j) {
        ideal[j] = static_cast<double>(total_self) * static_cast<double>(counts[j]) / total;
        alloc[j] = std::min(static_cast<std::uint64_t>(std::floor(ideal[j])), capacity[j]);
        assigned += alloc[j];
    }
    std::vector<std::size_t> order(counts.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
        return ideal[a] - std::floor(ideal[a]) > ideal[b] - std::floor(ideal[b]);
    });
    while (assigned < total_self) {
        bool progressed = false;
        for (auto j : order) {
            if (assigned == total_self) break;
            if (alloc[j] < capacity[j]) {
                ++alloc[j];
                ++assigned;
                progressed = true;
            }
        }
        if (!progressed) break;
    }
    return alloc;
}

struct PoolEntry {
    int year;
    std::uint32_t pub;
    std::uint32_t owner;
};

constexpr const char* kFillerResearcher = "synth-external";
constexpr double kMaxExternalBasisScr = 0.95;

Gender gender_from_json(const json& v) {
    if (v.is_null()) return Gender::Unreported;
    const auto s = v.get<std::string>();
    if (s == "male") return Gender::Male;
    if (s == "female") return Gender::Female;
    if (s == "unreported") return Gender::Unreported;
    throw Error(ErrorCode::InvalidSpec, "gender must be \"male\", \"female\" or null");
}

std::optional<CareerStage> stage_from_json(const json& v) {
    if (v.is_null()) return std::nullopt;
    const auto s = v.get<std::string>();
    for (auto stage : {CareerStage::EarlyCareer, CareerStage::MidCareer, CareerStage::Senior})
        if (to_string(stage) == s) return stage;
    throw Error(ErrorCode::InvalidSpec, "unknown career_stage \"" + s + "\"");
}

}  // namespace

std::string_view to_string(HBasis b) { return b == HBasis::External ? "external" : "all"; }

void GeneratorSpec::validate() const {
    auto invalid = [](const std::string& why) { throw Error(ErrorCode::InvalidSpec, why); };
    if (groups.empty()) invalid("spec has no groups");
    if (first_year < kMinYear || last_year > current_year() + 1 || first_year > last_year)
        invalid("years must form a range within [1500, next year]");
    if (!(compounding_rate >= 0.0) || !std::isfinite(compounding_rate))
        invalid("compounding_rate must be >= 0");
    if (compounding_horizon_years < 1) invalid("compounding_horizon_years must be >= 1");
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const auto& grp = groups[g];
        const auto where = "group " + std::to_string(g) + ": ";
        if (grp.n_researchers < 1) invalid(where + "n_researchers must be >= 1");
        if (!(grp.target_mean_scr >= 0.0 && grp.target_mean_scr <= 1.0))
            invalid(where + "target_mean_scr must lie in [0, 1]");
        if (h_basis == HBasis::External && grp.target_mean_scr > kMaxExternalBasisScr)
            invalid(where + fmt::format("target_mean_scr above {}", kMaxExternalBasisScr) +
                    " cannot be added on top of external citations");
        if (!(grp.target_mean_h >= 1.0) || !std::isfinite(grp.target_mean_h))
            invalid(where + "target_mean_h must be >= 1");
        if (grp.career_stage == CareerStage::MidCareer && last_year - first_year < 10)
            invalid(where + "year range too short for mid-career researchers");
        if (grp.career_stage == CareerStage::Senior && last_year - first_year < 21)
            invalid(where + "year range too short for senior researchers");
    }
}

GeneratorSpec generator_spec_from_json(const json& j) {
    GeneratorSpec spec;
    try {
        if (!j.is_object()) throw Error(ErrorCode::MalformedRecord, "spec must be a JSON object");
        spec.seed = j.at("seed").get<std::uint64_t>();
        if (auto it = j.find("years"); it != j.end()) {
            if (!it->is_array() || it->size() != 2)
                throw Error(ErrorCode::MalformedRecord, "years must be [first, last]");
            spec.first_year = (*it)[0].get<int>();
            spec.last_year = (*it)[1].get<int>();
        }
        spec.compounding_rate = j.value("compounding_rate", spec.compounding_rate);
        spec.compounding_horizon_years =
            j.value("compounding_horizon_years", spec.compounding_horizon_years);
        spec.apply_compounding = j.value("apply_compounding", false);
        if (const auto basis = j.value("h_basis", std::string("all")); basis == "external") {
            spec.h_basis = HBasis::External;
        } else if (basis != "all") {
            throw Error(ErrorCode::InvalidSpec, "h_basis must be \"all\" or \"external\"");
        }
        for (const auto& g : j.at("groups")) {
            GroupSpec grp;
            const auto discipline = g.at("discipline").get<std::string>();
            auto d = parse_discipline(discipline);
            if (!d) throw Error(ErrorCode::InvalidSpec, "unknown discipline \"" + discipline + "\"");
            grp.discipline = *d;
            grp.gender = gender_from_json(g.value("gender", json(nullptr)));
            grp.career_stage = stage_from_json(g.value("career_stage", json(nullptr)));
            const auto n = g.at("n_researchers").get<std::int64_t>();
            if (n < 1) throw Error(ErrorCode::InvalidSpec, "n_researchers must be >= 1");
            grp.n_researchers = static_cast<std::size_t>(n);
            grp.target_mean_scr = g.at("target_mean_scr").get<double>();
            grp.target_mean_h = g.at("target_mean_h").get<double>();
            spec.groups.push_back(grp);
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::MalformedRecord, std::string("bad generator spec: ") + e.what());
    }
    spec.validate();
    return spec;
}

GeneratorSpec load_generator_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string(), path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::MalformedRecord, path.string() + ": " + e.what(), path.string());
    }
    return generator_spec_from_json(j);
}

ordered_json to_json(const GeneratorSpec& spec) {
    ordered_json j;
    j["seed"] = spec.seed;
    j["years"] = {spec.first_year, spec.last_year};
    j["compounding_rate"] = spec.compounding_rate;
    j["compounding_horizon_years"] = spec.compounding_horizon_years;
    j["apply_compounding"] = spec.apply_compounding;
    j["h_basis"] = std::string(to_string(spec.h_basis));
    j["groups"] = ordered_json::array();
    for (const auto& g : spec.groups) {
        ordered_json o;
        o["discipline"] = std::string(to_string(g.discipline));
        o["gender"] = g.gender == Gender::Unreported ? ordered_json(nullptr)
                                                     : ordered_json(std::string(to_string(g.gender)));
        o["career_stage"] = g.career_stage ? ordered_json(std::string(to_string(*g.career_stage)))
                                           : ordered_json(nullptr);
        o["n_researchers"] = g.n_researchers;
        o["target_mean_scr"] = g.target_mean_scr;
        o["target_mean_h"] = g.target_mean_h;
        j["groups"].push_back(std::move(o));
    }
    return j;
}

Corpus generate_synthetic_corpus(const GeneratorSpec& spec) {
    spec.validate();

    struct Plan {
        std::string id;
        std::vector<std::uint32_t> pubs;  // global indices, ascending year
        std::vector<std::uint64_t> counts;
        double scr = 0.0;
    };

    std::vector<Researcher> researchers;
    std::vector<Publication> pubs;
    std::vector<Plan> plans;

    const int group_width = static_cast<int>(std::to_string(spec.groups.size() - 1).size());
    for (std::size_t g = 0; g < spec.groups.size(); ++g) {
        const auto& grp = spec.groups[g];
        const std::size_t n = grp.n_researchers;
        const int slot_width = static_cast<int>(std::to_string(n - 1).size());
        const auto h_perm = shuffled_positions(n, stream(spec.seed, kHPermStream, n));
        const auto scr_perm = shuffled_positions(n, stream(spec.seed, kScrPermStream, n));

        for (std::size_t i = 0; i < n; ++i) {
            auto rng = stream(spec.seed, kSlotStream, i);
            const double u_h = (static_cast<double>(h_perm[i]) + uniform_open(rng)) / static_cast<double>(n);
            const double u_scr = (static_cast<double>(scr_perm[i]) + uniform_open(rng)) / static_cast<double>(n);

            const double h_real = grp.target_mean_h *
                                  std::exp(kHSpreadSigma * normal_quantile(u_h) -
                                           kHSpreadSigma * kHSpreadSigma / 2.0);
            const auto h = static_cast<std::uint64_t>(std::max(1.0, std::round(h_real)));

            int lo = 2;
            int hi = 40;
            if (grp.career_stage == CareerStage::EarlyCareer) {
                hi = 9;
            } else if (grp.career_stage == CareerStage::MidCareer) {
                lo = 10;
                hi = 20;
            } else if (grp.career_stage == CareerStage::Senior) {
                lo = 21;
            }
            const int offset = std::min(uniform_int(rng, lo, hi), spec.last_year - spec.first_year);
            const int start = spec.last_year - offset;

            const auto n_pubs = std::max<std::size_t>(
                h + 1, static_cast<std::size_t>(std::ceil(kPublicationsPerH * static_cast<double>(h))));
            std::vector<int> years{start};
            for (std::size_t k = 1; k < n_pubs; ++k) years.push_back(uniform_int(rng, start, spec.last_year));
            std::sort(years.begin(), years.end());

            std::vector<double> raw(n_pubs);
            for (std::size_t k = 0; k < n_pubs; ++k) {
                const double p = (static_cast<double>(k) + uniform_open(rng)) / static_cast<double>(n_pubs);
                raw[n_pubs - 1 - k] = std::exp(kCountSigma * normal_quantile(p));
            }

            Plan plan;
            plan.id = fmt::format("g{:0{}}-r{:0{}}", g, group_width, i, slot_width);
            plan.counts = fit_counts(raw, h);
            plan.scr = beta_quantile(grp.target_mean_scr, u_scr);

            Researcher r;
            r.researcher_id = plan.id;
            r.name_variants = {"Synthetic Author " + plan.id};
            r.gender = grp.gender;
            r.first_pub_year = start;
            r.discipline = grp.discipline;
            researchers.push_back(std::move(r));

            const int pub_width = static_cast<int>(std::to_string(n_pubs - 1).size());
            for (std::size_t k = 0; k < n_pubs; ++k) {
                plan.pubs.push_back(static_cast<std::uint32_t>(pubs.size()));
                Publication p;
                p.pub_id = fmt::format("{}-p{:0{}}", plan.id, k, pub_width);
                p.title = fmt::format("Synthetic study {} of {}", k, plan.id);
                p.year = years[k];
                p.author_ids = {plan.id};
                p.discipline = grp.discipline;
                pubs.push_back(std::move(p));
            }
            plans.push_back(std::move(plan));
        }
    }

    std::vector<PoolEntry> pool;
    pool.reserve(pubs.size());
    for (std::uint32_t r = 0; r < plans.size(); ++r)
        for (auto p : plans[r].pubs) pool.push_back({pubs[p].year, p, r});
    std::sort(pool.begin(), pool.end(), [](const auto& a, const auto& b) {
        return a.year != b.year ? a.year < b.year : a.pub < b.pub;
    });

    std::map<int, std::vector<std::string>> fillers;
    std::vector<Publication> filler_pubs;
    auto filler = [&](int year, std::size_t k) -> const std::string& {
        auto& ids = fillers[year];
        while (ids.size() <= k) {
            Publication p;
            p.pub_id = fmt::format("{}-{}-{:04}", kFillerResearcher, year, ids.size());
            p.title = "External citing work";
            p.year = year;
            p.author_ids = {kFillerResearcher};
            p.discipline = Discipline::Other;
            ids.push_back(p.pub_id);
            filler_pubs.push_back(std::move(p));
        }
        return ids[k];
    };

    std::vector<CitationEdge> edges;
    for (std::uint32_t r = 0; r < plans.size(); ++r) {
        const auto& plan = plans[r];
        auto rng = stream(spec.seed, kEdgeStream, r);
        const std::size_t n = plan.pubs.size();

        const bool on_top = spec.h_basis == HBasis::External;
        std::vector<std::uint64_t> capacity(n);
        for (std::size_t j = 0; j < n; ++j) {
            std::uint64_t later = 0;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j && pubs[plan.pubs[k]].year >= pubs[plan.pubs[j]].year) ++later;
            capacity[j] = on_top ? later : std::min(plan.counts[j], later);
        }
        const auto total = std::accumulate(plan.counts.begin(), plan.counts.end(), std::uint64_t{0});
        // On top of external counts, self / (external + self) = scr.
        const double scr = std::min(plan.scr, kMaxExternalBasisScr);
        const double share = on_top ? scr / (1.0 - scr) : plan.scr;
        const auto target_self = static_cast<std::uint64_t>(std::llround(share * static_cast<double>(total)));
        const auto self = allocate_self(plan.counts, capacity, target_self);
        std::vector<std::uint64_t> counts = plan.counts;
        if (on_top)
            for (std::size_t j = 0; j < n; ++j) counts[j] += self[j];

        for (std::size_t j = 0; j < n; ++j) {
            const auto cited = plan.pubs[j];
            const int year = pubs[cited].year;

            std::vector<std::uint32_t> own;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j && pubs[plan.pubs[k]].year >= year) own.push_back(plan.pubs[k]);
            for (std::size_t s = 0; s < self[j]; ++s) {
                std::swap(own[s], own[s + rng() % (own.size() - s)]);
                edges.push_back({pubs[own[s]].pub_id, pubs[cited].pub_id});
            }

            const std::uint64_t external = counts[j] - self[j];
            if (external == 0) continue;
            const auto begin = std::lower_bound(pool.begin(), pool.end(), year,
                                                [](const PoolEntry& e, int y) { return e.year < y; });
            const auto suffix = static_cast<std::size_t>(pool.end() - begin);
            const std::size_t own_in_suffix = own.size() + 1;
            const std::size_t eligible = suffix - own_in_suffix;

            std::vector<std::uint32_t> picked;
            if (external * 2 <= eligible) {
                std::unordered_set<std::uint32_t> seen;
                while (picked.size() < external) {
                    const auto& e = begin[static_cast<std::ptrdiff_t>(rng() % suffix)];
                    if (e.owner == r || !seen.insert(e.pub).second) continue;
                    picked.push_back(e.pub);
                }
            } else {
                std::vector<std::uint32_t> candidates;
                for (auto it = begin; it != pool.end(); ++it)
                    if (it->owner != r) candidates.push_back(it->pub);
                const auto take = std::min<std::size_t>(external, candidates.size());
                for (std::size_t s = 0; s < take; ++s) {
                    std::swap(candidates[s], candidates[s + rng() % (candidates.size() - s)]);
                    picked.push_back(candidates[s]);
                }
            }
            for (auto p : picked) edges.push_back({pubs[p].pub_id, pubs[cited].pub_id});
            for (std::size_t k = picked.size(); k < external; ++k)
                edges.push_back({filler(year, k - picked.size()), pubs[cited].pub_id});
        }
    }

    CorpusBuilder builder({"synthetic:seed=" + std::to_string(spec.seed), std::string(kJsonlFormatVersion)});
    for (auto& r : researchers) builder.add_researcher(std::move(r));
    if (!filler_pubs.empty()) {
        Researcher ext;
        ext.researcher_id = kFillerResearcher;
        ext.name_variants = {"External Citing Author"};
        builder.add_researcher(std::move(ext));
    }
    for (auto& p : pubs) builder.add_publication(std::move(p));
    for (auto& p : filler_pubs) builder.add_publication(std::move(p));
    for (auto& e : edges) builder.add_citation(std::move(e));
    return std::move(builder).build();
}

Corpus apply_compounding(const Corpus& corpus, double rate, int horizon_years, std::uint64_t seed) {
    if (!(rate >= 0.0) || !std::isfinite(rate))
        throw Error(ErrorCode::InvalidRate, "compounding rate must be a finite value >= 0");
    if (horizon_years < 1) throw Error(ErrorCode::InvalidRate, "compounding horizon must be >= 1 year");
    if (rate == 0.0) return corpus;

    auto rng = stream(seed, kCompoundingStream);
    boost::random::poisson_distribution<int, double> spawn(rate);
    const int max_year = current_year() + 1;

    struct Spawned {
        int year;
        PubIndex cited;
    };
    std::vector<Spawned> spawned;
    for (const auto& e : corpus.edges()) {
        if (!author_overlap(corpus, e.citing, e.cited).same) continue;
        const int base = corpus.publication(e.citing).year;
        const int k = spawn(rng);
        for (int i = 0; i < k; ++i) {
            const int year = base + 1 + static_cast<int>(uniform01(rng) * horizon_years);
            spawned.push_back({std::min(year, max_year), e.cited});
        }
    }
    if (spawned.empty()) return corpus;

    std::string author = "compounding-external";
    while (corpus.find_researcher(author)) author += "_";
    std::string prefix = "compounding-";
    auto clashes = [&](const std::string& p) {
        for (const auto& pub : corpus.publications())
            if (pub.pub_id.starts_with(p)) return true;
        return false;
    };
    while (clashes(prefix)) prefix += "_";

    CorpusBuilder builder = to_builder(corpus);
    Researcher ext;
    ext.researcher_id = author;
    ext.name_variants = {"Compounding External Author"};
    builder.add_researcher(std::move(ext));
    for (std::size_t i = 0; i < spawned.size(); ++i) {
        Publication p;
        p.pub_id = fmt::format("{}{:07}", prefix, i);
        p.title = "Follow-up citing work";
        p.year = spawned[i].year;
        p.author_ids = {author};
        p.discipline = corpus.publication(spawned[i].cited).discipline;
        builder.add_publication(p);
        builder.add_citation({p.pub_id, corpus.publication(spawned[i].cited).pub_id});
    }
    return std::move(builder).build();
}

}  // namespace scai
