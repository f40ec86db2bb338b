#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "scai/batch.hpp"
#include "scai/metrics.hpp"
#include "scai/report_io.hpp"
#include "support.hpp"

using namespace scai;
using scai::test::error_of;

namespace {

using Counts = std::vector<std::uint64_t>;

// Defining predicate, checked for every candidate h.
std::uint64_t brute_h(const Counts& c) {
    std::uint64_t best = 0;
    for (std::uint64_t h = 0; h <= c.size(); ++h) {
        std::uint64_t at_least = 0;
        for (auto x : c) at_least += x >= h;
        if (at_least >= h) best = h;
    }
    return best;
}

}  // namespace

TEST_CASE("h-index examples") {
    CHECK(compute_h_index(Counts{}) == 0);
    CHECK(compute_h_index(Counts{3, 0, 6, 1, 5}) == 3);
    CHECK(compute_h_index(Counts(10, 25)) == 10);
    CHECK(compute_h_index(Counts{0, 0, 0}) == 0);
    CHECK(compute_h_index(Counts{1}) == 1);
}

TEST_CASE("h-index matches the brute-force predicate") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 1000; ++i) {
        Counts c(rng() % 51);
        for (auto& x : c) x = rng() % 201;
        CHECK(compute_h_index(c) == brute_h(c));
    }
}

TEST_CASE("i10") {
    CHECK(compute_i10(Counts{}) == 0);
    CHECK(compute_i10(Counts{10, 9, 11}) == 2);
    std::mt19937_64 rng(8);
    Counts c(50);
    for (auto& x : c) x = rng() % 30;
    std::uint64_t expected = 0;
    for (auto x : c)
        if (x >= 10) ++expected;
    CHECK(compute_i10(c) == expected);
}

TEST_CASE("scr") {
    CHECK(compute_scr(21, 100) == 0.21);
    CHECK(compute_scr(0, 0) == 0.0);
    CHECK(compute_scr(12, 100) == 0.12);
    CHECK(error_of([] { compute_scr(3, 2); }) == ErrorCode::SelfExceedsTotal);
}

TEST_CASE("scai examples") {
    CHECK(compute_scai(20, 0.10) == 20.0);
    CHECK(std::abs(compute_scai(20, 0.20) - 19.6838) <= 1e-4);
    const double s = compute_scai(30, 0.73);
    CHECK(std::abs(s - 22.50) <= 0.01);
    CHECK(std::abs((30 - s) / 30 - 0.25) <= 0.005);
    CHECK(std::abs(compute_scai(1, 1.0) - 0.5731) <= 1e-4);
    CHECK(compute_scai(0, 0.9) == 0.0);
}

TEST_CASE("scai clamps at zero with a large alpha") {
    CHECK(compute_scai(10, 1.0, {5.0, 0.1, 1.0}) == 0.0);
}

TEST_CASE("scai rejects invalid input") {
    CHECK(error_of([] { compute_scai(5, 0.5, {-0.1, 0.1, 1.5}); }) == ErrorCode::InvalidParams);
    CHECK(error_of([] { compute_scai(5, 0.5, {0.5, 1.1, 1.5}); }) == ErrorCode::InvalidParams);
    CHECK(error_of([] { compute_scai(5, 0.5, {0.5, 0.1, 0.9}); }) == ErrorCode::InvalidParams);
    CHECK(error_of([] { compute_scai(5, 1.5); }) == ErrorCode::InvalidParams);
    CHECK(error_of([] { compute_scai(5, std::nan("")); }) == ErrorCode::InvalidParams);
    CHECK(MetricParams{}.valid());
    CHECK_FALSE((MetricParams{0.5, -0.01, 1.5}.valid()));
}

TEST_CASE("scai properties") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const MetricParams p{2.0 * unit(rng), unit(rng), 1.0 + 2.0 * unit(rng)};
        const std::uint64_t h = rng() % 100;
        const double a = unit(rng);
        const double b = unit(rng);
        const double lo = std::min(a, b);
        const double hi = std::max(a, b);
        const double s_lo = compute_scai(h, lo, p);
        const double s_hi = compute_scai(h, hi, p);
        CHECK(s_lo >= s_hi);
        CHECK(s_hi >= 0.0);
        CHECK(s_lo <= static_cast<double>(h));
        if (lo <= p.beta) CHECK(s_lo == static_cast<double>(h));
        const std::uint64_t k = 1 + rng() % 9;
        CHECK(std::abs(compute_scai(k * h, hi, p) / static_cast<double>(k) - s_hi) <= 1e-9);
    }
    // With defaults the adjusted index never drops below 0.57 h.
    for (std::uint64_t h = 1; h < 60; ++h) CHECK(compute_scai(h, 1.0) > 0.57 * static_cast<double>(h));
}

TEST_CASE("s-index") {
    CHECK(compute_s_index(Counts{0, 0, 0}) == 0);
    CHECK(compute_s_index(Counts{2, 3, 1}) == 2);
    CHECK(compute_s_index(Counts{5, 5, 5, 5, 5}) == 5);
}

TEST_CASE("inflation") {
    CHECK(compute_inflation(20, 20) == 0.0);
    CHECK(std::abs(*compute_inflation(20, 17) - 0.17647) <= 1e-5);
    CHECK_FALSE(compute_inflation(3, 0));
    CHECK(error_of([] { compute_inflation(3, 4); }) == ErrorCode::ExternalExceedsAll);
}

TEST_CASE("compute_report") {
    SUBCASE("no incoming citations") {
        const auto c = test::jsonl(test::researcher("A", "A, B") + test::publication("P", 2000, R"(["A"])"));
        const auto r = compute_report(c, "A");
        CHECK(r.h_index == 0);
        CHECK(r.i10_index == 0);
        CHECK(r.scr == 0.0);
        CHECK(r.scai == 0.0);
        CHECK(r.s_index == 0);
        CHECK_FALSE(r.inflation);
        CHECK(r.yearly_scr.empty());
    }
    SUBCASE("two papers, one self-citation") {
        const auto c = parse_corpus(test::fixture("two_papers_one_selfcite.jsonl"), CorpusFormat::Jsonl);
        const auto r = compute_report(c, "A");
        CHECK(r.h_index == 1);
        CHECK(r.h_index_external == 0);
        CHECK(r.scr == 1.0);
        CHECK(std::abs(r.scai - 0.5731) <= 1e-4);
        CHECK_FALSE(r.inflation);
        CHECK(r.yearly_scr == std::map<int, double>{{2020, 1.0}});
    }
    SUBCASE("mid-career golden report") {
        const auto c = parse_corpus(test::fixture("researcher_mid.jsonl"), CorpusFormat::Jsonl);
        const auto r = compute_report(c, "mid");
        const auto expected = nlohmann::json::parse(test::slurp(test::golden("researcher_mid_report.json")));
        CHECK(r == report_from_json(expected));
        CHECK(to_json(r).dump(2) + "\n" == test::slurp(test::golden("researcher_mid_report.json")));
    }
    SUBCASE("unknown researcher") {
        CHECK(error_of([] { compute_report(test::jsonl(""), "X"); }) == ErrorCode::UnknownResearcher);
    }
}

TEST_CASE("report invariants over the fixture corpus") {
    const auto c = parse_corpus(test::fixture("e2e_corpus.jsonl"), CorpusFormat::Jsonl);
    for (const auto& res : c.researchers()) {
        for (auto mode : {SelfCitationMode::Focal, SelfCitationMode::AnyOverlap}) {
            const auto r = compute_report(c, res.researcher_id, {}, mode);
            CAPTURE(r.researcher_id);
            CHECK(r.scai <= static_cast<double>(r.h_index));
            CHECK(r.h_index_external <= r.h_index);
            CHECK(r.s_index <= r.h_index);
            CHECK(r.self_citations <= r.total_citations);
            CHECK(r.scr == compute_scr(r.self_citations, r.total_citations));
        }
    }
}

TEST_CASE("report json and csv") {
    MetricsReport r;
    r.researcher_id = "x,1";
    r.h_index = 4;
    r.h_index_external = 3;
    r.total_citations = 40;
    r.self_citations = 10;
    r.scr = 0.25;
    r.scai = compute_scai(4, 0.25);
    r.s_index = 2;
    r.inflation = 1.0 / 3.0;
    r.yearly_scr = {{2019, 0.5}, {2020, 0.0}};

    const auto j = to_json(r);
    CHECK(j["inflation"] == 1.0 / 3.0);
    CHECK(j["yearly_scr"]["2019"] == 0.5);
    CHECK(report_from_json(j) == r);

    std::stringstream s;
    write_reports_json({r, r}, s);
    CHECK(read_reports_json(s) == std::vector<MetricsReport>{r, r});

    CHECK(reports_csv_header() ==
          "researcher_id,h_index,h_index_external,i10_index,total_citations,self_citations,scr,scai,"
          "s_index,inflation,yearly_scr");
    CHECK(to_csv_row(r).starts_with("\"x,1\",4,3,0,40,10,0.25,"));
    CHECK(to_csv_row(r).ends_with(",2019:0.5;2020:0.0"));

    r.inflation.reset();
    CHECK(to_json(r)["inflation"].is_null());
    CHECK(report_from_json(to_json(r)) == r);
    CHECK(error_of([] { report_from_json(nlohmann::json::object()); }) == ErrorCode::MalformedRecord);
}

TEST_CASE("parallel batch equals the serial reference") {
    const auto c = parse_corpus(test::fixture("e2e_corpus.jsonl"), CorpusFormat::Jsonl);
    DisciplineParams params;
    params.set(Discipline::Engineering, {0.7, 0.2, 2.0});
    for (auto mode : {SelfCitationMode::Focal, SelfCitationMode::AnyOverlap}) {
        const auto par = compute_reports(c, params, mode);
        const auto ser = compute_reports_serial(c, params, mode);
        CHECK(par == ser);
        REQUIRE(par.size() == c.researchers().size());
        CHECK(std::is_sorted(par.begin(), par.end(),
                             [](const auto& a, const auto& b) { return a.researcher_id < b.researcher_id; }));
    }
    // Discipline parameters apply per researcher.
    const auto r08 = compute_reports(c, params);
    const auto it = std::find_if(r08.begin(), r08.end(), [](const auto& r) { return r.researcher_id == "r08"; });
    CHECK(it->scai == compute_scai(it->h_index, it->scr, {0.7, 0.2, 2.0}));
}
