#include "scai/report_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <system_error>

#include "csv.hpp"
#include "scai/error.hpp"

namespace scai {

using nlohmann::json;
using nlohmann::ordered_json;

std::string format_double(double v) {
    // Same text nlohmann::json emits, so CSV and JSON agree.
    return json(v).dump();
}

ordered_json to_json(const MetricsReport& r) {
    ordered_json j;
    j["researcher_id"] = r.researcher_id;
    j["h_index"] = r.h_index;
    j["h_index_external"] = r.h_index_external;
    j["i10_index"] = r.i10_index;
    j["total_citations"] = r.total_citations;
    j["self_citations"] = r.self_citations;
    j["scr"] = r.scr;
    j["scai"] = r.scai;
    j["s_index"] = r.s_index;
    j["inflation"] = r.inflation ? ordered_json(*r.inflation) : ordered_json(nullptr);
    ordered_json yearly = ordered_json::object();
    for (const auto& [year, scr] : r.yearly_scr) yearly[std::to_string(year)] = scr;
    j["yearly_scr"] = std::move(yearly);
    return j;
}

MetricsReport report_from_json(const json& j) {
    try {
        MetricsReport r;
        r.researcher_id = j.at("researcher_id").get<std::string>();
        r.h_index = j.at("h_index").get<std::uint64_t>();
        r.h_index_external = j.at("h_index_external").get<std::uint64_t>();
        r.i10_index = j.at("i10_index").get<std::uint64_t>();
        r.total_citations = j.at("total_citations").get<std::uint64_t>();
        r.self_citations = j.at("self_citations").get<std::uint64_t>();
        r.scr = j.at("scr").get<double>();
        r.scai = j.at("scai").get<double>();
        r.s_index = j.at("s_index").get<std::uint64_t>();
        if (const auto& inf = j.at("inflation"); !inf.is_null()) r.inflation = inf.get<double>();
        for (const auto& [key, value] : j.at("yearly_scr").items()) {
            int year = 0;
            auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), year);
            if (ec != std::errc() || ptr != key.data() + key.size())
                throw Error(ErrorCode::MalformedRecord, "yearly_scr key '" + key + "' is not a year");
            r.yearly_scr[year] = value.get<double>();
        }
        return r;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::MalformedRecord, std::string("bad report record: ") + e.what());
    }
}

void write_reports_json(const std::vector<MetricsReport>& reports, std::ostream& out) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    out << arr.dump(2) << '\n';
}

std::vector<MetricsReport> read_reports_json(std::istream& in) {
    json arr;
    try {
        arr = json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::MalformedRecord, std::string("invalid reports JSON: ") + e.what());
    }
    if (!arr.is_array()) throw Error(ErrorCode::MalformedRecord, "reports JSON must be an array");
    std::vector<MetricsReport> out;
    out.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        try {
            out.push_back(report_from_json(arr[i]));
        } catch (const Error& e) {
            throw Error(ErrorCode::MalformedRecord, e.what(), {}, i + 1);
        }
    }
    return out;
}

std::string reports_csv_header() {
    return "researcher_id,h_index,h_index_external,i10_index,total_citations,self_citations,"
           "scr,scai,s_index,inflation,yearly_scr";
}

std::string to_csv_row(const MetricsReport& r) {
    std::string yearly;
    for (const auto& [year, scr] : r.yearly_scr) {
        if (!yearly.empty()) yearly += ';';
        yearly += std::to_string(year) + ":" + format_double(scr);
    }
    return csv::escape(r.researcher_id) + "," + std::to_string(r.h_index) + "," +
           std::to_string(r.h_index_external) + "," + std::to_string(r.i10_index) + "," +
           std::to_string(r.total_citations) + "," + std::to_string(r.self_citations) + "," +
           format_double(r.scr) + "," + format_double(r.scai) + "," + std::to_string(r.s_index) +
           "," + (r.inflation ? format_double(*r.inflation) : std::string()) + "," + yearly;
}

}  // namespace scai
