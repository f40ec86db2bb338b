#include "scai/corpus.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "csv.hpp"
#include "scai/error.hpp"

namespace scai {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string_view to_string(Discipline d) {
    switch (d) {
        case Discipline::ComputerScience: return "ComputerScience";
        case Discipline::LifeSciences: return "LifeSciences";
        case Discipline::PhysicalSciences: return "PhysicalSciences";
        case Discipline::SocialSciences: return "SocialSciences";
        case Discipline::Engineering: return "Engineering";
        case Discipline::Humanities: return "Humanities";
        case Discipline::Other: return "Other";
    }
    return "Other";
}

std::optional<Discipline> parse_discipline(std::string_view text) {
    for (Discipline d : kFieldDisciplines) {
        if (to_string(d) == text) return d;
    }
    if (text == "Other") return Discipline::Other;
    return std::nullopt;
}

std::string_view to_string(Gender g) {
    switch (g) {
        case Gender::Male: return "male";
        case Gender::Female: return "female";
        case Gender::Unreported: return "unreported";
    }
    return "unreported";
}

int current_year() {
    const auto today = std::chrono::floor<std::chrono::days>(std::chrono::system_clock::now());
    return static_cast<int>(std::chrono::year_month_day(today).year());
}

std::string_view to_string(WarningKind k) {
    switch (k) {
        case WarningKind::TimeTravelCitation: return "TimeTravelCitation";
        case WarningKind::OrphanResearcher: return "OrphanResearcher";
        case WarningKind::OtherDiscipline: return "OtherDiscipline";
    }
    return "Unknown";
}

// ---------------------------------------------------------------------------
// Corpus

std::optional<PubIndex> Corpus::find_publication(std::string_view pub_id) const {
    auto it = pub_index_.find(std::string(pub_id));
    if (it == pub_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<ResearcherIndex> Corpus::find_researcher(std::string_view researcher_id) const {
    auto it = researcher_index_.find(std::string(researcher_id));
    if (it == researcher_index_.end()) return std::nullopt;
    return it->second;
}

ResearcherIndex Corpus::require_researcher(std::string_view researcher_id) const {
    if (auto r = find_researcher(researcher_id)) return *r;
    throw Error(ErrorCode::UnknownResearcher,
                "unknown researcher '" + std::string(researcher_id) + "'",
                std::string(researcher_id));
}

CitationEdge Corpus::edge(std::size_t i) const {
    return {publications_[edges_[i].citing].pub_id, publications_[edges_[i].cited].pub_id};
}

// ---------------------------------------------------------------------------
// CorpusBuilder

namespace {

[[noreturn]] void malformed(std::optional<std::size_t> line, const std::string& reason,
                            std::string subject = {}) {
    std::string msg = line ? "record " + std::to_string(*line) + ": " + reason : reason;
    throw Error(ErrorCode::MalformedRecord, msg, std::move(subject), line);
}

std::string at_line(std::optional<std::size_t> line) {
    return line ? " (record " + std::to_string(*line) + ")" : std::string();
}

}  // namespace

CorpusBuilder::CorpusBuilder(Provenance provenance)
    : provenance_(std::move(provenance)), max_year_(current_year() + 1) {}

CorpusBuilder& CorpusBuilder::max_year(int year) {
    max_year_ = year;
    return *this;
}

void CorpusBuilder::add_researcher(Researcher r, std::optional<std::size_t> line) {
    if (r.researcher_id.empty()) malformed(line, "researcher id is empty");
    if (r.name_variants.empty()) malformed(line, "researcher has no names", r.researcher_id);
    if (r.first_pub_year && (*r.first_pub_year < kMinYear || *r.first_pub_year > max_year_))
        malformed(line, "first_pub_year out of range", r.researcher_id);
    researchers_.push_back(std::move(r));
}

void CorpusBuilder::add_publication(Publication p, std::optional<std::size_t> line) {
    if (p.pub_id.empty()) malformed(line, "publication id is empty");
    if (p.author_ids.empty()) malformed(line, "publication has no authors", p.pub_id);
    if (p.year < kMinYear || p.year > max_year_)
        malformed(line, "publication year " + std::to_string(p.year) + " out of range", p.pub_id);
    publications_.push_back(std::move(p));
}

void CorpusBuilder::add_citation(CitationEdge e, std::optional<std::size_t> line) {
    if (e.citing_id.empty() || e.cited_id.empty()) malformed(line, "citation endpoint is empty");
    edges_.push_back(std::move(e));
    edge_lines_.push_back(line);
}

Corpus CorpusBuilder::build() && {
    Corpus c;
    c.provenance_ = std::move(provenance_);

    c.researcher_index_.reserve(researchers_.size());
    for (std::size_t i = 0; i < researchers_.size(); ++i) {
        const auto& id = researchers_[i].researcher_id;
        if (!c.researcher_index_.emplace(id, static_cast<ResearcherIndex>(i)).second)
            throw Error(ErrorCode::DuplicateId, "duplicate researcher id '" + id + "'", id);
    }
    c.pub_index_.reserve(publications_.size());
    for (std::size_t i = 0; i < publications_.size(); ++i) {
        const auto& id = publications_[i].pub_id;
        if (!c.pub_index_.emplace(id, static_cast<PubIndex>(i)).second)
            throw Error(ErrorCode::DuplicateId, "duplicate publication id '" + id + "'", id);
    }

    c.pub_authors_.resize(publications_.size());
    c.authored_.resize(researchers_.size());
    for (std::size_t i = 0; i < publications_.size(); ++i) {
        std::unordered_set<ResearcherIndex> seen;
        for (const auto& author : publications_[i].author_ids) {
            auto it = c.researcher_index_.find(author);
            if (it == c.researcher_index_.end())
                throw Error(ErrorCode::DanglingReference,
                            "publication '" + publications_[i].pub_id +
                                "' names unknown author '" + author + "'",
                            author);
            if (!seen.insert(it->second).second)
                throw Error(ErrorCode::DuplicateId,
                            "author '" + author + "' listed twice on '" +
                                publications_[i].pub_id + "'",
                            author);
            c.pub_authors_[i].push_back(it->second);
            c.authored_[it->second].push_back(static_cast<PubIndex>(i));
        }
    }
    for (auto& owned : c.authored_) {
        std::sort(owned.begin(), owned.end(), [&](PubIndex a, PubIndex b) {
            return publications_[a].pub_id < publications_[b].pub_id;
        });
    }

    c.edges_.reserve(edges_.size());
    c.incoming_.resize(publications_.size());
    std::unordered_set<std::uint64_t> seen_edges;
    seen_edges.reserve(edges_.size());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const auto& e = edges_[i];
        auto citing = c.pub_index_.find(e.citing_id);
        if (citing == c.pub_index_.end())
            throw Error(ErrorCode::DanglingReference,
                        "citation names unknown publication '" + e.citing_id + "'" +
                            at_line(edge_lines_[i]),
                        e.citing_id, edge_lines_[i]);
        auto cited = c.pub_index_.find(e.cited_id);
        if (cited == c.pub_index_.end())
            throw Error(ErrorCode::DanglingReference,
                        "citation names unknown publication '" + e.cited_id + "'" +
                            at_line(edge_lines_[i]),
                        e.cited_id, edge_lines_[i]);
        if (citing->second == cited->second)
            malformed(edge_lines_[i], "publication '" + e.citing_id + "' cites itself",
                      e.citing_id);
        const std::uint64_t key = (std::uint64_t{citing->second} << 32) | cited->second;
        if (!seen_edges.insert(key).second)
            throw Error(ErrorCode::DuplicateId,
                        "duplicate citation " + e.citing_id + " -> " + e.cited_id +
                            at_line(edge_lines_[i]),
                        e.citing_id + "->" + e.cited_id, edge_lines_[i]);
        c.edges_.push_back({citing->second, cited->second});
        c.incoming_[cited->second].push_back(citing->second);
    }

    c.researchers_ = std::move(researchers_);
    c.publications_ = std::move(publications_);
    return c;
}

CorpusBuilder to_builder(const Corpus& corpus) {
    CorpusBuilder b(corpus.provenance());
    for (const auto& r : corpus.researchers()) b.add_researcher(r);
    for (const auto& p : corpus.publications()) b.add_publication(p);
    for (std::size_t i = 0; i < corpus.edges().size(); ++i) b.add_citation(corpus.edge(i));
    return b;
}

// ---------------------------------------------------------------------------
// JSONL

namespace {

const json& field(const json& rec, const char* key, std::size_t line) {
    auto it = rec.find(key);
    if (it == rec.end()) malformed(line, std::string("missing field \"") + key + "\"");
    return *it;
}

std::string string_field(const json& rec, const char* key, std::size_t line) {
    const json& v = field(rec, key, line);
    if (!v.is_string()) malformed(line, std::string("field \"") + key + "\" must be a string");
    return v.get<std::string>();
}

int int_field(const json& v, const char* key, std::size_t line) {
    if (!v.is_number_integer())
        malformed(line, std::string("field \"") + key + "\" must be an integer");
    return v.get<int>();
}

std::vector<std::string> string_list(const json& rec, const char* key, std::size_t line) {
    const json& v = field(rec, key, line);
    if (!v.is_array()) malformed(line, std::string("field \"") + key + "\" must be an array");
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const auto& item : v) {
        if (!item.is_string())
            malformed(line, std::string("field \"") + key + "\" must hold strings");
        out.push_back(item.get<std::string>());
    }
    return out;
}

Discipline discipline_field(const json& rec, std::size_t line) {
    auto text = string_field(rec, "discipline", line);
    auto d = parse_discipline(text);
    if (!d) malformed(line, "unknown discipline \"" + text + "\"");
    return *d;
}

Researcher researcher_from_json(const json& rec, std::size_t line) {
    Researcher r;
    r.researcher_id = string_field(rec, "id", line);
    r.name_variants = string_list(rec, "names", line);
    if (auto it = rec.find("orcid"); it != rec.end() && !it->is_null()) {
        if (!it->is_string()) malformed(line, "field \"orcid\" must be a string or null");
        r.orcid = it->get<std::string>();
    }
    if (auto it = rec.find("gender"); it != rec.end() && !it->is_null()) {
        if (*it == "male") {
            r.gender = Gender::Male;
        } else if (*it == "female") {
            r.gender = Gender::Female;
        } else {
            malformed(line, "field \"gender\" must be \"male\", \"female\" or null");
        }
    }
    r.discipline = discipline_field(rec, line);
    if (auto it = rec.find("first_pub_year"); it != rec.end() && !it->is_null())
        r.first_pub_year = int_field(*it, "first_pub_year", line);
    return r;
}

Publication publication_from_json(const json& rec, std::size_t line) {
    Publication p;
    p.pub_id = string_field(rec, "id", line);
    p.title = string_field(rec, "title", line);
    p.year = int_field(field(rec, "year", line), "year", line);
    p.author_ids = string_list(rec, "authors", line);
    p.discipline = discipline_field(rec, line);
    if (auto it = rec.find("citation_count_external_source"); it != rec.end() && !it->is_null()) {
        if (!it->is_number_unsigned())
            malformed(line, "field \"citation_count_external_source\" must be a non-negative integer");
        p.citation_count_external_source = it->get<std::uint64_t>();
    }
    return p;
}

Corpus parse_jsonl(std::istream& in, std::string source) {
    CorpusBuilder builder({std::move(source), std::string(kJsonlFormatVersion)});
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (!text.empty() && text.back() == '\r') text.pop_back();
        if (text.find_first_not_of(" \t") == std::string::npos) continue;

        json rec;
        try {
            rec = json::parse(text);
        } catch (const json::parse_error& e) {
            malformed(line, std::string("invalid JSON: ") + e.what());
        }
        if (!rec.is_object()) malformed(line, "record is not a JSON object");
        const auto kind = string_field(rec, "kind", line);
        if (kind == "researcher") {
            builder.add_researcher(researcher_from_json(rec, line), line);
        } else if (kind == "publication") {
            builder.add_publication(publication_from_json(rec, line), line);
        } else if (kind == "citation") {
            builder.add_citation({string_field(rec, "citing", line), string_field(rec, "cited", line)},
                                 line);
        } else {
            malformed(line, "unknown record kind \"" + kind + "\"");
        }
    }
    return std::move(builder).build();
}

// ---------------------------------------------------------------------------
// CSV bundle

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    if (text.empty()) return out;
    std::size_t start = 0;
    while (true) {
        auto pos = text.find(sep, start);
        out.emplace_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::string join(const std::vector<std::string>& parts, char sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out.push_back(sep);
        out += parts[i];
    }
    return out;
}

class CsvTable {
public:
    CsvTable(const std::filesystem::path& path, std::vector<std::string> required)
        : name_(path.filename().string()), in_(path) {
        if (!in_) throw Error(ErrorCode::Io, "cannot open " + path.string(), path.string());
        auto header = next_raw();
        if (!header) throw Error(ErrorCode::MalformedRecord, name_ + ": missing header", name_, 1);
        for (const auto& col : required) {
            auto it = std::find(header->begin(), header->end(), col);
            if (it == header->end())
                throw Error(ErrorCode::MalformedRecord, name_ + ": missing column " + col, name_, 1);
            columns_.push_back(static_cast<std::size_t>(it - header->begin()));
        }
        width_ = header->size();
    }

    // Row values in the order of `required`; nullopt at end.
    std::optional<std::vector<std::string>> next() {
        while (auto raw = next_raw()) {
            if (raw->size() == 1 && (*raw)[0].empty()) continue;
            if (raw->size() != width_)
                malformed(row_, name_ + ": expected " + std::to_string(width_) + " fields");
            std::vector<std::string> out;
            for (auto c : columns_) out.push_back((*raw)[c]);
            return out;
        }
        return std::nullopt;
    }

    std::size_t row() const { return row_; }

private:
    std::optional<std::vector<std::string>> next_raw() {
        try {
            auto rec = csv::read_record(in_);
            if (rec) ++row_;
            return rec;
        } catch (const std::runtime_error& e) {
            malformed(row_ + 1, name_ + ": " + e.what());
        }
    }

    std::string name_;
    std::ifstream in_;
    std::vector<std::size_t> columns_;
    std::size_t width_ = 0;
    std::size_t row_ = 0;
};

std::optional<int> parse_int(std::string_view text) {
    if (text.empty()) return std::nullopt;
    std::size_t pos = 0;
    int value = 0;
    try {
        value = std::stoi(std::string(text), &pos);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    if (pos != text.size()) return std::nullopt;
    return value;
}

Corpus parse_csv_bundle(const std::filesystem::path& dir) {
    CorpusBuilder builder({dir.string(), std::string(kCsvFormatVersion)});

    CsvTable researchers(dir / "researchers.csv",
                         {"id", "names", "orcid", "gender", "discipline", "first_pub_year"});
    while (auto row = researchers.next()) {
        const auto line = researchers.row();
        Researcher r;
        r.researcher_id = (*row)[0];
        r.name_variants = split((*row)[1], ';');
        if (!(*row)[2].empty()) r.orcid = (*row)[2];
        if ((*row)[3] == "male") {
            r.gender = Gender::Male;
        } else if ((*row)[3] == "female") {
            r.gender = Gender::Female;
        } else if (!(*row)[3].empty()) {
            malformed(line, "researchers.csv: gender must be male, female or empty");
        }
        auto d = parse_discipline((*row)[4]);
        if (!d) malformed(line, "researchers.csv: unknown discipline \"" + (*row)[4] + "\"");
        r.discipline = *d;
        if (!(*row)[5].empty()) {
            auto year = parse_int((*row)[5]);
            if (!year) malformed(line, "researchers.csv: first_pub_year is not an integer");
            r.first_pub_year = *year;
        }
        builder.add_researcher(std::move(r), line);
    }

    CsvTable pubs(dir / "publications.csv", {"id", "title", "year", "authors", "discipline"});
    while (auto row = pubs.next()) {
        const auto line = pubs.row();
        Publication p;
        p.pub_id = (*row)[0];
        p.title = (*row)[1];
        auto year = parse_int((*row)[2]);
        if (!year) malformed(line, "publications.csv: year is not an integer");
        p.year = *year;
        p.author_ids = split((*row)[3], ';');
        auto d = parse_discipline((*row)[4]);
        if (!d) malformed(line, "publications.csv: unknown discipline \"" + (*row)[4] + "\"");
        p.discipline = *d;
        builder.add_publication(std::move(p), line);
    }

    CsvTable cites(dir / "citations.csv", {"citing", "cited"});
    while (auto row = cites.next()) builder.add_citation({(*row)[0], (*row)[1]}, cites.row());

    return std::move(builder).build();
}

ordered_json researcher_to_json(const Researcher& r) {
    ordered_json j;
    j["kind"] = "researcher";
    j["id"] = r.researcher_id;
    j["names"] = r.name_variants;
    j["orcid"] = r.orcid ? ordered_json(*r.orcid) : ordered_json(nullptr);
    j["gender"] = r.gender == Gender::Unreported ? ordered_json(nullptr)
                                                 : ordered_json(std::string(to_string(r.gender)));
    j["discipline"] = std::string(to_string(r.discipline));
    j["first_pub_year"] = r.first_pub_year ? ordered_json(*r.first_pub_year) : ordered_json(nullptr);
    return j;
}

ordered_json publication_to_json(const Publication& p) {
    ordered_json j;
    j["kind"] = "publication";
    j["id"] = p.pub_id;
    j["title"] = p.title;
    j["year"] = p.year;
    j["authors"] = p.author_ids;
    j["discipline"] = std::string(to_string(p.discipline));
    if (p.citation_count_external_source)
        j["citation_count_external_source"] = *p.citation_count_external_source;
    return j;
}

}  // namespace

Corpus parse_corpus(std::istream& in, CorpusFormat format, std::string source) {
    if (format != CorpusFormat::Jsonl)
        throw Error(ErrorCode::Io, "CSV bundles are read from a directory", source);
    return parse_jsonl(in, std::move(source));
}

Corpus parse_corpus(const std::filesystem::path& path, CorpusFormat format) {
    if (format == CorpusFormat::CsvBundle) {
        if (!std::filesystem::is_directory(path))
            throw Error(ErrorCode::Io, "not a directory: " + path.string(), path.string());
        return parse_csv_bundle(path);
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string(), path.string());
    return parse_jsonl(in, path.string());
}

void write_jsonl(const Corpus& corpus, std::ostream& out) {
    for (const auto& r : corpus.researchers()) out << researcher_to_json(r).dump() << '\n';
    for (const auto& p : corpus.publications()) out << publication_to_json(p).dump() << '\n';
    for (std::size_t i = 0; i < corpus.edges().size(); ++i) {
        const auto e = corpus.edge(i);
        ordered_json j;
        j["kind"] = "citation";
        j["citing"] = e.citing_id;
        j["cited"] = e.cited_id;
        out << j.dump() << '\n';
    }
}

std::string to_jsonl(const Corpus& corpus) {
    std::ostringstream out;
    write_jsonl(corpus, out);
    return out.str();
}

void write_csv_bundle(const Corpus& corpus, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::ofstream rs(dir / "researchers.csv", std::ios::binary);
    csv::write_record(rs, {"id", "names", "orcid", "gender", "discipline", "first_pub_year"});
    for (const auto& r : corpus.researchers()) {
        csv::write_record(rs, {r.researcher_id, join(r.name_variants, ';'), r.orcid.value_or(""),
                               r.gender == Gender::Unreported ? "" : std::string(to_string(r.gender)),
                               std::string(to_string(r.discipline)),
                               r.first_pub_year ? std::to_string(*r.first_pub_year) : ""});
    }
    std::ofstream ps(dir / "publications.csv", std::ios::binary);
    csv::write_record(ps, {"id", "title", "year", "authors", "discipline"});
    for (const auto& p : corpus.publications()) {
        csv::write_record(ps, {p.pub_id, p.title, std::to_string(p.year), join(p.author_ids, ';'),
                               std::string(to_string(p.discipline))});
    }
    std::ofstream cs(dir / "citations.csv", std::ios::binary);
    csv::write_record(cs, {"citing", "cited"});
    for (std::size_t i = 0; i < corpus.edges().size(); ++i) {
        const auto e = corpus.edge(i);
        csv::write_record(cs, {e.citing_id, e.cited_id});
    }
}

bool equivalent(const Corpus& a, const Corpus& b) {
    if (a.researchers().size() != b.researchers().size() ||
        a.publications().size() != b.publications().size() ||
        a.edges().size() != b.edges().size())
        return false;
    for (const auto& r : a.researchers()) {
        auto other = b.find_researcher(r.researcher_id);
        if (!other || !(b.researcher(*other) == r)) return false;
    }
    for (const auto& p : a.publications()) {
        auto other = b.find_publication(p.pub_id);
        if (!other || !(b.publication(*other) == p)) return false;
    }
    std::set<std::pair<std::string, std::string>> ea;
    std::set<std::pair<std::string, std::string>> eb;
    for (std::size_t i = 0; i < a.edges().size(); ++i) {
        auto e = a.edge(i);
        ea.emplace(e.citing_id, e.cited_id);
    }
    for (std::size_t i = 0; i < b.edges().size(); ++i) {
        auto e = b.edge(i);
        eb.emplace(e.citing_id, e.cited_id);
    }
    return ea == eb;
}

std::vector<Warning> validate_corpus(const Corpus& corpus) {
    std::vector<Warning> warnings;
    for (const auto& e : corpus.edges()) {
        const auto& citing = corpus.publication(e.citing);
        const auto& cited = corpus.publication(e.cited);
        if (citing.year < cited.year) {
            warnings.push_back({WarningKind::TimeTravelCitation, citing.pub_id + "->" + cited.pub_id,
                                std::to_string(citing.year) + " cites " + std::to_string(cited.year)});
        }
    }
    for (ResearcherIndex r = 0; r < corpus.researchers().size(); ++r) {
        if (corpus.authored_by(r).empty())
            warnings.push_back({WarningKind::OrphanResearcher, corpus.researcher(r).researcher_id,
                                "no publications"});
    }
    for (const auto& p : corpus.publications()) {
        if (p.discipline == Discipline::Other)
            warnings.push_back({WarningKind::OtherDiscipline, p.pub_id, "discipline is Other"});
    }
    return warnings;
}

std::optional<int> derive_first_pub_year(const Corpus& corpus, std::string_view researcher_id) {
    const auto r = corpus.require_researcher(researcher_id);
    if (const auto& declared = corpus.researcher(r).first_pub_year) return declared;
    std::optional<int> earliest;
    for (PubIndex p : corpus.authored_by(r)) {
        const int year = corpus.publication(p).year;
        if (!earliest || year < *earliest) earliest = year;
    }
    return earliest;
}

Corpus truncate_corpus(const Corpus& corpus, std::optional<std::size_t> max_papers,
                       std::optional<std::size_t> max_citations) {
    std::vector<bool> keep_pub(corpus.publications().size(), true);
    if (max_papers && *max_papers < corpus.publications().size()) {
        std::vector<PubIndex> order(corpus.publications().size());
        for (PubIndex i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](PubIndex a, PubIndex b) {
            return corpus.publication(a).pub_id < corpus.publication(b).pub_id;
        });
        for (std::size_t k = *max_papers; k < order.size(); ++k) keep_pub[order[k]] = false;
    }

    std::vector<std::size_t> edges;
    for (std::size_t i = 0; i < corpus.edges().size(); ++i) {
        const auto& e = corpus.edges()[i];
        if (keep_pub[e.citing] && keep_pub[e.cited]) edges.push_back(i);
    }
    if (max_citations && *max_citations < edges.size()) {
        auto key = [&](std::size_t i) {
            const auto& e = corpus.edges()[i];
            return std::tie(corpus.publication(e.citing).pub_id, corpus.publication(e.cited).pub_id);
        };
        std::vector<std::size_t> order = edges;
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return key(a) < key(b); });
        order.resize(*max_citations);
        std::sort(order.begin(), order.end());
        edges = std::move(order);
    }

    CorpusBuilder b(corpus.provenance());
    for (const auto& r : corpus.researchers()) b.add_researcher(r);
    for (PubIndex i = 0; i < corpus.publications().size(); ++i)
        if (keep_pub[i]) b.add_publication(corpus.publication(i));
    for (auto i : edges) b.add_citation(corpus.edge(i));
    return std::move(b).build();
}

}  // namespace scai
