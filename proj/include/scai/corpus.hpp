#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace scai {

enum class Discipline {
    ComputerScience,
    LifeSciences,
    PhysicalSciences,
    SocialSciences,
    Engineering,
    Humanities,
    Other,
};

inline constexpr Discipline kFieldDisciplines[] = {
    Discipline::ComputerScience, Discipline::LifeSciences, Discipline::PhysicalSciences,
    Discipline::SocialSciences,  Discipline::Engineering,  Discipline::Humanities,
};

std::string_view to_string(Discipline d);
std::optional<Discipline> parse_discipline(std::string_view text);

enum class Gender { Male, Female, Unreported };

std::string_view to_string(Gender g);

struct Publication {
    std::string pub_id;
    std::string title;
    int year = 0;
    std::vector<std::string> author_ids;
    Discipline discipline = Discipline::Other;
    std::optional<std::uint64_t> citation_count_external_source;

    bool operator==(const Publication&) const = default;
};

struct CitationEdge {
    std::string citing_id;
    std::string cited_id;

    bool operator==(const CitationEdge&) const = default;
};

struct Researcher {
    std::string researcher_id;
    std::vector<std::string> name_variants;
    std::optional<std::string> orcid;
    Gender gender = Gender::Unreported;
    std::optional<int> first_pub_year;
    Discipline discipline = Discipline::Other;

    bool operator==(const Researcher&) const = default;
};

struct Provenance {
    std::string source;
    std::string format_version;
};

enum class CorpusFormat { Jsonl, CsvBundle };

inline constexpr std::string_view kJsonlFormatVersion = "scai-corpus-jsonl/1";
inline constexpr std::string_view kCsvFormatVersion = "scai-corpus-csv/1";
inline constexpr int kMinYear = 1500;

int current_year();

// Dense handles into a loaded corpus. Valid only for the corpus that issued them.
using PubIndex = std::uint32_t;
using ResearcherIndex = std::uint32_t;

struct EdgeRef {
    PubIndex citing;
    PubIndex cited;
};

class CorpusBuilder;

// Immutable, validated citation corpus. Only CorpusBuilder::build() creates
// one, so every instance satisfies referential integrity.
class Corpus {
public:
    Corpus() = default;

    std::span<const Publication> publications() const { return publications_; }
    std::span<const Researcher> researchers() const { return researchers_; }
    std::span<const EdgeRef> edges() const { return edges_; }
    const Provenance& provenance() const { return provenance_; }

    std::optional<PubIndex> find_publication(std::string_view pub_id) const;
    std::optional<ResearcherIndex> find_researcher(std::string_view researcher_id) const;
    ResearcherIndex require_researcher(std::string_view researcher_id) const;

    const Publication& publication(PubIndex i) const { return publications_[i]; }
    const Researcher& researcher(ResearcherIndex i) const { return researchers_[i]; }

    CitationEdge edge(std::size_t i) const;

    // Citing publications of `cited`, in edge insertion order.
    std::span<const PubIndex> citing_of(PubIndex cited) const { return incoming_[cited]; }
    // Publications authored by a researcher, ordered by pub_id.
    std::span<const PubIndex> authored_by(ResearcherIndex r) const { return authored_[r]; }
    std::span<const ResearcherIndex> authors_of(PubIndex p) const { return pub_authors_[p]; }

private:
    friend class CorpusBuilder;

    std::vector<Publication> publications_;
    std::vector<Researcher> researchers_;
    std::vector<EdgeRef> edges_;
    Provenance provenance_;

    std::unordered_map<std::string, PubIndex> pub_index_;
    std::unordered_map<std::string, ResearcherIndex> researcher_index_;
    std::vector<std::vector<PubIndex>> incoming_;
    std::vector<std::vector<PubIndex>> authored_;
    std::vector<std::vector<ResearcherIndex>> pub_authors_;
};

// Accumulates records and validates them as a whole. Parsers attach the
// 1-based source record number so errors can point back into the file.
class CorpusBuilder {
public:
    explicit CorpusBuilder(Provenance provenance = {});

    // Records (and validation) are accepted against [kMinYear, max_year].
    CorpusBuilder& max_year(int year);

    void add_researcher(Researcher r, std::optional<std::size_t> line = std::nullopt);
    void add_publication(Publication p, std::optional<std::size_t> line = std::nullopt);
    void add_citation(CitationEdge e, std::optional<std::size_t> line = std::nullopt);

    std::size_t researcher_count() const { return researchers_.size(); }
    std::size_t publication_count() const { return publications_.size(); }
    std::size_t citation_count() const { return edges_.size(); }

    // Throws Error{DanglingReference | DuplicateId | MalformedRecord}.
    Corpus build() &&;

private:
    Provenance provenance_;
    int max_year_;
    std::vector<Researcher> researchers_;
    std::vector<Publication> publications_;
    std::vector<CitationEdge> edges_;
    std::vector<std::optional<std::size_t>> edge_lines_;
};

// Copies every record of `corpus` into a builder, for derived corpora.
CorpusBuilder to_builder(const Corpus& corpus);

Corpus parse_corpus(std::istream& in, CorpusFormat format, std::string source = "<stream>");
// JSONL: a single file. CsvBundle: a directory holding researchers.csv,
// publications.csv and citations.csv.
Corpus parse_corpus(const std::filesystem::path& path, CorpusFormat format);

void write_jsonl(const Corpus& corpus, std::ostream& out);
std::string to_jsonl(const Corpus& corpus);
void write_csv_bundle(const Corpus& corpus, const std::filesystem::path& dir);

// Same identifier sets, edge set and field values; record order ignored.
bool equivalent(const Corpus& a, const Corpus& b);

enum class WarningKind { TimeTravelCitation, OrphanResearcher, OtherDiscipline };

std::string_view to_string(WarningKind k);

struct Warning {
    WarningKind kind;
    std::string subject;
    std::string detail;

    bool operator==(const Warning&) const = default;
};

std::vector<Warning> validate_corpus(const Corpus& corpus);

std::optional<int> derive_first_pub_year(const Corpus& corpus, std::string_view researcher_id);

// Keeps the `max_papers` lowest pub_ids and then the first `max_citations`
// edges in (citing, cited) id order. Researchers are always kept.
Corpus truncate_corpus(const Corpus& corpus, std::optional<std::size_t> max_papers,
                       std::optional<std::size_t> max_citations);

}  // namespace scai
