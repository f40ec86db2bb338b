#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scai/corpus.hpp"

namespace scai {

struct NormalizedName {
    std::string family;
    std::vector<char> given_initials;
    std::optional<std::string> full_given;

    bool operator==(const NormalizedName&) const = default;
};

// Lowercases, folds Latin diacritics to ASCII and splits the name into family
// and given parts. Accepts "Family, Given", "Given Family" and "G. Family".
// Throws Error{EmptyName}.
NormalizedName normalize_name(std::string_view raw);

// Canonical "family, given" spelling. normalize_name(render(n)) == n.
std::string render(const NormalizedName& name);

// Lowercase ASCII rendering of `text` with diacritics folded ("Ø" -> "o",
// "ß" -> "ss"). Code points without a mapping pass through unchanged.
std::string fold_diacritics(std::string_view text);

// An author as seen by the matcher: a corpus researcher, or a bare name.
struct PersonRef {
    std::optional<std::string> id;
    std::vector<std::string> names;
    std::optional<std::string> orcid;

    static PersonRef of(const Researcher& r);
    static PersonRef named(std::string name, std::optional<std::string> orcid = std::nullopt);
};

enum class MatchBasis { IdMatch, OrcidMatch, NameMatch };

std::string_view to_string(MatchBasis b);

struct PersonMatch {
    bool same = false;
    std::optional<MatchBasis> basis;

    explicit operator bool() const { return same; }
    bool operator==(const PersonMatch&) const = default;
};

// Priority cascade: equal ids, then ORCID (a present-but-different pair is a
// definite non-match), then distinct ids are distinct people, then names.
// Symmetric in value and basis.
PersonMatch same_person(const PersonRef& a, const PersonRef& b);

// True when the two normalized names share a family and have compatible
// given names.
bool names_compatible(const NormalizedName& a, const NormalizedName& b);

std::string normalize_orcid(std::string_view orcid);

enum class SelfCitationMode { Focal, AnyOverlap };

std::string_view to_string(SelfCitationMode m);
std::optional<SelfCitationMode> parse_self_citation_mode(std::string_view text);

struct SelfCitationLabel {
    CitationEdge edge;
    std::string focal_researcher;
    bool is_self = false;
    std::optional<MatchBasis> match_basis;
};

// Throws Error{UnknownResearcher | DanglingReference | FocalNotAuthorOfCited}.
SelfCitationLabel classify_self_citation(const Corpus& corpus, const CitationEdge& edge,
                                         std::string_view focal,
                                         SelfCitationMode mode = SelfCitationMode::Focal);

// Best match between any author of `cited` and any author of `citing`.
PersonMatch author_overlap(const Corpus& corpus, PubIndex citing, PubIndex cited);

struct PublicationTally {
    std::string pub_id;
    std::size_t total = 0;
    std::size_t self = 0;
    std::size_t external = 0;
};

struct YearTally {
    std::size_t total = 0;
    std::size_t self = 0;
};

struct CitationTally {
    std::string researcher_id;
    // One entry per authored publication, ordered by pub_id.
    std::vector<PublicationTally> publications;
    // Keyed by the citing publication's year.
    std::map<int, YearTally> by_year;

    std::size_t total() const;
    std::size_t self() const;
};

// Throws Error{UnknownResearcher}.
CitationTally count_citations(const Corpus& corpus, std::string_view focal,
                              SelfCitationMode mode = SelfCitationMode::Focal);
CitationTally count_citations(const Corpus& corpus, ResearcherIndex focal,
                              SelfCitationMode mode = SelfCitationMode::Focal);

}  // namespace scai
