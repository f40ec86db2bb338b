#include "scai/identity.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <span>

#include "scai/error.hpp"

namespace scai {

namespace {

// ASCII spellings for U+00C0..U+017F. An empty entry means "keep the code
// point as is" (the multiplication and division signs).
constexpr std::array<const char*, 0x180 - 0xC0> kLatinFold = {
    // U+00C0
    "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i", "i",
    // U+00D0
    "d", "n", "o", "o", "o", "o", "o", "", "o", "u", "u", "u", "u", "y", "th", "ss",
    // U+00E0
    "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i", "i",
    // U+00F0
    "d", "n", "o", "o", "o", "o", "o", "", "o", "u", "u", "u", "u", "y", "th", "y",
    // U+0100
    "a", "a", "a", "a", "a", "a", "c", "c", "c", "c", "c", "c", "c", "c", "d", "d",
    // U+0110
    "d", "d", "e", "e", "e", "e", "e", "e", "e", "e", "e", "e", "g", "g", "g", "g",
    // U+0120
    "g", "g", "g", "g", "h", "h", "h", "h", "i", "i", "i", "i", "i", "i", "i", "i",
    // U+0130
    "i", "i", "ij", "ij", "j", "j", "k", "k", "k", "l", "l", "l", "l", "l", "l", "l",
    // U+0140
    "l", "l", "l", "n", "n", "n", "n", "n", "n", "n", "n", "n", "o", "o", "o", "o",
    // U+0150
    "o", "o", "oe", "oe", "r", "r", "r", "r", "r", "r", "s", "s", "s", "s", "s", "s",
    // U+0160
    "s", "s", "t", "t", "t", "t", "t", "t", "u", "u", "u", "u", "u", "u", "u", "u",
    // U+0170
    "u", "u", "u", "u", "w", "w", "y", "y", "y", "z", "z", "z", "z", "z", "z", "s",
};

// Decodes one UTF-8 sequence starting at text[i]. Returns the code point and
// its byte length, or nullopt for an invalid sequence.
std::optional<std::pair<char32_t, std::size_t>> decode(std::string_view text, std::size_t i) {
    const auto b0 = static_cast<unsigned char>(text[i]);
    std::size_t len = 0;
    char32_t cp = 0;
    if (b0 < 0x80) return std::pair{char32_t{b0}, std::size_t{1}};
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        return std::nullopt;
    }
    if (i + len > text.size()) return std::nullopt;
    for (std::size_t k = 1; k < len; ++k) {
        const auto b = static_cast<unsigned char>(text[i + k]);
        if ((b & 0xC0) != 0x80) return std::nullopt;
        cp = (cp << 6) | (b & 0x3F);
    }
    return std::pair{cp, len};
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

std::string trim(std::string_view s, std::string_view extra = {}) {
    auto strip = [&](char c) { return is_space(c) || extra.find(c) != std::string_view::npos; };
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && strip(s[b])) ++b;
    while (e > b && strip(s[e - 1])) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> tokens(std::string_view s, std::string_view separators) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (is_space(c) || separators.find(c) != std::string_view::npos) {
            if (!cur.empty()) out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

std::string collapse_spaces(std::string_view s) {
    std::string out;
    for (const auto& t : tokens(s, {})) {
        if (!out.empty()) out.push_back(' ');
        out += t;
    }
    return out;
}

// Non-owning view so the matcher can run over corpus records without copying.
struct PersonView {
    const std::string* id = nullptr;
    std::span<const std::string> names;
    const std::string* orcid = nullptr;
};

PersonView view(const PersonRef& p) {
    return {p.id ? &*p.id : nullptr, p.names, p.orcid ? &*p.orcid : nullptr};
}

PersonView view(const Researcher& r) {
    return {&r.researcher_id, r.name_variants, r.orcid ? &*r.orcid : nullptr};
}

std::optional<NormalizedName> try_normalize(std::string_view raw) {
    try {
        return normalize_name(raw);
    } catch (const Error&) {
        return std::nullopt;
    }
}

PersonMatch match(const PersonView& a, const PersonView& b) {
    if (a.id && b.id && *a.id == *b.id) return {true, MatchBasis::IdMatch};
    if (a.orcid && b.orcid) {
        if (normalize_orcid(*a.orcid) == normalize_orcid(*b.orcid))
            return {true, MatchBasis::OrcidMatch};
        return {};
    }
    if (a.id && b.id) return {};
    for (const auto& na : a.names) {
        auto x = try_normalize(na);
        if (!x) continue;
        for (const auto& nb : b.names) {
            auto y = try_normalize(nb);
            if (y && names_compatible(*x, *y)) return {true, MatchBasis::NameMatch};
        }
    }
    return {};
}

void keep_best(PersonMatch& best, const PersonMatch& m) {
    if (!m.same) return;
    if (!best.same || *m.basis < *best.basis) best = m;
}

PersonMatch citing_match(const Corpus& corpus, ResearcherIndex focal, PubIndex cited,
                         PubIndex citing, SelfCitationMode mode) {
    PersonMatch best;
    const auto citing_authors = corpus.authors_of(citing);
    if (mode == SelfCitationMode::Focal) {
        const auto f = view(corpus.researcher(focal));
        for (ResearcherIndex c : citing_authors) {
            keep_best(best, match(f, view(corpus.researcher(c))));
            if (best.basis == MatchBasis::IdMatch) break;
        }
        return best;
    }
    for (ResearcherIndex a : corpus.authors_of(cited)) {
        const auto va = view(corpus.researcher(a));
        for (ResearcherIndex c : citing_authors) keep_best(best, match(va, view(corpus.researcher(c))));
    }
    return best;
}

}  // namespace

std::string fold_diacritics(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        auto d = decode(text, i);
        if (!d) {
            out.push_back(text[i]);
            ++i;
            continue;
        }
        const auto [cp, len] = *d;
        if (cp < 0x80) {
            out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(cp))));
        } else if (cp >= 0x300 && cp < 0x370) {
            // combining marks from decomposed input
        } else if (cp >= 0xC0 && cp < 0x180 && *kLatinFold[cp - 0xC0] != '\0') {
            out += kLatinFold[cp - 0xC0];
        } else {
            out.append(text.substr(i, len));
        }
        i += len;
    }
    return out;
}

NormalizedName normalize_name(std::string_view raw) {
    const std::string folded = collapse_spaces(fold_diacritics(raw));
    if (folded.empty()) throw Error(ErrorCode::EmptyName, "name is empty");

    std::string family;
    std::string given;
    if (auto comma = folded.find(','); comma != std::string::npos) {
        family = folded.substr(0, comma);
        given = folded.substr(comma + 1);
    } else {
        auto parts = tokens(folded, {});
        family = parts.back();
        parts.pop_back();
        for (const auto& p : parts) given += p + " ";
    }

    NormalizedName name;
    name.family = collapse_spaces(trim(family, "."));
    if (name.family.empty())
        throw Error(ErrorCode::EmptyName, "name '" + std::string(raw) + "' has no family part",
                    std::string(raw));

    bool has_full = false;
    std::string full;
    for (const auto& t : tokens(given, ".,")) {
        name.given_initials.push_back(t.front());
        has_full = has_full || t.size() > 1;
        if (!full.empty()) full.push_back(' ');
        full += t;
    }
    if (has_full) name.full_given = std::move(full);
    return name;
}

std::string render(const NormalizedName& name) {
    std::string out = name.family;
    if (name.full_given) return out + ", " + *name.full_given;
    out += ",";
    if (name.given_initials.empty()) {
        // A bare multi-word family needs the comma to stay a family.
        if (out.find(' ') == std::string::npos) out.pop_back();
        return out;
    }
    for (char c : name.given_initials) {
        out += ' ';
        out += c;
        out += '.';
    }
    return out;
}

bool names_compatible(const NormalizedName& a, const NormalizedName& b) {
    if (a.family != b.family) return false;
    if (a.full_given && b.full_given) return *a.full_given == *b.full_given;
    if (a.given_initials.empty() || b.given_initials.empty()) return false;
    const auto& shorter = a.given_initials.size() <= b.given_initials.size() ? a : b;
    const auto& longer = &shorter == &a ? b : a;
    return std::equal(shorter.given_initials.begin(), shorter.given_initials.end(),
                      longer.given_initials.begin());
}

std::string normalize_orcid(std::string_view orcid) {
    std::string s = trim(orcid);
    for (std::string_view prefix : {"https://orcid.org/", "http://orcid.org/", "orcid.org/"}) {
        if (s.starts_with(prefix)) {
            s.erase(0, prefix.size());
            break;
        }
    }
    for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

PersonRef PersonRef::of(const Researcher& r) {
    return {r.researcher_id, r.name_variants, r.orcid};
}

PersonRef PersonRef::named(std::string name, std::optional<std::string> orcid) {
    return {std::nullopt, {std::move(name)}, std::move(orcid)};
}

std::string_view to_string(MatchBasis b) {
    switch (b) {
        case MatchBasis::IdMatch: return "IdMatch";
        case MatchBasis::OrcidMatch: return "OrcidMatch";
        case MatchBasis::NameMatch: return "NameMatch";
    }
    return "Unknown";
}

PersonMatch same_person(const PersonRef& a, const PersonRef& b) { return match(view(a), view(b)); }

std::string_view to_string(SelfCitationMode m) {
    return m == SelfCitationMode::Focal ? "focal" : "any-overlap";
}

std::optional<SelfCitationMode> parse_self_citation_mode(std::string_view text) {
    if (text == "focal") return SelfCitationMode::Focal;
    if (text == "any-overlap") return SelfCitationMode::AnyOverlap;
    return std::nullopt;
}

SelfCitationLabel classify_self_citation(const Corpus& corpus, const CitationEdge& edge,
                                         std::string_view focal, SelfCitationMode mode) {
    const ResearcherIndex f = corpus.require_researcher(focal);
    auto citing = corpus.find_publication(edge.citing_id);
    if (!citing)
        throw Error(ErrorCode::DanglingReference, "unknown publication '" + edge.citing_id + "'",
                    edge.citing_id);
    auto cited = corpus.find_publication(edge.cited_id);
    if (!cited)
        throw Error(ErrorCode::DanglingReference, "unknown publication '" + edge.cited_id + "'",
                    edge.cited_id);
    const auto cited_authors = corpus.authors_of(*cited);
    if (std::find(cited_authors.begin(), cited_authors.end(), f) == cited_authors.end())
        throw Error(ErrorCode::FocalNotAuthorOfCited,
                    std::string(focal) + " is not an author of " + edge.cited_id, std::string(focal));

    const auto m = citing_match(corpus, f, *cited, *citing, mode);
    return {edge, std::string(focal), m.same, m.basis};
}

PersonMatch author_overlap(const Corpus& corpus, PubIndex citing, PubIndex cited) {
    PersonMatch best;
    for (ResearcherIndex a : corpus.authors_of(cited)) {
        const auto va = view(corpus.researcher(a));
        for (ResearcherIndex c : corpus.authors_of(citing))
            keep_best(best, match(va, view(corpus.researcher(c))));
    }
    return best;
}

std::size_t CitationTally::total() const {
    std::size_t n = 0;
    for (const auto& p : publications) n += p.total;
    return n;
}

std::size_t CitationTally::self() const {
    std::size_t n = 0;
    for (const auto& p : publications) n += p.self;
    return n;
}

CitationTally count_citations(const Corpus& corpus, std::string_view focal, SelfCitationMode mode) {
    return count_citations(corpus, corpus.require_researcher(focal), mode);
}

CitationTally count_citations(const Corpus& corpus, ResearcherIndex focal, SelfCitationMode mode) {
    if (focal >= corpus.researchers().size())
        throw Error(ErrorCode::UnknownResearcher, "researcher index out of range");
    CitationTally tally;
    tally.researcher_id = corpus.researcher(focal).researcher_id;
    for (PubIndex p : corpus.authored_by(focal)) {
        PublicationTally pt{corpus.publication(p).pub_id};
        for (PubIndex q : corpus.citing_of(p)) {
            const bool is_self = citing_match(corpus, focal, p, q, mode).same;
            ++pt.total;
            auto& year = tally.by_year[corpus.publication(q).year];
            ++year.total;
            if (is_self) {
                ++pt.self;
                ++year.self;
            }
        }
        pt.external = pt.total - pt.self;
        tally.publications.push_back(std::move(pt));
    }
    return tally;
}

}  // namespace scai
