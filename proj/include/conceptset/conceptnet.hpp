#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "conceptset/errors.hpp"
#include "conceptset/graph.hpp"
#include "conceptset/vocab.hpp"

namespace conceptset {

/// Per-line accounting for a dump ingestion run. "parsed" counts lines that
/// are structurally valid assertion records; the skip counters then explain
/// why a parsed line produced no edge.
struct ParseStats {
    uint64_t lines = 0;             // non-blank lines seen
    uint64_t parsed = 0;            // structurally valid records
    uint64_t malformed = 0;         // counted and skipped, never fatal
    uint64_t language_skipped = 0;  // endpoint language != filter
    uint64_t vocab_skipped = 0;     // endpoint lemma not in vocabulary
    uint64_t self_loops = 0;        // endpoints normalize to the same lemma
};

struct ParseResult {
    std::vector<KnowledgeEdge> edges;
    ParseStats stats;
};

namespace detail {

/// "/c/<lang>/<term>[/...]" -> (lang, term). Returns false on anything else.
inline bool split_concept_uri(const std::string& uri, std::string& lang, std::string& term) {
    if (uri.rfind("/c/", 0) != 0) return false;
    const size_t lang_begin = 3;
    const size_t lang_end = uri.find('/', lang_begin);
    if (lang_end == std::string::npos || lang_end == lang_begin) return false;
    size_t term_end = uri.find('/', lang_end + 1);
    if (term_end == std::string::npos) term_end = uri.size();
    if (term_end == lang_end + 1) return false;
    lang = uri.substr(lang_begin, lang_end - lang_begin);
    term = uri.substr(lang_end + 1, term_end - (lang_end + 1));
    return true;
}

}  // namespace detail

/// Reads a ConceptNet-style assertion dump: tab-separated records of
/// assertion URI, relation URI, start URI, end URI, and JSON metadata with a
/// numeric "weight". Yields edges whose endpoints both carry the requested
/// language tag and, after normalization, land in the vocabulary. Relation
/// types are ignored (only path length matters downstream). Malformed lines
/// are counted and skipped; the call fails only when it produces an IoError
/// or when not a single line parses.
inline ParseResult parse_dump(std::istream& in,
                              const ConceptVocabulary& vocab,
                              const std::string& language_filter = "en") {
    if (in.bad()) throw Error(ErrorCode::IoError, "unreadable dump stream");

    ParseResult result;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        result.stats.lines++;

        // First four fields end at tabs; the metadata JSON is the remainder
        // (it may itself contain tabs inside strings).
        std::string fields[4];
        size_t pos = 0;
        bool truncated = false;
        for (auto& field : fields) {
            const size_t tab = line.find('\t', pos);
            if (tab == std::string::npos) {
                truncated = true;
                break;
            }
            field = line.substr(pos, tab - pos);
            pos = tab + 1;
        }
        if (truncated) {
            result.stats.malformed++;
            continue;
        }
        const std::string metadata = line.substr(pos);

        std::string start_lang, start_term, end_lang, end_term;
        if (!detail::split_concept_uri(fields[2], start_lang, start_term) ||
            !detail::split_concept_uri(fields[3], end_lang, end_term)) {
            result.stats.malformed++;
            continue;
        }

        const nlohmann::json meta = nlohmann::json::parse(metadata, nullptr, false);
        if (meta.is_discarded() || !meta.is_object() || !meta.contains("weight") ||
            !meta["weight"].is_number()) {
            result.stats.malformed++;
            continue;
        }
        const double weight = meta["weight"].get<double>();
        if (!(weight > 0.0)) {
            result.stats.malformed++;
            continue;
        }

        result.stats.parsed++;
        if (start_lang != language_filter || end_lang != language_filter) {
            result.stats.language_skipped++;
            continue;
        }
        const auto start_index = vocab.lookup(start_term);
        const auto end_index = vocab.lookup(end_term);
        if (!start_index || !end_index) {
            result.stats.vocab_skipped++;
            continue;
        }
        if (*start_index == *end_index) {
            result.stats.self_loops++;
            continue;
        }
        result.edges.push_back(
            {vocab.lemma(*start_index), vocab.lemma(*end_index), weight});
    }
    if (in.bad()) throw Error(ErrorCode::IoError, "read failed while parsing dump");
    if (result.stats.parsed == 0) {
        throw Error(ErrorCode::FormatError, "no parseable assertion lines in dump");
    }
    return result;
}

}  // namespace conceptset
