#pragma once

#include <string>
#include <unordered_set>
#include <vector>

#include "conceptset/concept_set.hpp"
#include "conceptset/distance_matrix.hpp"
#include "conceptset/set_ops.hpp"
#include "conceptset/stemmer.hpp"
#include "conceptset/vocab.hpp"

namespace conceptset {

struct ExtractionConfig {
    const ConceptVocabulary& vocab;
    const std::unordered_set<std::string>& stopwords;
};

namespace detail {

/// Lowercased maximal ASCII-alphabetic runs; every other byte is a boundary,
/// so hyphenated words split into their parts.
inline std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::string current;
    for (char c : text) {
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) {
            current.push_back(c >= 'A' && c <= 'Z' ? char(c - 'A' + 'a') : c);
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

}  // namespace detail

/// Text -> concept set: tokenize, drop stopwords, normalize, keep lemmas that
/// are in the vocabulary. Duplicates collapse; empty text gives the empty set.
inline ConceptSet extract(const std::string& text, const ExtractionConfig& cfg) {
    std::vector<uint32_t> indices;
    for (const std::string& token : detail::tokenize(text)) {
        if (cfg.stopwords.count(token)) continue;
        if (auto index = cfg.vocab.index_of(normalize(token))) {
            indices.push_back(*index);
        }
    }
    return ConceptSet::from_indices(cfg.vocab, std::move(indices));
}

/// Union of extract over several texts — e.g. the future-dialogue set F over
/// the utterances of a lookahead window.
inline ConceptSet extract_many(const std::vector<std::string>& texts,
                               const ExtractionConfig& cfg) {
    ConceptSet result = ConceptSet::empty(cfg.vocab);
    for (const std::string& text : texts) {
        result = set_union(result, extract(text, cfg), cfg.vocab);
    }
    return result;
}

/// Utterance-level guide set: expand the union of the self-persona concepts
/// and the partner's utterance concepts to k members. Empty when both sources
/// extract to nothing.
inline ConceptSet build_guide_set(const std::vector<std::string>& self_persona,
                                  const std::string& partner_utterance,
                                  const DistanceMatrix& d, int k,
                                  const ExtractionConfig& cfg) {
    const ConceptSet seed = set_union(extract_many(self_persona, cfg),
                                      extract(partner_utterance, cfg), cfg.vocab);
    return expand(seed, d, k).set;
}

}  // namespace conceptset
