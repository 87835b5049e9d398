#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "conceptset/errors.hpp"
#include "conceptset/vocab.hpp"

namespace conceptset {

/// A concept set: membership over vocabulary indices, held as a sorted unique
/// index list (the logical-vector view materializes on demand). Every set is
/// bound to the vocabulary it was built from; operations refuse to mix sets
/// from different vocabularies. Immutable value type.
class ConceptSet {
public:
    static ConceptSet empty(const ConceptVocabulary& vocab) {
        return ConceptSet(vocab.id(), {});
    }

    static ConceptSet from_indices(const ConceptVocabulary& vocab, std::vector<uint32_t> indices) {
        for (uint32_t i : indices) {
            if (i >= vocab.size()) {
                throw Error(ErrorCode::InvalidParams,
                            "concept index " + std::to_string(i) + " out of range");
            }
        }
        std::sort(indices.begin(), indices.end());
        indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
        return ConceptSet(vocab.id(), std::move(indices));
    }

    /// Looks each word up (normalizing as needed); unknown words are an error
    /// so that a mistyped concept never silently vanishes from a query.
    static ConceptSet from_lemmas(const ConceptVocabulary& vocab,
                                  const std::vector<std::string>& words) {
        std::vector<uint32_t> indices;
        indices.reserve(words.size());
        for (const auto& word : words) {
            auto idx = vocab.lookup(word);
            if (!idx) {
                throw Error(ErrorCode::InvalidParams, "concept not in vocabulary: " + word);
            }
            indices.push_back(*idx);
        }
        return from_indices(vocab, std::move(indices));
    }

    const std::vector<uint32_t>& indices() const { return indices_; }
    size_t cardinality() const { return indices_.size(); }
    bool empty() const { return indices_.empty(); }
    uint64_t vocab_id() const { return vocab_id_; }

    bool contains(uint32_t index) const {
        return std::binary_search(indices_.begin(), indices_.end(), index);
    }

    std::vector<std::string> lemmas(const ConceptVocabulary& vocab) const {
        if (vocab.id() != vocab_id_) {
            throw Error(ErrorCode::VocabMismatch, "set is bound to a different vocabulary");
        }
        std::vector<std::string> out;
        out.reserve(indices_.size());
        for (uint32_t i : indices_) out.push_back(vocab.lemma(i));
        return out;
    }

    /// Dense {0,1} membership vector over the vocabulary.
    std::vector<uint8_t> dense(size_t vocab_size) const {
        std::vector<uint8_t> mask(vocab_size, 0);
        for (uint32_t i : indices_) mask[i] = 1;
        return mask;
    }

    friend bool operator==(const ConceptSet& a, const ConceptSet& b) {
        return a.vocab_id_ == b.vocab_id_ && a.indices_ == b.indices_;
    }

private:
    ConceptSet(uint64_t vocab_id, std::vector<uint32_t> indices)
        : vocab_id_(vocab_id), indices_(std::move(indices)) {}

    uint64_t vocab_id_ = 0;
    std::vector<uint32_t> indices_;
};

}  // namespace conceptset
