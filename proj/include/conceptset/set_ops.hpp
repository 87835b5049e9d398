#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "conceptset/concept_set.hpp"
#include "conceptset/distance_matrix.hpp"
#include "conceptset/errors.hpp"

namespace conceptset {

/// Generalization-strength knobs shared by the operations: k concepts kept by
/// expansion, strict distance threshold r for intersection.
struct OperationParams {
    int k = 250;
    double r = 0.2;

    void validate() const {
        if (k < 1) throw Error(ErrorCode::InvalidParams, "k must be >= 1");
        if (!(r > 0.0)) throw Error(ErrorCode::InvalidParams, "r must be > 0");
    }
};

/// Expansion ranking: (vocabulary index, distance to the seed set), distances
/// nondecreasing, ties broken by ascending index.
struct RankedConcepts {
    std::vector<std::pair<uint32_t, float>> entries;
};

struct ExpandResult {
    ConceptSet set;
    RankedConcepts ranked;
};

namespace detail {

inline void require_same_vocab(uint64_t a, uint64_t b, const char* what) {
    if (a != b) {
        throw Error(ErrorCode::VocabMismatch, std::string(what) + ": vocabulary mismatch");
    }
}

}  // namespace detail

/// Expansion: each concept is scored by its distance to the nearest member of
/// A (rows of D outside A contribute nothing), and the k best-scored concepts
/// are kept. Members of A score self_dist and therefore rank first. Empty A
/// expands to the empty set.
inline ExpandResult expand(const ConceptSet& a, const DistanceMatrix& d, int k) {
    detail::require_same_vocab(a.vocab_id(), d.vocab_id(), "expand");
    if (k < 1) throw Error(ErrorCode::InvalidParams, "k must be >= 1");
    if (a.empty()) return {ConceptSet::empty(d.vocab()), {}};

    const size_t n = d.size();
    std::vector<float> score(n, std::numeric_limits<float>::infinity());
    for (uint32_t member : a.indices()) {
        for (uint32_t j = 0; j < n; j++) {
            score[j] = std::min(score[j], d.at(member, j));
        }
    }

    std::vector<uint32_t> order(n);
    for (uint32_t j = 0; j < n; j++) order[j] = j;
    const size_t keep = std::min<size_t>(static_cast<size_t>(k), n);
    std::partial_sort(order.begin(), order.begin() + keep, order.end(),
                      [&](uint32_t lhs, uint32_t rhs) {
                          if (score[lhs] != score[rhs]) return score[lhs] < score[rhs];
                          return lhs < rhs;
                      });
    order.resize(keep);

    ExpandResult result{ConceptSet::from_indices(d.vocab(), order), {}};
    result.ranked.entries.reserve(keep);
    for (uint32_t j : order) result.ranked.entries.emplace_back(j, score[j]);
    return result;
}

/// Union: logical or of the membership vectors.
inline ConceptSet set_union(const ConceptSet& a, const ConceptSet& b,
                            const ConceptVocabulary& vocab) {
    detail::require_same_vocab(a.vocab_id(), b.vocab_id(), "union");
    detail::require_same_vocab(a.vocab_id(), vocab.id(), "union");
    std::vector<uint32_t> merged;
    merged.reserve(a.cardinality() + b.cardinality());
    std::set_union(a.indices().begin(), a.indices().end(), b.indices().begin(),
                   b.indices().end(), std::back_inserter(merged));
    return ConceptSet::from_indices(vocab, std::move(merged));
}

/// Knowledge-enhanced intersection: the members of B lying strictly within
/// distance r of some member of A (0 < d < r, exactly as Eq. 4 writes it).
/// Not commutative — the result is always a subset of B. Note the literal
/// consequence of the strict test: r <= self_dist rejects even identical
/// concepts.
inline ConceptSet intersect(const ConceptSet& a, const ConceptSet& b,
                            const DistanceMatrix& d, double r) {
    detail::require_same_vocab(a.vocab_id(), b.vocab_id(), "intersect");
    detail::require_same_vocab(a.vocab_id(), d.vocab_id(), "intersect");
    if (!(r > 0.0)) throw Error(ErrorCode::InvalidParams, "r must be > 0");
    std::vector<uint32_t> members;
    for (uint32_t candidate : b.indices()) {
        for (uint32_t anchor : a.indices()) {
            const float dist = d.at(anchor, candidate);
            if (dist > 0.0f && dist < r) {
                members.push_back(candidate);
                break;
            }
        }
    }
    return ConceptSet::from_indices(d.vocab(), std::move(members));
}

/// Set distance (Eq. 5): the L1-normalized bilinear form over D, i.e. the
/// mean of d[a][b] over all pairs. Symmetric; lives in [self_dist, max_dist].
inline double set_distance(const ConceptSet& a, const ConceptSet& b, const DistanceMatrix& d) {
    detail::require_same_vocab(a.vocab_id(), b.vocab_id(), "set_distance");
    detail::require_same_vocab(a.vocab_id(), d.vocab_id(), "set_distance");
    if (a.empty() || b.empty()) {
        throw Error(ErrorCode::EmptySet, "set_distance requires nonempty sets");
    }
    double sum = 0.0;
    for (uint32_t i : a.indices()) {
        for (uint32_t j : b.indices()) sum += d.at(i, j);
    }
    return sum / (double(a.cardinality()) * double(b.cardinality()));
}

}  // namespace conceptset
