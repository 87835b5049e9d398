#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "conceptset/errors.hpp"
#include "conceptset/vocab.hpp"

namespace conceptset {

/// One knowledge-graph assertion surviving normalization and vocabulary
/// restriction. The weight is the source confidence score (> 0).
struct KnowledgeEdge {
    std::string start;
    std::string end;
    double weight = 1.0;
};

/// Undirected weighted concept graph over a vocabulary. Edge values are
/// distances (not confidences); parallel edges are collapsed to the minimum.
class ConceptGraph {
public:
    explicit ConceptGraph(ConceptVocabulary vocab)
        : vocab_(std::move(vocab)), adjacency_(vocab_.size()) {}

    const ConceptVocabulary& vocab() const { return vocab_; }
    size_t size() const { return adjacency_.size(); }

    const std::vector<std::pair<uint32_t, double>>& neighbors(uint32_t node) const {
        return adjacency_[node];
    }

    /// Inserts an undirected edge, keeping the minimum distance if one exists.
    void add_edge(uint32_t a, uint32_t b, double distance) {
        if (a == b) return;
        upsert(a, b, distance);
        upsert(b, a, distance);
    }

    size_t edge_count() const {
        size_t arcs = 0;
        for (const auto& list : adjacency_) arcs += list.size();
        return arcs / 2;
    }

private:
    void upsert(uint32_t from, uint32_t to, double distance) {
        for (auto& [neighbor, dist] : adjacency_[from]) {
            if (neighbor == to) {
                dist = std::min(dist, distance);
                return;
            }
        }
        adjacency_[from].emplace_back(to, distance);
    }

    ConceptVocabulary vocab_;
    std::vector<std::vector<std::pair<uint32_t, double>>> adjacency_;
};

/// Builds the concept graph from confidence-weighted edges. Higher confidence
/// means closer concepts: edge distance = 1 / weight, clamped below at
/// min_edge_distance so no edge has zero length.
inline ConceptGraph build_graph(const std::vector<KnowledgeEdge>& edges,
                                const ConceptVocabulary& vocab,
                                double min_edge_distance = 1e-3) {
    if (min_edge_distance <= 0.0) {
        throw Error(ErrorCode::InvalidParams, "min_edge_distance must be positive");
    }
    ConceptGraph graph(vocab);
    for (const auto& edge : edges) {
        if (edge.weight <= 0.0) {
            throw Error(ErrorCode::InvalidParams, "edge weight must be positive: " + edge.start);
        }
        auto a = vocab.index_of(edge.start);
        auto b = vocab.index_of(edge.end);
        if (!a || !b) {
            throw Error(ErrorCode::VocabMismatch,
                        "edge endpoint not in vocabulary: " + (!a ? edge.start : edge.end));
        }
        if (*a == *b) continue;
        graph.add_edge(*a, *b, std::max(1.0 / edge.weight, min_edge_distance));
    }
    return graph;
}

}  // namespace conceptset
