#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "conceptset/errors.hpp"
#include "conceptset/stemmer.hpp"

namespace conceptset {

namespace detail {

// FNV-1a over the lemma list; identifies a vocabulary by content so that
// sets and matrices built from equal vocabularies interoperate.
inline uint64_t hash_lemmas(const std::vector<std::string>& lemmas) {
    uint64_t h = 1469598103934665603ull;
    auto mix = [&h](char c) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    };
    for (const auto& lemma : lemmas) {
        for (char c : lemma) mix(c);
        mix('\n');
    }
    return h;
}

inline bool is_lower_ascii(const std::string& s) {
    for (char c : s) {
        if (c >= 'A' && c <= 'Z') return false;
    }
    return true;
}

}  // namespace detail

/// Ordered concept lemma list; the position of a lemma is its index in every
/// concept vector and distance matrix built on top of it. Immutable after
/// construction, safe for concurrent readers.
class ConceptVocabulary {
public:
    /// Wraps an explicit lemma list, preserving its order (index = position).
    /// Lemmas must be lowercase, non-empty and unique.
    static ConceptVocabulary from_lemmas(std::vector<std::string> lemmas) {
        if (lemmas.empty()) {
            throw Error(ErrorCode::EmptyVocabulary, "vocabulary must contain at least one concept");
        }
        ConceptVocabulary v;
        v.concepts_ = std::move(lemmas);
        v.index_.reserve(v.concepts_.size());
        for (uint32_t i = 0; i < v.concepts_.size(); i++) {
            const std::string& lemma = v.concepts_[i];
            if (lemma.empty()) {
                throw Error(ErrorCode::FormatError, "empty lemma at index " + std::to_string(i));
            }
            if (!detail::is_lower_ascii(lemma)) {
                throw Error(ErrorCode::FormatError, "lemma not lowercase: " + lemma);
            }
            if (!v.index_.emplace(lemma, i).second) {
                throw Error(ErrorCode::FormatError, "duplicate lemma: " + lemma);
            }
        }
        v.id_ = detail::hash_lemmas(v.concepts_);
        return v;
    }

    size_t size() const { return concepts_.size(); }
    const std::vector<std::string>& concepts() const { return concepts_; }
    const std::string& lemma(uint32_t i) const { return concepts_[i]; }
    uint64_t id() const { return id_; }

    /// Exact lemma to index.
    std::optional<uint32_t> index_of(const std::string& lemma) const {
        auto it = index_.find(lemma);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    /// Word to index: tries the lowercased surface form first, then the
    /// normalized lemma. Absence is a normal result.
    std::optional<uint32_t> lookup(const std::string& word) const {
        if (auto hit = index_of(to_lower_ascii(word))) return hit;
        return index_of(normalize(word));
    }

private:
    ConceptVocabulary() = default;

    std::vector<std::string> concepts_;
    std::unordered_map<std::string, uint32_t> index_;
    uint64_t id_ = 0;
};

/// Builds the concept vocabulary from raw words: drops stopwords and
/// drop-listed words, normalizes the rest, deduplicates, and sorts
/// lexicographically (the sort defines the index order).
inline ConceptVocabulary build_vocabulary(const std::vector<std::string>& raw_words,
                                          const std::unordered_set<std::string>& stopwords,
                                          const std::unordered_set<std::string>& drop_list) {
    std::unordered_set<std::string> excluded_lemmas;
    auto exclude = [&](const std::unordered_set<std::string>& words) {
        for (const auto& w : words) {
            excluded_lemmas.insert(to_lower_ascii(w));
            excluded_lemmas.insert(normalize(w));
        }
    };
    exclude(stopwords);
    exclude(drop_list);

    std::set<std::string> lemmas;
    for (const auto& word : raw_words) {
        if (word.empty()) continue;
        const std::string lowered = to_lower_ascii(word);
        if (excluded_lemmas.count(lowered)) continue;
        std::string lemma = normalize(lowered);
        if (excluded_lemmas.count(lemma)) continue;
        lemmas.insert(std::move(lemma));
    }
    if (lemmas.empty()) {
        throw Error(ErrorCode::EmptyVocabulary, "all words were filtered out");
    }
    return ConceptVocabulary::from_lemmas({lemmas.begin(), lemmas.end()});
}

/// Vocabulary file: UTF-8 text, one lemma per line, line number (0-based) = index.
inline void save_vocabulary(const ConceptVocabulary& vocab, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot open for writing: " + path.string());
    for (const auto& lemma : vocab.concepts()) out << lemma << '\n';
    if (!out) throw Error(ErrorCode::IoError, "write failed: " + path.string());
}

inline ConceptVocabulary load_vocabulary(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open: " + path.string());
    std::vector<std::string> lemmas;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lemmas.push_back(line);
    }
    // A trailing newline is not an extra empty lemma.
    while (!lemmas.empty() && lemmas.back().empty()) lemmas.pop_back();
    if (lemmas.empty()) throw Error(ErrorCode::EmptyVocabulary, "vocabulary file is empty: " + path.string());
    return ConceptVocabulary::from_lemmas(std::move(lemmas));
}

/// A lemma together with the surface forms that map to it.
struct WordFormGroup {
    std::string lemma;
    std::set<std::string> surface_forms;
};

/// Groups surface words by their normalized lemma. Every resulting group
/// satisfies: the lemma is one of its own surface forms (it is its own
/// normal form) and every surface form normalizes to the lemma.
inline std::vector<WordFormGroup> build_word_form_groups(const std::vector<std::string>& words) {
    std::map<std::string, WordFormGroup> by_lemma;
    for (const auto& word : words) {
        if (word.empty()) continue;
        const std::string lemma = normalize(word);
        auto& group = by_lemma[lemma];
        group.lemma = lemma;
        group.surface_forms.insert(to_lower_ascii(word));
        group.surface_forms.insert(lemma);
    }
    std::vector<WordFormGroup> groups;
    groups.reserve(by_lemma.size());
    for (auto& [lemma, group] : by_lemma) groups.push_back(std::move(group));
    return groups;
}

/// Word-form group file: UTF-8 text, lines of "lemma<TAB>form1,form2,...".
inline void save_word_form_groups(const std::vector<WordFormGroup>& groups,
                                  const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot open for writing: " + path.string());
    for (const auto& group : groups) {
        out << group.lemma << '\t';
        bool first = true;
        for (const auto& form : group.surface_forms) {
            if (!first) out << ',';
            out << form;
            first = false;
        }
        out << '\n';
    }
    if (!out) throw Error(ErrorCode::IoError, "write failed: " + path.string());
}

inline std::vector<WordFormGroup> load_word_form_groups(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open: " + path.string());
    std::vector<WordFormGroup> groups;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const size_t tab = line.find('\t');
        if (tab == std::string::npos || tab == 0) {
            throw Error(ErrorCode::FormatError,
                        "word-form line " + std::to_string(line_no) + ": expected lemma<TAB>forms");
        }
        WordFormGroup group;
        group.lemma = line.substr(0, tab);
        group.surface_forms.insert(group.lemma);
        std::stringstream forms(line.substr(tab + 1));
        std::string form;
        while (std::getline(forms, form, ',')) {
            if (!form.empty()) group.surface_forms.insert(form);
        }
        groups.push_back(std::move(group));
    }
    return groups;
}

/// Surface-form to lemma table assembled from word-form groups. Extends the
/// stemmer with irregular forms (e.g. sang -> sing) that suffix stripping
/// cannot recover.
class WordFormTable {
public:
    WordFormTable() = default;

    static WordFormTable from_groups(const std::vector<WordFormGroup>& groups) {
        WordFormTable table;
        for (const auto& group : groups) {
            for (const auto& form : group.surface_forms) {
                table.form_to_lemma_[form] = group.lemma;
            }
        }
        return table;
    }

    /// Table entry first, stemmer fallback otherwise.
    std::string normalize(const std::string& word) const {
        auto it = form_to_lemma_.find(to_lower_ascii(word));
        if (it != form_to_lemma_.end()) return it->second;
        return conceptset::normalize(word);
    }

    bool empty() const { return form_to_lemma_.empty(); }

private:
    std::unordered_map<std::string, std::string> form_to_lemma_;
};

}  // namespace conceptset
