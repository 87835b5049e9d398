#pragma once

#include <string>

namespace conceptset {

/// ASCII-only lowercasing; bytes outside A-Z pass through unchanged.
inline std::string to_lower_ascii(std::string word) {
    for (char& c : word) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return word;
}

// Porter suffix-stripping stemmer (the original 1980 rule set).
// Operates on lowercase words; words of length <= 2 are left untouched.
namespace porter {

namespace detail {

inline bool is_consonant(const std::string& w, size_t i) {
    switch (w[i]) {
        case 'a': case 'e': case 'i': case 'o': case 'u':
            return false;
        case 'y':
            return i == 0 ? true : !is_consonant(w, i - 1);
        default:
            return true;
    }
}

// Number of vowel-consonant sequences: [C](VC)^m[V].
inline int measure(const std::string& w) {
    const size_t len = w.size();
    int m = 0;
    size_t i = 0;
    while (i < len && is_consonant(w, i)) i++;
    while (i < len) {
        while (i < len && !is_consonant(w, i)) i++;
        if (i >= len) break;
        while (i < len && is_consonant(w, i)) i++;
        m++;
    }
    return m;
}

inline bool contains_vowel(const std::string& w) {
    for (size_t i = 0; i < w.size(); i++) {
        if (!is_consonant(w, i)) return true;
    }
    return false;
}

inline bool ends_with(const std::string& w, const char* suffix) {
    const size_t n = std::char_traits<char>::length(suffix);
    if (w.size() < n) return false;
    return w.compare(w.size() - n, n, suffix) == 0;
}

inline std::string without_suffix(const std::string& w, const char* suffix) {
    return w.substr(0, w.size() - std::char_traits<char>::length(suffix));
}

inline void replace_suffix(std::string& w, const char* suffix, const char* replacement) {
    w.erase(w.size() - std::char_traits<char>::length(suffix));
    w += replacement;
}

inline bool double_consonant(const std::string& w) {
    if (w.size() < 2) return false;
    if (w[w.size() - 1] != w[w.size() - 2]) return false;
    return is_consonant(w, w.size() - 1);
}

// Ends consonant-vowel-consonant where the final consonant is not w, x or y.
inline bool cvc(const std::string& w) {
    if (w.size() < 3) return false;
    if (!is_consonant(w, w.size() - 1) || is_consonant(w, w.size() - 2) ||
        !is_consonant(w, w.size() - 3)) {
        return false;
    }
    const char last = w.back();
    return last != 'w' && last != 'x' && last != 'y';
}

inline void step1a(std::string& w) {
    if (ends_with(w, "sses")) replace_suffix(w, "sses", "ss");
    else if (ends_with(w, "ies")) replace_suffix(w, "ies", "i");
    else if (ends_with(w, "ss")) return;
    else if (ends_with(w, "s")) w.pop_back();
}

inline void step1b(std::string& w) {
    if (ends_with(w, "eed")) {
        if (measure(without_suffix(w, "eed")) > 0) replace_suffix(w, "eed", "ee");
        return;
    }
    bool removed = false;
    if (ends_with(w, "ed")) {
        std::string stem = without_suffix(w, "ed");
        if (contains_vowel(stem)) { w = std::move(stem); removed = true; }
    } else if (ends_with(w, "ing")) {
        std::string stem = without_suffix(w, "ing");
        if (contains_vowel(stem)) { w = std::move(stem); removed = true; }
    }
    if (removed) {
        if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
            w += 'e';
        } else if (double_consonant(w)) {
            const char last = w.back();
            if (last != 'l' && last != 's' && last != 'z') w.pop_back();
        } else if (measure(w) == 1 && cvc(w)) {
            w += 'e';
        }
    }
}

inline void step1c(std::string& w) {
    if (ends_with(w, "y") && contains_vowel(without_suffix(w, "y"))) w.back() = 'i';
}

struct SuffixRule {
    const char* suffix;
    const char* replacement;
};

// Longer suffixes are listed before any suffix of theirs, so first match = longest match.
inline void step2(std::string& w) {
    static constexpr SuffixRule rules[] = {
        {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"}, {"anci", "ance"},
        {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},   {"entli", "ent"},
        {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
        {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
        {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},   {"biliti", "ble"},
    };
    for (const auto& rule : rules) {
        if (ends_with(w, rule.suffix)) {
            if (measure(without_suffix(w, rule.suffix)) > 0) {
                replace_suffix(w, rule.suffix, rule.replacement);
            }
            return;
        }
    }
}

inline void step3(std::string& w) {
    static constexpr SuffixRule rules[] = {
        {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
        {"ical", "ic"},  {"ful", ""},   {"ness", ""},
    };
    for (const auto& rule : rules) {
        if (ends_with(w, rule.suffix)) {
            if (measure(without_suffix(w, rule.suffix)) > 0) {
                replace_suffix(w, rule.suffix, rule.replacement);
            }
            return;
        }
    }
}

inline void step4(std::string& w) {
    static constexpr const char* suffixes[] = {
        "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement",
        "ment", "ent", "ou", "ism", "ate", "iti", "ous", "ive", "ize",
    };
    for (const char* suffix : suffixes) {
        if (ends_with(w, suffix)) {
            std::string stem = without_suffix(w, suffix);
            if (measure(stem) > 1) w = std::move(stem);
            return;
        }
    }
    if (ends_with(w, "ion")) {
        std::string stem = without_suffix(w, "ion");
        if (!stem.empty() && (stem.back() == 's' || stem.back() == 't') && measure(stem) > 1) {
            w = std::move(stem);
        }
    }
}

inline void step5(std::string& w) {
    if (ends_with(w, "e")) {
        std::string stem = without_suffix(w, "e");
        const int m = measure(stem);
        if (m > 1 || (m == 1 && !cvc(stem))) w = std::move(stem);
    }
    if (measure(w) > 1 && ends_with(w, "ll")) w.pop_back();
}

}  // namespace detail

/// One pass of the Porter algorithm over a lowercase word.
inline std::string stem(std::string w) {
    if (w.size() <= 2) return w;
    detail::step1a(w);
    detail::step1b(w);
    detail::step1c(w);
    detail::step2(w);
    detail::step3(w);
    detail::step4(w);
    detail::step5(w);
    return w;
}

}  // namespace porter

/// Canonical lemma for a word: lowercase, then Porter-stem to a fixed point.
/// The fixed-point iteration makes normalize idempotent for every input;
/// a single pass already suffices for almost all English words.
inline std::string normalize(const std::string& word) {
    std::string w = to_lower_ascii(word);
    for (int i = 0; i < 8; i++) {
        std::string next = porter::stem(w);
        if (next == w) break;
        w = std::move(next);
    }
    return w;
}

}  // namespace conceptset
