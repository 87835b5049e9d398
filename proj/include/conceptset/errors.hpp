#pragma once

#include <stdexcept>
#include <string>

namespace conceptset {

enum class ErrorCode {
    EmptyVocabulary,
    IoError,
    FormatError,
    CorruptFile,
    InvalidParams,
    VocabMismatch,
    EmptySet,
    EmptyPersona,
    MismatchedScorerLength,
};

inline const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::EmptyVocabulary: return "EmptyVocabulary";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::FormatError: return "FormatError";
        case ErrorCode::CorruptFile: return "CorruptFile";
        case ErrorCode::InvalidParams: return "InvalidParams";
        case ErrorCode::VocabMismatch: return "VocabMismatch";
        case ErrorCode::EmptySet: return "EmptySet";
        case ErrorCode::EmptyPersona: return "EmptyPersona";
        case ErrorCode::MismatchedScorerLength: return "MismatchedScorerLength";
    }
    return "Unknown";
}

/// Exception type carrying a machine-readable error code alongside the message.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }
    const char* code_name() const noexcept { return to_string(code_); }

private:
    ErrorCode code_;
};

}  // namespace conceptset
