#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "conceptset/errors.hpp"
#include "conceptset/json_writer.hpp"
#include "conceptset/rewards.hpp"

namespace conceptset {

/// One episode plus its optional externally supplied scorer streams, exactly
/// as they arrive on the wire.
struct EpisodeInput {
    DialogueEpisode episode;
    std::optional<std::vector<CoherenceInput>> coherence;
    std::optional<std::vector<FluencyInput>> fluency;
};

namespace detail {

inline Error format_error(const std::string& why) {
    return Error(ErrorCode::FormatError, "episode JSON: " + why);
}

inline std::vector<std::string> string_array(const nlohmann::json& j, const char* field) {
    const auto it = j.find(field);
    if (it == j.end() || !it->is_array()) {
        throw format_error(std::string("\"") + field + "\" must be an array of strings");
    }
    std::vector<std::string> out;
    out.reserve(it->size());
    for (const auto& entry : *it) {
        if (!entry.is_string()) {
            throw format_error(std::string("\"") + field + "\" must be an array of strings");
        }
        out.push_back(entry.get<std::string>());
    }
    return out;
}

inline EpisodeInput episode_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw format_error("episode must be an object");
    EpisodeInput input;
    input.episode.self_persona = string_array(j, "self_persona");
    input.episode.partner_persona = string_array(j, "partner_persona");

    const auto turns = j.find("turns");
    if (turns == j.end() || !turns->is_array()) {
        throw format_error("\"turns\" must be an array");
    }
    for (const auto& entry : *turns) {
        if (!entry.is_object() || !entry.contains("speaker") || !entry["speaker"].is_string() ||
            !entry.contains("text") || !entry["text"].is_string()) {
            throw format_error("each turn needs a \"speaker\" and \"text\" string");
        }
        const std::string speaker = entry["speaker"].get<std::string>();
        Turn turn;
        if (speaker == "self") {
            turn.speaker = Speaker::Self;
        } else if (speaker == "partner") {
            turn.speaker = Speaker::Partner;
        } else {
            throw format_error("speaker must be \"self\" or \"partner\", got \"" + speaker + "\"");
        }
        turn.text = entry["text"].get<std::string>();
        input.episode.turns.push_back(std::move(turn));
    }

    if (const auto coh = j.find("coherence"); coh != j.end() && !coh->is_null()) {
        if (!coh->is_array()) throw format_error("\"coherence\" must be an array of [c_prev, c_next] pairs");
        std::vector<CoherenceInput> values;
        for (const auto& entry : *coh) {
            if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
                !entry[1].is_number()) {
                throw format_error("\"coherence\" must be an array of [c_prev, c_next] pairs");
            }
            const CoherenceInput c{entry[0].get<double>(), entry[1].get<double>()};
            if (!std::isfinite(c.c_prev) || !std::isfinite(c.c_next) || c.c_prev > 0.0 ||
                c.c_next > 0.0) {
                throw Error(ErrorCode::InvalidParams,
                            "coherence values are log-probabilities and must be finite and <= 0");
            }
            values.push_back(c);
        }
        input.coherence = std::move(values);
    }

    if (const auto flu = j.find("fluency"); flu != j.end() && !flu->is_null()) {
        if (!flu->is_array()) throw format_error("\"fluency\" must be an array of numbers");
        std::vector<FluencyInput> values;
        for (const auto& entry : *flu) {
            if (!entry.is_number()) throw format_error("\"fluency\" must be an array of numbers");
            const double lm = entry.get<double>();
            if (!std::isfinite(lm)) {
                throw Error(ErrorCode::InvalidParams, "fluency values must be finite");
            }
            values.push_back({lm});
        }
        input.fluency = std::move(values);
    }
    return input;
}

}  // namespace detail

/// Accepts a single episode object or an array of them; returns them in input
/// order. Malformed JSON or a structurally invalid episode raises FormatError;
/// out-of-range scorer values raise InvalidParams.
inline std::vector<EpisodeInput> parse_episodes(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw detail::format_error("invalid JSON");
    std::vector<EpisodeInput> inputs;
    if (j.is_array()) {
        for (const auto& entry : j) inputs.push_back(detail::episode_from_json(entry));
    } else {
        inputs.push_back(detail::episode_from_json(j));
    }
    return inputs;
}

inline Json report_to_json(const EpisodeScore& score) {
    Json report = Json::object();
    if (!score.scorable) {
        report["unscorable"] = score.unscorable_reason;
        report["warnings"] = score.warnings;
        return report;
    }
    report["s_rec"] = score.s_rec;
    report["r_com"] = score.r_com ? Json(*score.r_com) : Json(nullptr);
    Json turns = Json::array();
    for (const TurnScore& turn : score.per_turn) {
        Json entry = Json::object();
        entry["turn_index"] = turn.turn_index;
        entry["s_coh"] = turn.s_coh;
        entry["r_mut"] = turn.r_mut;
        entry["r_com"] = turn.r_com ? Json(*turn.r_com) : Json(nullptr);
        entry["r"] = turn.r;
        entry["partial"] = turn.partial;
        turns.push_back(std::move(entry));
    }
    report["per_turn"] = std::move(turns);
    report["normalized"] = score.normalized;
    report["horizon_turns"] = score.horizon_turns;
    report["warnings"] = score.warnings;
    return report;
}

}  // namespace conceptset
