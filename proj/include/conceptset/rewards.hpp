#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "conceptset/concept_set.hpp"
#include "conceptset/distance_matrix.hpp"
#include "conceptset/errors.hpp"
#include "conceptset/extract.hpp"
#include "conceptset/set_ops.hpp"

namespace conceptset {

enum class Speaker { Self, Partner };

struct Turn {
    Speaker speaker;
    std::string text;
};

struct DialogueEpisode {
    std::vector<std::string> self_persona;
    std::vector<std::string> partner_persona;
    std::vector<Turn> turns;
};

/// Next-utterance coherence log-probabilities, supplied by an external
/// classifier: the score of the self utterance following its context, and of
/// the partner's reply following the self utterance.
struct CoherenceInput {
    double c_prev = 0.0;
    double c_next = 0.0;
};

/// External LM log-likelihood of a self utterance.
struct FluencyInput {
    double lm_score = 0.0;
};

struct RewardConfig {
    double gamma = 0.5;            // recall vs. coherence mix in R_mut
    double beta1 = 1.0;            // weight of R_LM
    double beta2 = 1.0;            // weight of R_mut
    double beta3 = 1.0;            // weight of R_com
    double r = 0.2;                // intersection threshold for the recall score
    int horizon = 3;               // future-dialogue turn window per self turn

    void validate() const {
        if (!(gamma >= 0.0 && gamma <= 1.0)) {
            throw Error(ErrorCode::InvalidParams, "gamma must be in [0, 1]");
        }
        if (beta1 < 0.0 || beta2 < 0.0 || beta3 < 0.0) {
            throw Error(ErrorCode::InvalidParams, "betas must be nonnegative");
        }
        if (!(r > 0.0)) throw Error(ErrorCode::InvalidParams, "r must be > 0");
        if (horizon < 1) throw Error(ErrorCode::InvalidParams, "horizon must be >= 1");
    }
};

/// S_rec: the fraction of combined persona concepts covered (within r) by the
/// future-dialogue set F. Directionality per Eq. 4 — the intersection selects
/// members of S∪P near F.
inline double recall_score(const ConceptSet& future, const ConceptSet& self_persona,
                           const ConceptSet& partner_persona, const DistanceMatrix& d,
                           double r) {
    if (self_persona.empty() && partner_persona.empty()) {
        throw Error(ErrorCode::EmptyPersona, "both persona concept sets are empty");
    }
    const ConceptSet persona = set_union(self_persona, partner_persona, d.vocab());
    if (future.empty()) return 0.0;
    const ConceptSet covered = intersect(future, persona, d, r);
    return double(covered.cardinality()) / double(persona.cardinality());
}

/// S_coh: mean of the two supplied log-probabilities.
inline double coherence_score(const CoherenceInput& input) {
    return (input.c_prev + input.c_next) / 2.0;
}

/// R_mut = gamma * S_rec + (1 - gamma) * S_coh.
inline double mutual_benefit_reward(double s_rec, double s_coh, double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw Error(ErrorCode::InvalidParams, "gamma must be in [0, 1]");
    }
    return gamma * s_rec + (1.0 - gamma) * s_coh;
}

/// R_com = 1 / (Dist(F,S) + Dist(F,P)); by the set-level triangle property it
/// is bounded above by 1 / Dist(S,P) (up to float accumulation error).
inline double common_ground_reward(const ConceptSet& future, const ConceptSet& self_set,
                                   const ConceptSet& partner_set, const DistanceMatrix& d) {
    return 1.0 / (set_distance(future, self_set, d) + set_distance(future, partner_set, d));
}

/// R = beta1 * R_LM + beta2 * R_mut + beta3 * R_com.
inline double final_reward(double r_lm, double r_mut, double r_com, const RewardConfig& cfg) {
    return cfg.beta1 * r_lm + cfg.beta2 * r_mut + cfg.beta3 * r_com;
}

/// Min-max scale to [0,1], then subtract the batch median so roughly half the
/// values come out positive. Order-preserving; a constant batch maps to zeros.
inline std::vector<double> batch_normalize(const std::vector<double>& values) {
    const size_t n = values.size();
    if (n == 0) return {};
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    if (*mx == *mn) return std::vector<double>(n, 0.0);
    std::vector<double> scaled(n);
    for (size_t i = 0; i < n; i++) scaled[i] = (values[i] - *mn) / (*mx - *mn);
    std::vector<double> sorted = scaled;
    std::sort(sorted.begin(), sorted.end());
    const double median =
        n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    for (double& v : scaled) v -= median;
    return scaled;
}

/// One scored self turn. r_com is absent when its future window (or one of
/// the persona sets) extracts to nothing; the final r then substitutes zero
/// for the missing term. partial marks any zero substitution, whether from a
/// missing scorer input or a missing r_com.
struct TurnScore {
    size_t turn_index = 0;  // position in the episode's turn list
    double s_coh = 0.0;
    double r_mut = 0.0;
    std::optional<double> r_com;
    double r = 0.0;
    bool partial = false;
};

struct EpisodeScore {
    bool scorable = true;
    std::string unscorable_reason;
    double s_rec = 0.0;
    std::optional<double> r_com;       // whole-episode F against both personas
    std::vector<TurnScore> per_turn;   // one entry per self turn
    std::vector<double> normalized;    // per-stream batch-normalized R, >= 2 self turns
    int horizon_turns = 0;
    std::vector<std::string> warnings;
};

/// Full episode scoring pipeline. F is extracted over all turns for S_rec and
/// the episode-level R_com; each self turn additionally gets a lookahead
/// window of `horizon` turns starting at itself for its own R_com. Coherence
/// and fluency values, when given, must supply one entry per self turn;
/// missing streams are substituted with zeros and flagged.
inline EpisodeScore score_episode(const DialogueEpisode& episode, const DistanceMatrix& d,
                                  const ExtractionConfig& extraction, const RewardConfig& cfg,
                                  const std::optional<std::vector<CoherenceInput>>& coherence,
                                  const std::optional<std::vector<FluencyInput>>& fluency) {
    cfg.validate();
    if (episode.turns.empty()) {
        throw Error(ErrorCode::InvalidParams, "episode has no turns");
    }

    std::vector<size_t> self_turns;
    for (size_t i = 0; i < episode.turns.size(); i++) {
        if (episode.turns[i].speaker == Speaker::Self) self_turns.push_back(i);
    }
    if (coherence && coherence->size() != self_turns.size()) {
        throw Error(ErrorCode::MismatchedScorerLength,
                    "coherence entries: " + std::to_string(coherence->size()) +
                        ", self turns: " + std::to_string(self_turns.size()));
    }
    if (fluency && fluency->size() != self_turns.size()) {
        throw Error(ErrorCode::MismatchedScorerLength,
                    "fluency entries: " + std::to_string(fluency->size()) +
                        ", self turns: " + std::to_string(self_turns.size()));
    }

    const ConceptSet self_set = extract_many(episode.self_persona, extraction);
    const ConceptSet partner_set = extract_many(episode.partner_persona, extraction);
    if (self_set.empty() && partner_set.empty()) {
        throw Error(ErrorCode::EmptyPersona, "no persona sentence yields a vocabulary concept");
    }

    EpisodeScore score;
    score.horizon_turns = cfg.horizon;
    for (size_t i = 1; i < episode.turns.size(); i++) {
        if (episode.turns[i].speaker == episode.turns[i - 1].speaker) {
            score.warnings.push_back("speakers do not strictly alternate");
            break;
        }
    }
    const bool personas_complete = !self_set.empty() && !partner_set.empty();
    if (!personas_complete) {
        score.warnings.push_back(
            std::string(self_set.empty() ? "self" : "partner") +
            " persona extracts to no concepts; common ground reward unavailable");
    }

    std::vector<std::string> all_texts;
    all_texts.reserve(episode.turns.size());
    for (const Turn& turn : episode.turns) all_texts.push_back(turn.text);
    const ConceptSet future = extract_many(all_texts, extraction);
    if (future.empty()) {
        score.scorable = false;
        score.unscorable_reason = "empty future set";
        return score;
    }

    score.s_rec = recall_score(future, self_set, partner_set, d, cfg.r);
    if (personas_complete) {
        score.r_com = common_ground_reward(future, self_set, partner_set, d);
    }

    std::vector<double> lm_stream, mut_stream, com_stream;
    for (size_t ordinal = 0; ordinal < self_turns.size(); ordinal++) {
        const size_t index = self_turns[ordinal];
        TurnScore turn;
        turn.turn_index = index;
        turn.s_coh = coherence ? coherence_score((*coherence)[ordinal]) : 0.0;
        turn.r_mut = mutual_benefit_reward(score.s_rec, turn.s_coh, cfg.gamma);

        const size_t window_end = std::min(index + size_t(cfg.horizon), episode.turns.size());
        const std::vector<std::string> window(all_texts.begin() + index,
                                              all_texts.begin() + window_end);
        const ConceptSet turn_future = extract_many(window, extraction);
        if (personas_complete && !turn_future.empty()) {
            turn.r_com = common_ground_reward(turn_future, self_set, partner_set, d);
        }

        const double r_lm = fluency ? (*fluency)[ordinal].lm_score : 0.0;
        turn.r = final_reward(r_lm, turn.r_mut, turn.r_com.value_or(0.0), cfg);
        turn.partial = !coherence || !fluency || !turn.r_com;

        lm_stream.push_back(r_lm);
        mut_stream.push_back(turn.r_mut);
        com_stream.push_back(turn.r_com.value_or(0.0));
        score.per_turn.push_back(std::move(turn));
    }

    // Normalization runs within each reward stream before combination, so the
    // three live on a comparable scale.
    if (self_turns.size() >= 2) {
        const std::vector<double> lm_norm = batch_normalize(lm_stream);
        const std::vector<double> mut_norm = batch_normalize(mut_stream);
        const std::vector<double> com_norm = batch_normalize(com_stream);
        score.normalized.resize(self_turns.size());
        for (size_t i = 0; i < self_turns.size(); i++) {
            score.normalized[i] =
                final_reward(lm_norm[i], mut_norm[i], com_norm[i], cfg);
        }
    }
    return score;
}

}  // namespace conceptset
