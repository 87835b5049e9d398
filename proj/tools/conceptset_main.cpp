// conceptset: command-line front end for the concept-set algebra toolkit.
//
// Subcommands: build-vocab, build-matrix, inspect, extract, expand,
// intersect, distance, score. Structured JSON on stdout; exit 0 on success,
// 1 with an error object on failure, 2 on bad flags.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <conceptset/conceptset.hpp>

namespace {

using conceptset::Json;

struct CliConfig {
    std::string matrix_path;
    std::string vocab_path;
    int k = 250;
    double r = 0.2;
    double gamma = 0.5;
    double beta1 = 1.0;
    double beta2 = 1.0;
    double beta3 = 1.0;
    double max_dist = 10.0;
    int horizon = 3;
    bool pretty = false;
    bool show_config = false;
};

void emit(const Json& value, bool pretty) {
    std::cout << conceptset::write_json(value, pretty) << "\n";
}

std::vector<std::string> split_set_arg(const std::string& arg) {
    std::vector<std::string> lemmas;
    std::stringstream stream(arg);
    std::string lemma;
    while (std::getline(stream, lemma, ',')) {
        if (!lemma.empty()) lemmas.push_back(lemma);
    }
    return lemmas;
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw conceptset::Error(conceptset::ErrorCode::IoError, "cannot open: " + path);
    }
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw conceptset::Error(conceptset::ErrorCode::IoError, "cannot open: " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string resolved_matrix_path(const CliConfig& cfg) {
    if (!cfg.matrix_path.empty()) return cfg.matrix_path;
    if (const char* env = std::getenv("CONCEPTSET_MATRIX"); env && *env) return env;
    return {};
}

conceptset::DistanceMatrix require_matrix(const CliConfig& cfg) {
    const std::string path = resolved_matrix_path(cfg);
    if (path.empty()) {
        // Missing input location is a usage problem, not a runtime failure.
        std::cerr << "error: no matrix given (use --matrix or CONCEPTSET_MATRIX)\n";
        std::exit(2);
    }
    return conceptset::load_matrix(path);
}

void warn_if_degenerate_r(double r, const conceptset::DistanceMatrix& matrix) {
    if (r <= double(matrix.self_dist())) {
        std::cerr << "warning: r <= self_dist (" << r
                  << " <= " << matrix.self_dist()
                  << "); the strict intersection excludes even exact matches\n";
    }
}

Json lemma_array(const conceptset::ConceptSet& set, const conceptset::ConceptVocabulary& vocab) {
    Json out = Json::array();
    for (const auto& lemma : set.lemmas(vocab)) out.push_back(lemma);
    return out;
}

Json config_json(const CliConfig& cfg) {
    Json out = Json::object();
    out["k"] = cfg.k;
    out["r"] = cfg.r;
    out["gamma"] = cfg.gamma;
    out["beta1"] = cfg.beta1;
    out["beta2"] = cfg.beta2;
    out["beta3"] = cfg.beta3;
    out["max_dist"] = cfg.max_dist;
    out["horizon"] = cfg.horizon;
    const std::string matrix = resolved_matrix_path(cfg);
    out["matrix"] = matrix.empty() ? Json(nullptr) : Json(matrix);
    out["vocab"] = cfg.vocab_path.empty() ? Json(nullptr) : Json(cfg.vocab_path);
    return out;
}

conceptset::OperationParams operation_params(const CliConfig& cfg) {
    conceptset::OperationParams params{cfg.k, cfg.r};
    params.validate();
    return params;
}

conceptset::RewardConfig reward_config(const CliConfig& cfg) {
    conceptset::RewardConfig rc;
    rc.gamma = cfg.gamma;
    rc.beta1 = cfg.beta1;
    rc.beta2 = cfg.beta2;
    rc.beta3 = cfg.beta3;
    rc.r = cfg.r;
    rc.horizon = cfg.horizon;
    rc.validate();
    return rc;
}

int run_build_vocab(const CliConfig& cfg, const std::string& words_path,
                    const std::string& stopwords_path, const std::string& drop_path,
                    const std::string& out_path) {
    std::unordered_set<std::string> stopwords = conceptset::default_stopwords();
    if (!stopwords_path.empty()) {
        const auto lines = read_lines(stopwords_path);
        stopwords = {lines.begin(), lines.end()};
    }
    std::unordered_set<std::string> drop_list;
    if (!drop_path.empty()) {
        const auto lines = read_lines(drop_path);
        drop_list = {lines.begin(), lines.end()};
    }
    const auto vocab =
        conceptset::build_vocabulary(read_lines(words_path), stopwords, drop_list);
    conceptset::save_vocabulary(vocab, out_path);
    Json out = Json::object();
    out["concepts"] = vocab.size();
    out["out"] = out_path;
    emit(out, cfg.pretty);
    return 0;
}

int run_build_matrix(const CliConfig& cfg, const std::string& dump_path,
                     const std::string& vocab_path, const std::string& out_path,
                     const std::string& lang) {
    const auto vocab = conceptset::load_vocabulary(vocab_path);
    std::ifstream dump(dump_path, std::ios::binary);
    if (!dump) {
        throw conceptset::Error(conceptset::ErrorCode::IoError, "cannot open: " + dump_path);
    }
    const auto parsed = conceptset::parse_dump(dump, vocab, lang);
    const auto graph = conceptset::build_graph(parsed.edges, vocab);
    const auto matrix = conceptset::compute_distance_matrix(graph, cfg.max_dist);
    conceptset::save_matrix(matrix, out_path);

    Json out = Json::object();
    out["vocab_size"] = vocab.size();
    out["edges"] = graph.edge_count();
    out["lines"] = parsed.stats.lines;
    out["parsed"] = parsed.stats.parsed;
    out["malformed"] = parsed.stats.malformed;
    out["language_skipped"] = parsed.stats.language_skipped;
    out["vocab_skipped"] = parsed.stats.vocab_skipped;
    out["self_loops"] = parsed.stats.self_loops;
    out["self_dist"] = double(matrix.self_dist());
    out["max_dist"] = double(matrix.max_dist());
    out["out"] = out_path;
    emit(out, cfg.pretty);
    return 0;
}

int run_inspect(const CliConfig& cfg) {
    const auto matrix = require_matrix(cfg);
    Json out = Json::object();
    out["vocab_size"] = matrix.size();
    out["self_dist"] = double(matrix.self_dist());
    out["max_dist"] = double(matrix.max_dist());
    emit(out, cfg.pretty);
    return 0;
}

int run_extract(const CliConfig& cfg, const std::string& text) {
    const auto stopwords = conceptset::default_stopwords();
    std::optional<conceptset::ConceptVocabulary> vocab;
    if (!cfg.vocab_path.empty()) {
        vocab = conceptset::load_vocabulary(cfg.vocab_path);
    } else if (!resolved_matrix_path(cfg).empty()) {
        vocab = require_matrix(cfg).vocab();
    } else {
        std::cerr << "error: extract needs --vocab or a matrix\n";
        return 2;
    }
    const conceptset::ExtractionConfig extraction{*vocab, stopwords};
    const auto set = conceptset::extract(text, extraction);
    emit(lemma_array(set, *vocab), cfg.pretty);
    return 0;
}

int run_expand(const CliConfig& cfg, const std::string& set_arg) {
    const auto params = operation_params(cfg);
    const auto matrix = require_matrix(cfg);
    const auto seed =
        conceptset::ConceptSet::from_lemmas(matrix.vocab(), split_set_arg(set_arg));
    const auto result = conceptset::expand(seed, matrix, params.k);

    Json out = Json::object();
    out["set"] = lemma_array(result.set, matrix.vocab());
    Json ranked = Json::array();
    for (const auto& [index, distance] : result.ranked.entries) {
        Json entry = Json::object();
        entry["concept"] = matrix.vocab().lemma(index);
        entry["distance"] = double(distance);
        ranked.push_back(std::move(entry));
    }
    out["ranked"] = std::move(ranked);
    emit(out, cfg.pretty);
    return 0;
}

int run_intersect(const CliConfig& cfg, const std::string& a_arg, const std::string& b_arg) {
    const auto params = operation_params(cfg);
    const auto matrix = require_matrix(cfg);
    warn_if_degenerate_r(params.r, matrix);
    const auto a = conceptset::ConceptSet::from_lemmas(matrix.vocab(), split_set_arg(a_arg));
    const auto b = conceptset::ConceptSet::from_lemmas(matrix.vocab(), split_set_arg(b_arg));
    const auto result = conceptset::intersect(a, b, matrix, params.r);
    Json out = Json::object();
    out["set"] = lemma_array(result, matrix.vocab());
    emit(out, cfg.pretty);
    return 0;
}

int run_distance(const CliConfig& cfg, const std::string& a_arg, const std::string& b_arg) {
    const auto matrix = require_matrix(cfg);
    const auto a = conceptset::ConceptSet::from_lemmas(matrix.vocab(), split_set_arg(a_arg));
    const auto b = conceptset::ConceptSet::from_lemmas(matrix.vocab(), split_set_arg(b_arg));
    Json out = Json::object();
    out["distance"] = conceptset::set_distance(a, b, matrix);
    emit(out, cfg.pretty);
    return 0;
}

int run_score(const CliConfig& cfg, const std::string& episode_path) {
    const auto rc = reward_config(cfg);
    const auto matrix = require_matrix(cfg);
    warn_if_degenerate_r(rc.r, matrix);
    const auto stopwords = conceptset::default_stopwords();
    const conceptset::ExtractionConfig extraction{matrix.vocab(), stopwords};

    const std::string text = read_file(episode_path);
    const auto inputs = conceptset::parse_episodes(text);
    const bool batch = !text.empty() && nlohmann::json::parse(text).is_array();

    Json reports = Json::array();
    for (const auto& input : inputs) {
        const auto score = conceptset::score_episode(input.episode, matrix, extraction, rc,
                                                     input.coherence, input.fluency);
        reports.push_back(conceptset::report_to_json(score));
    }
    emit(batch ? reports : reports.front(), cfg.pretty);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"knowledge-enhanced concept-set operations and dialogue scoring"};
    app.fallthrough();

    CliConfig cfg;
    app.add_option("--matrix", cfg.matrix_path, "distance matrix file (or CONCEPTSET_MATRIX)");
    app.add_option("--vocab", cfg.vocab_path, "vocabulary file");
    app.add_option("--k", cfg.k, "expansion size");
    app.add_option("--r", cfg.r, "intersection threshold");
    app.add_option("--gamma", cfg.gamma, "recall/coherence mix");
    app.add_option("--beta1", cfg.beta1, "weight of R_LM");
    app.add_option("--beta2", cfg.beta2, "weight of R_mut");
    app.add_option("--beta3", cfg.beta3, "weight of R_com");
    app.add_option("--max-dist", cfg.max_dist, "distance cap for unreachable pairs");
    app.add_option("--horizon", cfg.horizon, "future-dialogue turn window");
    app.add_flag("--pretty", cfg.pretty, "indent JSON output");
    app.add_flag("--show-config", cfg.show_config, "print effective parameters and exit");

    std::string words_path, stopwords_path, drop_path, out_path;
    auto* build_vocab = app.add_subcommand("build-vocab", "build a concept vocabulary");
    build_vocab->add_option("--words", words_path, "raw word list, one per line")->required();
    build_vocab->add_option("--stopwords", stopwords_path, "stopword list override");
    build_vocab->add_option("--drop", drop_path, "extra words to drop");
    build_vocab->add_option("--out", out_path, "output vocabulary path")->required();

    std::string dump_path, matrix_vocab_path, matrix_out_path, lang = "en";
    auto* build_matrix = app.add_subcommand("build-matrix", "ingest a dump and build D");
    build_matrix->add_option("--dump", dump_path, "assertion dump path")->required();
    build_matrix->add_option("--vocab", matrix_vocab_path, "vocabulary path")->required();
    build_matrix->add_option("--out", matrix_out_path, "output matrix path")->required();
    build_matrix->add_option("--lang", lang, "language tag filter");

    auto* inspect = app.add_subcommand("inspect", "print matrix header info");

    std::string text;
    auto* extract = app.add_subcommand("extract", "text to concept set");
    extract->add_option("--text", text, "input text")->required();

    std::string set_arg;
    auto* expand = app.add_subcommand("expand", "expand a set to its k nearest concepts");
    expand->add_option("--set", set_arg, "comma-separated lemmas")->required();

    std::string a_arg, b_arg;
    auto* intersect = app.add_subcommand("intersect", "members of B within r of A");
    intersect->add_option("--a", a_arg, "comma-separated lemmas")->required();
    intersect->add_option("--b", b_arg, "comma-separated lemmas")->required();

    std::string da_arg, db_arg;
    auto* distance = app.add_subcommand("distance", "mean pairwise set distance");
    distance->add_option("--a", da_arg, "comma-separated lemmas")->required();
    distance->add_option("--b", db_arg, "comma-separated lemmas")->required();

    std::string episode_path;
    auto* score = app.add_subcommand("score", "score a dialogue episode file");
    score->add_option("--episode", episode_path, "episode JSON path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (cfg.show_config) {
            emit(config_json(cfg), cfg.pretty);
            return 0;
        }
        if (build_vocab->parsed()) {
            return run_build_vocab(cfg, words_path, stopwords_path, drop_path, out_path);
        }
        if (build_matrix->parsed()) {
            return run_build_matrix(cfg, dump_path, matrix_vocab_path, matrix_out_path, lang);
        }
        if (inspect->parsed()) return run_inspect(cfg);
        if (extract->parsed()) return run_extract(cfg, text);
        if (expand->parsed()) return run_expand(cfg, set_arg);
        if (intersect->parsed()) return run_intersect(cfg, a_arg, b_arg);
        if (distance->parsed()) return run_distance(cfg, da_arg, db_arg);
        if (score->parsed()) return run_score(cfg, episode_path);
        std::cerr << app.help() << "\n";
        return 2;
    } catch (const conceptset::Error& e) {
        Json error = Json::object();
        error["error"] = e.code_name();
        error["message"] = e.what();
        emit(error, cfg.pretty);
        return 1;
    } catch (const std::exception& e) {
        Json error = Json::object();
        error["error"] = "InternalError";
        error["message"] = e.what();
        emit(error, cfg.pretty);
        return 1;
    }
}
