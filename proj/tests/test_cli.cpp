#include <catch2/catch_amalgamated.hpp>

#include <string>

#include <nlohmann/json.hpp>

#include "test_helpers.hpp"

using testutil::run_command;

namespace {

const std::string kCli = CONCEPTSET_CLI_PATH;

// Keeps ambient configuration from leaking into flag-resolution tests.
const std::string kNoEnv = "env -u CONCEPTSET_MATRIX ";

std::string q(const std::string& s) { return "'" + s + "'"; }

nlohmann::json parse(const std::string& text) { return nlohmann::json::parse(text); }

std::string dump_line(const std::string& a, const std::string& b, const std::string& weight) {
    return "/a/[/r/RelatedTo/,/c/en/" + a + "/,/c/en/" + b + "/]\t/r/RelatedTo\t/c/en/" + a +
           "/\t/c/en/" + b + "/\t{\"weight\": " + weight + "}\n";
}

/// On-disk toy world: the four-concept vocabulary and the matrix whose
/// shortest paths reproduce the worked-example distances.
struct CliWorld {
    testutil::TempDir dir;
    std::string vocab_path;
    std::string matrix_path;

    CliWorld() {
        testutil::write_text(dir.file("words.txt"), "ant\nbee\ncat\ndog\nthe\n");
        testutil::write_text(dir.file("dump.tsv"),
                             dump_line("ant", "bee", "6.666666666666667") +
                                 dump_line("ant", "cat", "2") +
                                 dump_line("bee", "cat", "2.2222222222222223") +
                                 dump_line("cat", "dog", "10"));
        vocab_path = dir.file("vocab.bin");
        matrix_path = dir.file("matrix.bin");

        auto vocab = run_command(kCli + " build-vocab --words " + q(dir.file("words.txt")) +
                                 " --out " + q(vocab_path));
        REQUIRE(vocab.exit_code == 0);
        REQUIRE(parse(vocab.output)["concepts"] == 4);

        auto matrix = run_command(kCli + " build-matrix --dump " + q(dir.file("dump.tsv")) +
                                  " --vocab " + q(vocab_path) + " --out " + q(matrix_path));
        REQUIRE(matrix.exit_code == 0);
        const auto summary = parse(matrix.output);
        REQUIRE(summary["vocab_size"] == 4);
        REQUIRE(summary["edges"] == 4);
        REQUIRE(summary["parsed"] == 4);
    }

    std::string cli() const { return kCli + " --matrix " + q(matrix_path) + " "; }
};

}  // namespace

TEST_CASE("toy pipeline end to end") {
    CliWorld world;

    SECTION("inspect reads the header back") {
        auto result = run_command(world.cli() + "inspect");
        REQUIRE(result.exit_code == 0);
        const auto info = parse(result.output);
        CHECK(info["vocab_size"] == 4);
        CHECK_THAT(info["self_dist"].get<double>(),
                   Catch::Matchers::WithinAbs(0.001, 1e-6));
        CHECK_THAT(info["max_dist"].get<double>(),
                   Catch::Matchers::WithinAbs(10.0, 1e-6));
    }

    SECTION("extract maps text onto the vocabulary") {
        auto result = run_command(world.cli() + "extract --text 'I love my dogs!'");
        REQUIRE(result.exit_code == 0);
        CHECK(parse(result.output) == nlohmann::json::parse(R"(["dog"])"));
    }

    SECTION("expand ranks by shortest-path distance") {
        auto result = run_command(world.cli() + "--k 2 expand --set cat");
        REQUIRE(result.exit_code == 0);
        const auto out = parse(result.output);
        CHECK(out["set"] == nlohmann::json::parse(R"(["cat","dog"])"));
        REQUIRE(out["ranked"].size() == 2);
        CHECK(out["ranked"][0]["concept"] == "cat");
        CHECK_THAT(out["ranked"][0]["distance"].get<double>(),
                   Catch::Matchers::WithinAbs(0.001, 1e-6));
        CHECK(out["ranked"][1]["concept"] == "dog");
        CHECK_THAT(out["ranked"][1]["distance"].get<double>(),
                   Catch::Matchers::WithinAbs(0.1, 1e-6));
    }

    SECTION("intersect is directional") {
        auto ab = run_command(world.cli() + "intersect --a cat --b dog,bee");
        REQUIRE(ab.exit_code == 0);
        CHECK(parse(ab.output)["set"] == nlohmann::json::parse(R"(["dog"])"));

        auto ba = run_command(world.cli() + "intersect --a dog,bee --b cat");
        CHECK(parse(ba.output)["set"] == nlohmann::json::parse(R"(["cat"])"));
    }

    SECTION("distance averages pairwise values") {
        auto result = run_command(world.cli() + "distance --a ant --b cat,dog");
        REQUIRE(result.exit_code == 0);
        CHECK_THAT(parse(result.output)["distance"].get<double>(),
                   Catch::Matchers::WithinAbs(0.55, 1e-6));
    }

    SECTION("score reproduces the worked episode") {
        testutil::write_text(world.dir.file("episode.json"), R"({
            "self_persona": ["I have an ant"],
            "partner_persona": ["I have a cat"],
            "turns": [{"speaker": "self", "text": "bee"}]
        })");
        auto result =
            run_command(world.cli() + "score --episode " + q(world.dir.file("episode.json")));
        REQUIRE(result.exit_code == 0);
        const auto report = parse(result.output);
        CHECK_THAT(report["s_rec"].get<double>(), Catch::Matchers::WithinAbs(0.5, 1e-9));
        CHECK_THAT(report["r_com"].get<double>(),
                   Catch::Matchers::WithinAbs(1.0 / 0.6, 1e-4));
        REQUIRE(report["per_turn"].size() == 1);
        CHECK_THAT(report["per_turn"][0]["r_mut"].get<double>(),
                   Catch::Matchers::WithinAbs(0.25, 1e-9));
        CHECK_THAT(report["per_turn"][0]["r"].get<double>(),
                   Catch::Matchers::WithinAbs(0.25 + 1.0 / 0.6, 1e-4));
        CHECK(report["per_turn"][0]["partial"] == true);
        CHECK(report["horizon_turns"] == 3);
    }
}

TEST_CASE("matrix resolution order") {
    CliWorld world;

    SECTION("environment variable supplies the matrix") {
        auto result = run_command("CONCEPTSET_MATRIX=" + q(world.matrix_path) + " " + kCli +
                                  " inspect");
        REQUIRE(result.exit_code == 0);
        CHECK(parse(result.output)["vocab_size"] == 4);
    }

    SECTION("the flag beats the environment") {
        auto result = run_command("CONCEPTSET_MATRIX=/no/such/file " + world.cli() + "inspect");
        REQUIRE(result.exit_code == 0);
    }

    SECTION("no matrix anywhere is a usage error") {
        auto result = run_command(kNoEnv + kCli + " inspect");
        CHECK(result.exit_code == 2);
    }

    SECTION("extract can run from a vocabulary alone") {
        auto result = run_command(kNoEnv + kCli + " --vocab " + q(world.vocab_path) +
                                  " extract --text 'singing cats'");
        REQUIRE(result.exit_code == 0);
        CHECK(parse(result.output) == nlohmann::json::parse(R"(["cat"])"));

        CHECK(run_command(kNoEnv + kCli + " extract --text hi").exit_code == 2);
    }
}

TEST_CASE("usage problems exit 2 without JSON") {
    CliWorld world;
    CHECK(run_command(kCli + " --no-such-flag").exit_code == 2);
    CHECK(run_command(kNoEnv + kCli).exit_code == 2);
    CHECK(run_command(world.cli() + "expand").exit_code == 2);  // missing --set
    CHECK(run_command(world.cli() + "no-such-command").exit_code == 2);
}

TEST_CASE("runtime failures exit 1 with a structured error") {
    CliWorld world;

    SECTION("missing matrix file") {
        auto result = run_command(kCli + " --matrix /no/such/file.bin inspect");
        CHECK(result.exit_code == 1);
        CHECK(parse(result.output)["error"] == "IoError");
    }

    SECTION("corrupt matrix file") {
        testutil::write_text(world.dir.file("junk.bin"), "garbage-not-a-matrix");
        auto result =
            run_command(kCli + " --matrix " + q(world.dir.file("junk.bin")) + " inspect");
        CHECK(result.exit_code == 1);
        CHECK(parse(result.output)["error"] == "CorruptFile");
    }

    SECTION("unknown lemma") {
        auto result = run_command(world.cli() + "expand --set horse");
        CHECK(result.exit_code == 1);
        const auto error = parse(result.output);
        CHECK(error["error"] == "InvalidParams");
        CHECK(error["message"].get<std::string>().find("horse") != std::string::npos);
    }

    SECTION("invalid parameter values") {
        CHECK(run_command(world.cli() + "--k 0 expand --set cat").exit_code == 1);
        CHECK(run_command(world.cli() + "--r 0 intersect --a cat --b dog").exit_code == 1);
        CHECK(parse(run_command(world.cli() + "--gamma 2 score --episode x.json").output)
                  ["error"] == "InvalidParams");
        CHECK(run_command(world.cli() + "--horizon 0 score --episode x.json").exit_code == 1);
    }

    SECTION("episode problems") {
        auto missing = run_command(world.cli() + "score --episode /no/such/episode.json");
        CHECK(missing.exit_code == 1);
        CHECK(parse(missing.output)["error"] == "IoError");

        testutil::write_text(world.dir.file("bad.json"), "{not json");
        auto bad = run_command(world.cli() + "score --episode " + q(world.dir.file("bad.json")));
        CHECK(bad.exit_code == 1);
        CHECK(parse(bad.output)["error"] == "FormatError");

        testutil::write_text(world.dir.file("empty_persona.json"),
                             R"({"self_persona": ["zzz"], "partner_persona": [],
                                 "turns": [{"speaker": "self", "text": "bee"}]})");
        auto empty = run_command(world.cli() + "score --episode " +
                                 q(world.dir.file("empty_persona.json")));
        CHECK(empty.exit_code == 1);
        CHECK(parse(empty.output)["error"] == "EmptyPersona");
    }

    SECTION("empty dump yields FormatError") {
        testutil::write_text(world.dir.file("empty.tsv"), "# nothing usable\n");
        auto result = run_command(kCli + " build-matrix --dump " +
                                  q(world.dir.file("empty.tsv")) + " --vocab " +
                                  q(world.vocab_path) + " --out " + q(world.dir.file("o.bin")));
        CHECK(result.exit_code == 1);
        CHECK(parse(result.output)["error"] == "FormatError");
    }
}

TEST_CASE("output is deterministic") {
    CliWorld world;
    const std::string command = world.cli() + "--k 3 expand --set cat,bee";
    auto first = run_command(command);
    auto second = run_command(command);
    REQUIRE(first.exit_code == 0);
    CHECK(first.output == second.output);

    // Rebuilding the matrix reproduces the file byte for byte.
    auto rebuild = run_command(kCli + " build-matrix --dump " + q(world.dir.file("dump.tsv")) +
                               " --vocab " + q(world.vocab_path) + " --out " +
                               q(world.dir.file("matrix2.bin")));
    REQUIRE(rebuild.exit_code == 0);
    CHECK(testutil::read_bytes(world.matrix_path) ==
          testutil::read_bytes(world.dir.file("matrix2.bin")));
}

TEST_CASE("pretty output carries the same document") {
    CliWorld world;
    auto compact = run_command(world.cli() + "--k 2 expand --set cat");
    auto pretty = run_command(world.cli() + "--pretty --k 2 expand --set cat");
    REQUIRE(compact.exit_code == 0);
    REQUIRE(pretty.exit_code == 0);
    CHECK(pretty.output.find('\n') != pretty.output.npos);
    CHECK(parse(compact.output) == parse(pretty.output));
}

TEST_CASE("show-config reports effective parameters") {
    auto defaults = run_command(kNoEnv + kCli + " --show-config");
    REQUIRE(defaults.exit_code == 0);
    CHECK(defaults.output ==
          R"({"k":250,"r":0.2,"gamma":0.5,"beta1":1,"beta2":1,"beta3":1,)"
          R"("max_dist":10,"horizon":3,"matrix":null,"vocab":null})"
          "\n");

    CliWorld world;
    auto overridden = run_command(world.cli() + "--k 99 --r 0.25 --show-config");
    REQUIRE(overridden.exit_code == 0);
    const auto config = parse(overridden.output);
    CHECK(config["k"] == 99);
    CHECK(config["r"] == 0.25);
    CHECK(config["matrix"] == world.matrix_path);
}

TEST_CASE("score handles batches in order") {
    CliWorld world;
    const std::string episode_half = R"({
        "self_persona": ["I have an ant"], "partner_persona": ["I have a cat"],
        "turns": [{"speaker": "self", "text": "bee"}]})";
    const std::string episode_full = R"({
        "self_persona": ["ant"], "partner_persona": ["cat"],
        "turns": [{"speaker": "self", "text": "ant cat"}]})";
    testutil::write_text(world.dir.file("batch.json"),
                         "[" + episode_half + "," + episode_full + "]");

    auto result = run_command(world.cli() + "score --episode " + q(world.dir.file("batch.json")));
    REQUIRE(result.exit_code == 0);
    const auto reports = parse(result.output);
    REQUIRE(reports.is_array());
    REQUIRE(reports.size() == 2);
    CHECK_THAT(reports[0]["s_rec"].get<double>(), Catch::Matchers::WithinAbs(0.5, 1e-9));
    CHECK_THAT(reports[1]["s_rec"].get<double>(), Catch::Matchers::WithinAbs(1.0, 1e-9));

    // A single object in produces a single object out.
    testutil::write_text(world.dir.file("single.json"), episode_half);
    auto single = run_command(world.cli() + "score --episode " + q(world.dir.file("single.json")));
    CHECK_FALSE(parse(single.output).is_array());
}

TEST_CASE("build-vocab honors stopword and drop overrides") {
    testutil::TempDir dir;
    testutil::write_text(dir.file("words.txt"), "ant\nbee\ncat\ndog\nthe\n");
    testutil::write_text(dir.file("stop.txt"), "ant\n");
    testutil::write_text(dir.file("drop.txt"), "dog\n");
    auto result = run_command(kCli + " build-vocab --words " + q(dir.file("words.txt")) +
                              " --stopwords " + q(dir.file("stop.txt")) + " --drop " +
                              q(dir.file("drop.txt")) + " --out " + q(dir.file("v.bin")));
    REQUIRE(result.exit_code == 0);
    // The override list replaces the default, so "the" is now a concept.
    CHECK(parse(result.output)["concepts"] == 3);  // bee, cat, the
}
