#include <doctest.h>

#include <fstream>
#include <sstream>

#include "clfinfo/config.hpp"
#include "clfinfo/error.hpp"
#include "clfinfo/pipeline.hpp"
#include "clfinfo/report.hpp"
#include "oracles.hpp"

using namespace clfinfo;

namespace {

std::string data(const std::string& name) { return std::string(CLFINFO_TEST_DATA) + "/" + name; }

LexiconInputs fixture_lexicon() {
    LexiconInputs lex;
    std::ifstream d(data("cedict_fixture.u8")), n(data("noun_supersenses.tsv")), a(data("adjective_supersenses.tsv")),
        s(data("synsets.tsv"));
    lex.dictionary = load_dictionary(d);
    lex.noun_supersenses = load_inventory(n, InventoryKind::noun_supersense);
    lex.adjective_supersenses = load_inventory(a, InventoryKind::adjective_supersense);
    lex.synsets = load_inventory(s, InventoryKind::synset);
    return lex;
}

RunConfig small_config() {
    RunConfig cfg;
    cfg.bootstrap.replicates = 50;
    return cfg;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("config file parsing") {
    std::istringstream in(
        "# run settings\n"
        "corpus = a.conllu, b/\n"
        "mode = strict\n"
        "analyses = noun, synset\n"
        "[extraction]\n"
        "classifier_xpos = M, CL ; trailing comment\n"
        "match_policy = deprel_only\n"
        "[bootstrap]\n"
        "replicates = 250\n"
        "seed = 7\n");
    RunConfig cfg;
    apply_config(in, "run.ini", cfg);
    CHECK(cfg.corpus == std::vector<std::string>{"a.conllu", "b/"});
    CHECK(cfg.mode == ParseMode::strict);
    CHECK(cfg.analyses == std::vector<AnalysisKind>{AnalysisKind::noun, AnalysisKind::synset});
    CHECK(cfg.rules.classifier_xpos == std::set<std::string>{"M", "CL"});
    CHECK(cfg.rules.match_policy == MatchPolicy::deprel_only);
    CHECK(cfg.bootstrap.replicates == 250);
    CHECK(cfg.bootstrap.seed == 7);
}

TEST_CASE("config errors name the line") {
    auto fails = [](const std::string& text) {
        std::istringstream in(text);
        RunConfig cfg;
        try {
            apply_config(in, "run.ini", cfg);
        } catch (const ConfigError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(fails("mode = strict\nbogus = 1\n").find("run.ini:2") != std::string::npos);
    CHECK(fails("[bootstrap]\nreplicates = many\n").find("run.ini:2") != std::string::npos);
    CHECK(fails("no equals sign\n").find("run.ini:1") != std::string::npos);
    CHECK_FALSE(fails("analyses = nouns\n").empty());
    CHECK_FALSE(fails("[bootstrap]\nconfidence = 1.5\n").empty());
}

TEST_CASE("analysis selection") {
    RunConfig cfg;
    CHECK(resolve_analyses(cfg, false) == std::vector<AnalysisKind>{AnalysisKind::noun});
    CHECK(resolve_analyses(cfg, true) == std::vector<AnalysisKind>{AnalysisKind::noun, AnalysisKind::adjective});
    cfg.dictionary = "d";
    cfg.synsets = "s";
    CHECK(resolve_analyses(cfg, false).back() == AnalysisKind::synset);

    RunConfig explicit_cfg;
    explicit_cfg.analyses = {AnalysisKind::adjective_supersense};
    try {
        resolve_analyses(explicit_cfg, false);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("triples") != std::string::npos);
        CHECK(msg.find("dictionary") != std::string::npos);
        CHECK(msg.find("adjective_supersenses") != std::string::npos);
    }
}

TEST_CASE("deterministic classifier: H(C|N) = 0 and I = H(C)") {
    PairCount p;
    p.add({"匹", "马"}, 5);
    p.add({"只", "羊"}, 3);
    p.add({"条", "河"}, 2);
    auto report = analyze(p, nullptr, {}, {AnalysisKind::noun}, small_config());
    REQUIRE(report.analyses.size() == 1);
    const auto& r = report.analyses[0];
    CHECK(std::abs(r.h_c_given_x) < 1e-12);
    CHECK(std::abs(r.i_c_x - oracle::entropy({0.5, 0.3, 0.2})) < 1e-12);
    CHECK(std::abs(r.h_c - r.i_c_x) < 1e-12);
}

TEST_CASE("full fixture analysis") {
    std::ifstream pin(data("golden_pairs.tsv")), tin(data("golden_triples.tsv"));
    auto pairs = read_pairs_tsv(pin, "pairs");
    auto triples = read_triples_tsv(tin, "triples");
    auto lex = fixture_lexicon();
    auto cfg = small_config();
    cfg.conditionals = {"人士", "人"};
    const std::vector<AnalysisKind> all{AnalysisKind::noun, AnalysisKind::adjective, AnalysisKind::noun_supersense,
                                        AnalysisKind::adjective_supersense, AnalysisKind::synset};
    auto report = analyze(pairs.table, &triples.table, lex, all, cfg, pairs.metadata);

    REQUIRE(report.analyses.size() == 3);
    CHECK(report.analyses[0].analysis == "noun");
    CHECK(report.analyses[1].analysis == "adjective");
    CHECK(report.analyses[2].analysis == "synset");
    for (const auto& r : report.analyses) CHECK(std::abs(r.h_c - r.h_c_given_x - r.i_c_x) < 1e-12);

    REQUIRE(report.noun_supersense);
    const auto& ns = *report.noun_supersense;
    CHECK(ns.categories_declared == 14);
    for (std::size_t i = 1; i < ns.categories.size(); ++i) {
        CHECK(ns.categories[i - 1].i_c_x >= ns.categories[i].i_c_x);
    }
    CHECK(std::find(ns.skipped.begin(), ns.skipped.end(), "noun.time") != ns.skipped.end());
    for (const auto& c : ns.categories) REQUIRE(c.h_c_global);

    REQUIRE(report.conditionals.size() == 2);
    CHECK(report.conditionals[0].classifiers.size() == 1);
    CHECK(report.conditionals[0].classifiers[0].second == 1.0);
    CHECK(report.conditionals[1].observations == 3);

    auto j = to_json(report);
    CHECK(j["schema"] == kReportSchema);
    CHECK(j["settings"]["extraction"]["mode"] == "strict");
    CHECK_NOTHROW(render_report(nlohmann::json::parse(j.dump())));

    std::ostringstream csv;
    write_category_csv(csv, ns);
    CHECK(csv.str().rfind("category,H_C,I,H_C_given,ci_lo,ci_hi\n", 0) == 0);
}

TEST_CASE("identity violation is an internal error") {
    MIReport r;
    MIRecord bad;
    bad.analysis = "noun";
    bad.h_c = 1.0;
    bad.h_c_given_x = 0.5;
    bad.i_c_x = 0.4;
    r.analyses.push_back(bad);
    CHECK_THROWS_AS(check_identity(r), std::logic_error);
}

TEST_CASE("render errors carry the field path") {
    auto err = [](const std::string& text) {
        try {
            render_report(nlohmann::json::parse(text));
        } catch (const FormatError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(err("[]") == "$: expected object");
    CHECK(err(R"({"schema":"other/9"})").find("$.schema") == 0);
    auto doc = nlohmann::json::parse(slurp(data("golden_report.json")));
    doc["analyses"][0].erase("I_C_X");
    try {
        render_report(doc);
        FAIL("expected FormatError");
    } catch (const FormatError& e) {
        CHECK(std::string(e.what()) == "$.analyses[0].I_C_X: missing");
    }
    doc = nlohmann::json::parse(slurp(data("golden_report.json")));
    doc["analyses"][1]["support"]["rows"] = "three";
    try {
        render_report(doc);
        FAIL("expected FormatError");
    } catch (const FormatError& e) {
        CHECK(std::string(e.what()) == "$.analyses[1].support.rows: expected nonnegative integer");
    }
}

TEST_CASE("golden report renders to the committed text") {
    auto doc = nlohmann::json::parse(slurp(data("golden_report.json")));
    CHECK(render_report(doc) == slurp(data("golden_report.txt")));
}
