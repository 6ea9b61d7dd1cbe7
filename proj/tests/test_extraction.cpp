#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "clfinfo/counts.hpp"
#include "clfinfo/error.hpp"
#include "clfinfo/extraction.hpp"

using namespace clfinfo;

namespace {

Token tok(int i, std::string form, std::string upos, std::string xpos, int head, std::string deprel) {
    return Token{i, form, form, std::move(upos), std::move(xpos), head, std::move(deprel)};
}

Sentence one_person() {
    return Sentence{{tok(1, "一", "NUM", "CD", 3, "nummod"), tok(2, "个", "NOUN", "M", 3, "clf"),
                     tok(3, "人", "NOUN", "NN", 0, "root")},
                    "s1"};
}

std::vector<Sentence> golden() {
    std::ifstream in(std::string(CLFINFO_TEST_DATA) + "/golden.conllu");
    return read_sentences(in, "golden.conllu", ParseMode::strict);
}

using PairKey = std::pair<std::string, std::string>;

}  // namespace

TEST_CASE("classifier attached to noun yields one pair") {
    auto pairs = extract_pairs(one_person(), ExtractionRules{});
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0].classifier == "个");
    CHECK(pairs[0].noun == "人");
    CHECK(pairs[0].sentence_id == "s1");
}

TEST_CASE("sentence without classifier yields nothing") {
    Sentence s{{tok(1, "他", "PRON", "PN", 2, "nsubj"), tok(2, "喜欢", "VERB", "VV", 0, "root"),
                tok(3, "音乐", "NOUN", "NN", 2, "obj")},
               "s"};
    CHECK(extract_pairs(s, ExtractionRules{}).empty());
    CHECK(extract_triples(s, ExtractionRules{}).empty());
}

TEST_CASE("match policies") {
    // deprel nmod, xpos M: only the xpos route matches
    Sentence s{{tok(1, "本", "NOUN", "M", 2, "nmod"), tok(2, "书", "NOUN", "NN", 0, "root")}, "s"};
    ExtractionRules rules;
    CHECK(extract_pairs(s, rules).size() == 1);
    rules.match_policy = MatchPolicy::deprel_only;
    CHECK(extract_pairs(s, rules).empty());
    rules.match_policy = MatchPolicy::xpos_only;
    CHECK(extract_pairs(s, rules).size() == 1);

    rules.classifier_xpos.clear();
    CHECK_THROWS_AS(rules.validate(), ConfigError);
    rules.match_policy = MatchPolicy::deprel_only;
    CHECK_NOTHROW(rules.validate());
    CHECK(parse_match_policy("xpos_only") == MatchPolicy::xpos_only);
    CHECK_THROWS_AS(parse_match_policy("either"), ConfigError);
}

TEST_CASE("classifier whose head is not a noun is ignored") {
    Sentence s{{tok(1, "去", "VERB", "VV", 0, "root"), tok(2, "三", "NUM", "CD", 3, "nummod"),
                tok(3, "次", "NOUN", "M", 1, "clf")},
               "s"};
    CHECK(extract_pairs(s, ExtractionRules{}).empty());
}

TEST_CASE("triples need an amod ADJ on the pair's noun") {
    Sentence s{{tok(1, "一", "NUM", "CD", 4, "nummod"), tok(2, "个", "NOUN", "M", 4, "clf"),
                tok(3, "好", "ADJ", "JJ", 4, "amod"), tok(4, "人", "NOUN", "NN", 0, "root")},
               "s"};
    auto triples = extract_triples(s, ExtractionRules{});
    REQUIRE(triples.size() == 1);
    CHECK(triples[0] == TripleObservation{"好", "个", "人", "s"});

    SUBCASE("wrong deprel") {
        s.tokens[2].deprel = "acl";
        CHECK(extract_triples(s, ExtractionRules{}).empty());
        CHECK(extract_pairs(s, ExtractionRules{}).size() == 1);
    }
    SUBCASE("wrong upos") {
        s.tokens[2].upos = "VERB";
        CHECK(extract_triples(s, ExtractionRules{}).empty());
    }
}

TEST_CASE("pair with zero adjectives still counts as a pair") {
    auto s = one_person();
    CHECK(extract_pairs(s, ExtractionRules{}).size() == 1);
    CHECK(extract_triples(s, ExtractionRules{}).empty());
}

TEST_CASE("golden corpus: exact pair and triple multisets") {
    // Hand enumeration, one entry per classifier token (see golden.conllu).
    const std::map<PairKey, int> expected_pairs{
        {{"个", "人"}, 3},    // s01, s11 (multiword range line), s17
        {{"位", "人士"}, 1},  // s02
        {{"匹", "马"}, 2},    // s03, s18
        {{"只", "羊"}, 3},    // s04, s19 twice
        {{"条", "河"}, 1},    // s05
        {{"项", "工程"}, 1},  // s06
        {{"个", "苹果"}, 1},  // s07
        {{"本", "书"}, 1},    // s09 via xpos M
        {{"位", "老师"}, 2},  // s12 (empty node), s14
        {{"位", "科学家"}, 1},  // s13
        {{"个", "学生"}, 1},    // s14
        {{"家", "百度"}, 1},    // s16 PROPN
        {{"件", "事"}, 1},      // s20
    };
    const std::map<std::array<std::string, 3>, int> expected_triples{
        {{"白", "匹", "马"}, 1},   {{"长", "条", "河"}, 1},   {{"重要", "项", "工程"}, 1},
        {{"大", "个", "苹果"}, 1}, {{"红", "个", "苹果"}, 1}, {{"著名", "位", "科学家"}, 1},
    };

    std::map<PairKey, int> pairs;
    std::map<std::array<std::string, 3>, int> triples;
    auto sentences = golden();
    REQUIRE(sentences.size() == 20);
    for (const auto& s : sentences) {
        for (const auto& p : extract_pairs(s, ExtractionRules{})) ++pairs[{p.classifier, p.noun}];
        for (const auto& t : extract_triples(s, ExtractionRules{})) ++triples[{t.adjective, t.classifier, t.noun}];
    }
    CHECK(pairs == expected_pairs);
    CHECK(triples == expected_triples);
}

TEST_CASE("noun with two adjectives and one classifier gives two triples") {
    auto sentences = golden();
    const auto& s07 = sentences[6];
    auto t = extract_triples(s07, ExtractionRules{});
    REQUIRE(t.size() == 2);
    CHECK(t[0].adjective == "大");
    CHECK(t[1].adjective == "红");
}

TEST_CASE("property: every triple projects onto a pair of the same sentence") {
    for (const auto& s : golden()) {
        auto pairs = extract_pairs(s, ExtractionRules{});
        for (const auto& t : extract_triples(s, ExtractionRules{})) {
            bool found = std::any_of(pairs.begin(), pairs.end(), [&](const PairObservation& p) {
                return p.classifier == t.classifier && p.noun == t.noun;
            });
            CHECK(found);
        }
    }
}

TEST_CASE("property: permuting sentences leaves the observation multiset unchanged") {
    auto sentences = golden();
    auto tally = [](const std::vector<Sentence>& ss) {
        PairCount pc;
        TripleCount tc;
        for (const auto& s : ss) {
            for (const auto& p : extract_pairs(s, ExtractionRules{})) pc.add({p.classifier, p.noun});
            for (const auto& t : extract_triples(s, ExtractionRules{})) tc.add({t.adjective, t.classifier, t.noun});
        }
        return std::pair{pc, tc};
    };
    const auto base = tally(sentences);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        std::shuffle(sentences.begin(), sentences.end(), rng);
        CHECK(tally(sentences) == base);
    }
}
