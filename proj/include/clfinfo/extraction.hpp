#pragma once

#include <set>
#include <string>
#include <vector>

#include "clfinfo/conllu.hpp"

namespace clfinfo {

enum class MatchPolicy { deprel_or_xpos, deprel_only, xpos_only };

std::string to_string(MatchPolicy p);
MatchPolicy parse_match_policy(const std::string& s);

/// Dependency patterns that identify classifier, noun and adjective tokens.
/// Deprel and tag comparisons are exact string matches.
struct ExtractionRules {
    std::set<std::string> classifier_deprels{"clf"};
    std::set<std::string> classifier_xpos{"M"};
    MatchPolicy match_policy = MatchPolicy::deprel_or_xpos;
    std::set<std::string> noun_upos{"NOUN", "PROPN"};
    std::set<std::string> adjective_deprels{"amod"};
    std::set<std::string> adjective_upos{"ADJ"};

    /// Throws ConfigError if a set required by the active policy is empty.
    void validate() const;

    bool is_classifier(const Token& t) const;
};

struct PairObservation {
    std::string classifier;
    std::string noun;
    std::string sentence_id;

    bool operator==(const PairObservation&) const = default;
};

struct TripleObservation {
    std::string adjective;
    std::string classifier;
    std::string noun;
    std::string sentence_id;

    bool operator==(const TripleObservation&) const = default;
};

/// One pair per classifier token whose head is a noun, in token order.
std::vector<PairObservation> extract_pairs(const Sentence& sentence, const ExtractionRules& rules);

/// One triple per (pair, adjective attached to the pair's noun).
std::vector<TripleObservation> extract_triples(const Sentence& sentence, const ExtractionRules& rules);

}  // namespace clfinfo
