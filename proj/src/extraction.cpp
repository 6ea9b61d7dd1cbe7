#include "clfinfo/extraction.hpp"

#include <string_view>

#include "clfinfo/error.hpp"

namespace clfinfo {

namespace {

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

struct MatchedPair {
    const Token* classifier;
    const Token* noun;
    std::string classifier_form;
    std::string noun_form;
};

std::vector<MatchedPair> match_pairs(const Sentence& sentence, const ExtractionRules& rules) {
    std::vector<MatchedPair> out;
    for (const auto& t : sentence.tokens) {
        if (!rules.is_classifier(t)) continue;
        const Token* head = sentence.at(t.head);
        if (!head || !rules.noun_upos.contains(head->upos)) continue;
        auto c = trim(t.form);
        auto n = trim(head->form);
        if (c.empty() || n.empty()) continue;
        out.push_back({&t, head, std::move(c), std::move(n)});
    }
    return out;
}

}  // namespace

std::string to_string(MatchPolicy p) {
    switch (p) {
        case MatchPolicy::deprel_or_xpos: return "deprel_or_xpos";
        case MatchPolicy::deprel_only: return "deprel_only";
        case MatchPolicy::xpos_only: return "xpos_only";
    }
    return "?";
}

MatchPolicy parse_match_policy(const std::string& s) {
    if (s == "deprel_or_xpos") return MatchPolicy::deprel_or_xpos;
    if (s == "deprel_only") return MatchPolicy::deprel_only;
    if (s == "xpos_only") return MatchPolicy::xpos_only;
    throw ConfigError("unknown match policy '" + s + "' (expected deprel_or_xpos, deprel_only or xpos_only)");
}

void ExtractionRules::validate() const {
    const bool need_deprel = match_policy != MatchPolicy::xpos_only;
    const bool need_xpos = match_policy != MatchPolicy::deprel_only;
    if (need_deprel && classifier_deprels.empty()) throw ConfigError("classifier_deprels is empty");
    if (need_xpos && classifier_xpos.empty()) throw ConfigError("classifier_xpos is empty");
    if (noun_upos.empty()) throw ConfigError("noun_upos is empty");
    if (adjective_deprels.empty()) throw ConfigError("adjective_deprels is empty");
    if (adjective_upos.empty()) throw ConfigError("adjective_upos is empty");
}

bool ExtractionRules::is_classifier(const Token& t) const {
    const bool by_deprel = classifier_deprels.contains(t.deprel);
    const bool by_xpos = classifier_xpos.contains(t.xpos);
    switch (match_policy) {
        case MatchPolicy::deprel_or_xpos: return by_deprel || by_xpos;
        case MatchPolicy::deprel_only: return by_deprel;
        case MatchPolicy::xpos_only: return by_xpos;
    }
    return false;
}

std::vector<PairObservation> extract_pairs(const Sentence& sentence, const ExtractionRules& rules) {
    std::vector<PairObservation> out;
    for (auto& m : match_pairs(sentence, rules)) {
        out.push_back({std::move(m.classifier_form), std::move(m.noun_form), sentence.source_id});
    }
    return out;
}

std::vector<TripleObservation> extract_triples(const Sentence& sentence, const ExtractionRules& rules) {
    std::vector<TripleObservation> out;
    for (const auto& m : match_pairs(sentence, rules)) {
        for (const auto& a : sentence.tokens) {
            if (a.head != m.noun->index || &a == m.classifier) continue;
            if (!rules.adjective_deprels.contains(a.deprel) || !rules.adjective_upos.contains(a.upos)) continue;
            auto adj = trim(a.form);
            if (adj.empty()) continue;
            out.push_back({std::move(adj), m.classifier_form, m.noun_form, sentence.source_id});
        }
    }
    return out;
}

}  // namespace clfinfo
