#include "clfinfo/lexicon.hpp"

#include <algorithm>

namespace clfinfo {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

// Lowercases and collapses whitespace runs to single spaces, trimmed.
std::string squeeze(std::string_view s) {
    std::string out;
    bool pending_space = false;
    for (char c : s) {
        if (is_space(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) out.push_back(' ');
        pending_space = false;
        out.push_back(ascii_lower(c));
    }
    return out;
}

}  // namespace

std::optional<DictionaryEntry> parse_cedict_line(std::string_view line) {
    line = trim(line);
    if (line.empty() || line.front() == '#') return std::nullopt;
    auto sp1 = line.find(' ');
    if (sp1 == std::string_view::npos) return std::nullopt;
    auto sp2 = line.find(' ', sp1 + 1);
    if (sp2 == std::string_view::npos) return std::nullopt;
    auto lb = line.find('[', sp2);
    auto rb = line.find(']', lb == std::string_view::npos ? sp2 : lb);
    if (lb == std::string_view::npos || rb == std::string_view::npos) return std::nullopt;
    if (!trim(line.substr(sp2, lb - sp2)).empty()) return std::nullopt;
    auto first_slash = line.find('/', rb);
    auto last_slash = line.rfind('/');
    if (first_slash == std::string_view::npos || last_slash == first_slash) return std::nullopt;

    DictionaryEntry e;
    e.traditional = std::string(line.substr(0, sp1));
    e.simplified = std::string(line.substr(sp1 + 1, sp2 - sp1 - 1));
    e.pinyin = std::string(line.substr(lb + 1, rb - lb - 1));
    if (e.traditional.empty() || e.simplified.empty()) return std::nullopt;

    auto body = line.substr(first_slash + 1, last_slash - first_slash - 1);
    std::size_t start = 0;
    while (start <= body.size()) {
        auto slash = body.find('/', start);
        auto piece = body.substr(start, slash == std::string_view::npos ? std::string_view::npos : slash - start);
        if (!trim(piece).empty()) e.glosses.emplace_back(trim(piece));
        if (slash == std::string_view::npos) break;
        start = slash + 1;
    }
    if (e.glosses.empty()) return std::nullopt;
    return e;
}

std::string normalize_gloss(std::string_view gloss) {
    // Classifier annotations ("CL:個|个[ge4]") are not translations.
    if (trim(gloss).starts_with("CL:")) return {};
    std::string stripped;
    int depth = 0;
    for (char c : gloss) {
        if (c == '(') {
            ++depth;
            stripped.push_back(' ');
        } else if (c == ')') {
            if (depth > 0) --depth;
            stripped.push_back(' ');
        } else if (depth == 0) {
            stripped.push_back(c);
        }
    }
    std::string out = squeeze(stripped);
    static constexpr std::string_view kPrefixes[] = {"to ", "a ", "the "};
    for (bool changed = true; changed;) {
        changed = false;
        for (auto p : kPrefixes) {
            if (out.size() > p.size() && out.compare(0, p.size(), p) == 0) {
                out.erase(0, p.size());
                changed = true;
            }
        }
    }
    return out;
}

void Dictionary::add(const DictionaryEntry& entry) {
    std::set<std::string> normalized;
    for (const auto& g : entry.glosses) {
        auto n = normalize_gloss(g);
        if (!n.empty()) normalized.insert(std::move(n));
    }
    if (normalized.empty()) return;
    ++entries_read;
    map_[entry.traditional].insert(normalized.begin(), normalized.end());
    map_[entry.simplified].insert(normalized.begin(), normalized.end());
}

const std::set<std::string>* Dictionary::glosses(const std::string& lemma) const {
    auto it = map_.find(lemma);
    return it == map_.end() ? nullptr : &it->second;
}

Dictionary load_dictionary(std::istream& in) {
    Dictionary dict;
    std::string line;
    while (std::getline(in, line)) {
        auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        auto entry = parse_cedict_line(t);
        if (!entry) {
            ++dict.malformed_lines;
            continue;
        }
        dict.add(*entry);
    }
    return dict;
}

std::string to_string(InventoryKind k) {
    switch (k) {
        case InventoryKind::noun_supersense: return "noun_supersense";
        case InventoryKind::adjective_supersense: return "adjective_supersense";
        case InventoryKind::synset: return "synset";
    }
    return "?";
}

std::string normalize_inventory_lemma(std::string_view lemma) {
    std::string s(lemma);
    std::replace(s.begin(), s.end(), '_', ' ');
    return squeeze(s);
}

void Inventory::add(std::string_view lemma, const std::string& label) {
    auto key = normalize_inventory_lemma(lemma);
    if (key.empty() || label.empty()) return;
    labels_.insert(label);
    map_[key].insert(label);
}

const std::set<std::string>* Inventory::lookup(const std::string& english_lemma) const {
    auto it = map_.find(english_lemma);
    return it == map_.end() ? nullptr : &it->second;
}

Inventory load_inventory(std::istream& in, InventoryKind kind) {
    Inventory inv(kind);
    std::string line;
    while (std::getline(in, line)) {
        auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        auto tab = t.find('\t');
        if (tab == std::string_view::npos) {
            ++inv.malformed_lines;
            continue;
        }
        auto lemma = trim(t.substr(0, tab));
        auto label = trim(t.substr(tab + 1));
        if (lemma.empty() || label.empty() || label.find('\t') != std::string_view::npos) {
            ++inv.malformed_lines;
            continue;
        }
        inv.add(lemma, std::string(label));
    }
    return inv;
}

std::set<std::string> map_lemma(const std::string& lemma, const Dictionary& dict, const Inventory& inventory) {
    std::set<std::string> out;
    const auto* glosses = dict.glosses(lemma);
    if (!glosses) return out;
    for (const auto& g : *glosses) {
        const auto* labels = inventory.lookup(g);
        if (!labels) {
            auto sp = g.rfind(' ');
            if (sp != std::string::npos) labels = inventory.lookup(g.substr(sp + 1));
        }
        if (labels) out.insert(labels->begin(), labels->end());
    }
    return out;
}

}  // namespace clfinfo
