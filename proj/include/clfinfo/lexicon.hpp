#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace clfinfo {

struct DictionaryEntry {
    std::string traditional;
    std::string simplified;
    std::string pinyin;
    std::vector<std::string> glosses;  // raw, as listed between slashes
};

/// Parses `TRAD SIMP [pin1 yin1] /gloss/gloss/`. Returns nullopt when the
/// brackets or slashes are missing or no gloss is listed.
std::optional<DictionaryEntry> parse_cedict_line(std::string_view line);

/// Lowercases, removes parenthetical spans, collapses whitespace, and strips
/// leading "to ", "a " and "the ". Classifier annotations (`CL:...`) and
/// glosses that normalize to nothing return an empty string.
std::string normalize_gloss(std::string_view gloss);

/// Mandarin lemma (traditional and simplified forms) to normalized English glosses.
class Dictionary {
public:
    void add(const DictionaryEntry& entry);

    /// Normalized glosses for a lemma, or nullptr if untranslatable.
    const std::set<std::string>* glosses(const std::string& lemma) const;

    std::size_t size() const { return map_.size(); }
    std::size_t entries_read = 0;
    std::size_t malformed_lines = 0;

    const std::map<std::string, std::set<std::string>>& map() const { return map_; }

private:
    std::map<std::string, std::set<std::string>> map_;
};

Dictionary load_dictionary(std::istream& in);

enum class InventoryKind { noun_supersense, adjective_supersense, synset };

std::string to_string(InventoryKind k);

/// English lemma to category (supersense) or synset identifiers, loaded from
/// `lemma<TAB>label` lines. Lemmas are lowercased with `_` read as a space.
class Inventory {
public:
    explicit Inventory(InventoryKind kind = InventoryKind::noun_supersense) : kind_(kind) {}

    void add(std::string_view lemma, const std::string& label);

    const std::set<std::string>* lookup(const std::string& english_lemma) const;

    InventoryKind kind() const { return kind_; }
    /// Every label that appears in the inventory; for supersenses, the category list.
    const std::set<std::string>& labels() const { return labels_; }
    std::size_t size() const { return map_.size(); }
    std::size_t malformed_lines = 0;

private:
    InventoryKind kind_;
    std::set<std::string> labels_;
    std::map<std::string, std::set<std::string>> map_;
};

std::string normalize_inventory_lemma(std::string_view lemma);

Inventory load_inventory(std::istream& in, InventoryKind kind);

/// Union of inventory labels over the lemma's glosses. Each gloss is looked
/// up whole, then by its final whitespace-separated token if the whole gloss
/// is unlisted. Empty when the lemma is untranslatable or unlisted.
std::set<std::string> map_lemma(const std::string& lemma, const Dictionary& dict, const Inventory& inventory);

inline std::set<std::string> map_to_supersenses(const std::string& lemma, const Dictionary& dict,
                                                const Inventory& inventory) {
    return map_lemma(lemma, dict, inventory);
}

inline std::set<std::string> map_to_synsets(const std::string& lemma, const Dictionary& dict,
                                            const Inventory& synsets) {
    return map_lemma(lemma, dict, synsets);
}

/// Mandarin lemma to its mapped label set; lemmas that map to nothing are absent.
using Membership = std::map<std::string, std::set<std::string>>;

template <typename Range>
Membership build_membership(const Range& lemmas, const Dictionary& dict, const Inventory& inventory) {
    Membership out;
    for (const auto& lemma : lemmas) {
        if (out.contains(lemma)) continue;
        auto labels = map_lemma(lemma, dict, inventory);
        if (!labels.empty()) out.emplace(lemma, std::move(labels));
    }
    return out;
}

}  // namespace clfinfo
