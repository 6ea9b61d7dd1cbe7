#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>

#include "clfinfo/distribution.hpp"
#include "clfinfo/extraction.hpp"

namespace clfinfo {

/// Multiset of string tuples. Keys iterate in lexicographic (byte) order.
template <std::size_t Arity>
class CountTable {
public:
    using Key = std::array<std::string, Arity>;

    void add(const Key& key, std::uint64_t n = 1) {
        if (n == 0) return;
        entries_[key] += n;
        total_ += n;
    }

    std::uint64_t count(const Key& key) const {
        auto it = entries_.find(key);
        return it == entries_.end() ? 0 : it->second;
    }

    CountTable& merge_from(const CountTable& other) {
        for (const auto& [k, n] : other.entries_) add(k, n);
        return *this;
    }

    const std::map<Key, std::uint64_t>& entries() const { return entries_; }
    std::uint64_t total() const { return total_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    bool operator==(const CountTable&) const = default;

private:
    std::map<Key, std::uint64_t> entries_;
    std::uint64_t total_ = 0;
};

/// (classifier, noun)
using PairCount = CountTable<2>;
/// (adjective, classifier, noun)
using TripleCount = CountTable<3>;

PairCount accumulate(std::span<const PairObservation> observations);
TripleCount accumulate(std::span<const TripleObservation> observations);

template <std::size_t Arity>
CountTable<Arity> merge(const CountTable<Arity>& a, const CountTable<Arity>& b) {
    CountTable<Arity> out = a;
    out.merge_from(b);
    return out;
}

/// mass(c, n) = count(c, n) / total. Throws DataError("no observations") on an empty table.
JointDistribution normalize(const PairCount& counts);

/// p(row | col) for one column label. Throws DataError for an unknown or massless column.
Distribution condition(const JointDistribution& joint, const std::string& col);

enum class TripleProjection {
    classifier_adjective,  // sum out nouns
    classifier_noun,       // sum out adjectives
};

/// Sums the dropped axis out of a triple table. The result is keyed (classifier, other).
PairCount marginalize_triples(const TripleCount& triples,
                              TripleProjection keep = TripleProjection::classifier_adjective);

// Counts TSV: header `#clfinfo-counts v1 pairs|triples`, optional `# key=value`
// metadata lines, then one `col<TAB>...<TAB>count` row per key in sorted order.

using CountsMetadata = std::map<std::string, std::string>;

template <std::size_t Arity>
struct CountsFile {
    CountTable<Arity> table;
    CountsMetadata metadata;
};

void write_counts_tsv(std::ostream& out, const PairCount& counts, const CountsMetadata& metadata = {});
void write_counts_tsv(std::ostream& out, const TripleCount& counts, const CountsMetadata& metadata = {});

CountsFile<2> read_pairs_tsv(std::istream& in, const std::string& source_name);
CountsFile<3> read_triples_tsv(std::istream& in, const std::string& source_name);

}  // namespace clfinfo
