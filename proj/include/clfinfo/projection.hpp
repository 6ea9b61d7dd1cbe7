#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "clfinfo/counts.hpp"
#include "clfinfo/distribution.hpp"
#include "clfinfo/lexicon.hpp"

namespace clfinfo {

enum class AnalysisKind { noun, adjective, noun_supersense, adjective_supersense, synset };

std::string to_string(AnalysisKind k);
AnalysisKind parse_analysis_kind(const std::string& s);

/// The observation multiset behind an analysis. Each unit is one distinct
/// extracted tuple with its count; a unit spreads its weight over one or more
/// joint cells (more than one only for synset expansion). Resampling units
/// and rebuilding the joint is how the bootstrap recomputes a replicate.
class ObservationSet {
public:
    struct Unit {
        std::uint64_t count = 0;
        std::vector<std::pair<std::size_t, double>> spread;  // (cell index, fraction); fractions sum to 1
    };

    ObservationSet() = default;
    ObservationSet(std::vector<std::string> rows, std::vector<std::string> cols,
                   std::vector<std::pair<std::size_t, std::size_t>> cells, std::vector<Unit> units);

    const std::vector<std::string>& row_labels() const { return rows_; }
    const std::vector<std::string>& col_labels() const { return cols_; }
    const std::vector<Unit>& units() const { return units_; }
    std::size_t cell_count() const { return cells_.size(); }

    std::uint64_t total() const;
    std::vector<std::uint64_t> counts() const;

    /// Unnormalized cell weights for the given per-unit counts.
    std::vector<JointCell> cell_weights(std::span<const std::uint64_t> unit_counts) const;

    JointDistribution joint(std::span<const std::uint64_t> unit_counts) const;
    JointDistribution joint() const { return joint(counts()); }

    /// Plug-in I(C;X) for the given per-unit counts, without materializing labels.
    double mutual_information(std::span<const std::uint64_t> unit_counts) const;

private:
    std::vector<std::string> rows_;
    std::vector<std::string> cols_;
    std::vector<std::pair<std::size_t, std::size_t>> cells_;
    std::vector<Unit> units_;
};

struct AnalysisJoint {
    AnalysisKind kind = AnalysisKind::noun;
    std::string category;  // empty unless restricted to a supersense
    JointDistribution joint;
    ObservationSet observations;
    std::size_t support_rows = 0;
    std::size_t support_cols = 0;
    std::uint64_t observation_total = 0;     // kept tuple observations
    std::uint64_t dropped_observations = 0;  // tuples whose noun/adjective had no mapping
    double kept_mass = 1.0;                  // kept share of the input weight
    double dropped_mass = 0.0;
};

/// C x N. Throws DataError on an empty table.
AnalysisJoint build_cn(const PairCount& pairs);

/// C x A with nouns summed out. Throws DataError on an empty table.
AnalysisJoint build_ca(const TripleCount& triples);

/// C x N_i over the pairs whose noun belongs to `category`, renormalized.
/// Returns nullopt when the category has no observations.
std::optional<AnalysisJoint> build_cn_restricted(const PairCount& pairs, const std::string& category,
                                                 const Membership& noun_membership);

/// C x A_i over the triples whose adjective belongs to `category`, nouns summed out.
std::optional<AnalysisJoint> build_ca_restricted(const TripleCount& triples, const std::string& category,
                                                 const Membership& adjective_membership);

/// C x S: a pair (c, n) with count k and m synsets gives k/m to each (c, s).
/// Synset-less nouns are dropped. Throws DataError if every noun is synset-less.
AnalysisJoint build_cs(const PairCount& pairs, const Membership& synset_membership);

/// Joint in counts-TSV layout with fractional weights: header `#clfinfo-counts v1 joint`,
/// then `row<TAB>col<TAB>mass` sorted by labels, masses printed with 17 significant digits.
void write_joint_tsv(std::ostream& out, const JointDistribution& joint);
/// Reads write_joint_tsv output; weights are renormalized. Throws FormatError naming the line.
JointDistribution read_joint_tsv(std::istream& in, const std::string& source_name);

}  // namespace clfinfo
