#include "clfinfo/projection.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <cstdlib>

#include "clfinfo/error.hpp"
#include "clfinfo/infotheory.hpp"

namespace clfinfo {

namespace {

using CellKey = std::pair<std::string, std::string>;

// Collects units keyed by label pairs, then interns labels in sorted order.
class SetBuilder {
public:
    void add(std::uint64_t count, std::vector<std::pair<CellKey, double>> spread) {
        for (const auto& [key, frac] : spread) {
            rows_.emplace(key.first, 0);
            cols_.emplace(key.second, 0);
        }
        pending_.push_back({count, std::move(spread)});
    }

    bool empty() const { return pending_.empty(); }

    ObservationSet finish() {
        std::vector<std::string> rows, cols;
        for (auto& [label, i] : rows_) {
            i = rows.size();
            rows.push_back(label);
        }
        for (auto& [label, i] : cols_) {
            i = cols.size();
            cols.push_back(label);
        }
        std::map<std::pair<std::size_t, std::size_t>, std::size_t> cell_index;
        for (const auto& p : pending_) {
            for (const auto& [key, frac] : p.spread) cell_index.emplace(std::pair{rows_.at(key.first), cols_.at(key.second)}, 0);
        }
        std::vector<std::pair<std::size_t, std::size_t>> cells;
        for (auto& [rc, i] : cell_index) {
            i = cells.size();
            cells.push_back(rc);
        }
        std::vector<ObservationSet::Unit> units;
        units.reserve(pending_.size());
        for (const auto& p : pending_) {
            ObservationSet::Unit u;
            u.count = p.count;
            for (const auto& [key, frac] : p.spread) {
                u.spread.emplace_back(cell_index.at({rows_.at(key.first), cols_.at(key.second)}), frac);
            }
            units.push_back(std::move(u));
        }
        return ObservationSet(std::move(rows), std::move(cols), std::move(cells), std::move(units));
    }

private:
    struct Pending {
        std::uint64_t count;
        std::vector<std::pair<CellKey, double>> spread;
    };
    std::map<std::string, std::size_t> rows_;
    std::map<std::string, std::size_t> cols_;
    std::vector<Pending> pending_;
};

AnalysisJoint finish(AnalysisKind kind, std::string category, SetBuilder& builder, std::uint64_t input_total) {
    AnalysisJoint a;
    a.kind = kind;
    a.category = std::move(category);
    a.observations = builder.finish();
    a.joint = a.observations.joint();
    a.support_rows = a.joint.support_rows();
    a.support_cols = a.joint.support_cols();
    a.observation_total = a.observations.total();
    a.dropped_observations = input_total - a.observation_total;
    a.kept_mass = static_cast<double>(a.observation_total) / static_cast<double>(input_total);
    a.dropped_mass = static_cast<double>(a.dropped_observations) / static_cast<double>(input_total);
    return a;
}

}  // namespace

std::string to_string(AnalysisKind k) {
    switch (k) {
        case AnalysisKind::noun: return "noun";
        case AnalysisKind::adjective: return "adjective";
        case AnalysisKind::noun_supersense: return "noun_supersense";
        case AnalysisKind::adjective_supersense: return "adjective_supersense";
        case AnalysisKind::synset: return "synset";
    }
    return "?";
}

AnalysisKind parse_analysis_kind(const std::string& s) {
    for (auto k : {AnalysisKind::noun, AnalysisKind::adjective, AnalysisKind::noun_supersense,
                   AnalysisKind::adjective_supersense, AnalysisKind::synset}) {
        if (to_string(k) == s) return k;
    }
    throw ConfigError("unknown analysis '" + s +
                      "' (expected noun, adjective, noun_supersense, adjective_supersense or synset)");
}

ObservationSet::ObservationSet(std::vector<std::string> rows, std::vector<std::string> cols,
                               std::vector<std::pair<std::size_t, std::size_t>> cells, std::vector<Unit> units)
    : rows_(std::move(rows)), cols_(std::move(cols)), cells_(std::move(cells)), units_(std::move(units)) {}

std::uint64_t ObservationSet::total() const {
    std::uint64_t t = 0;
    for (const auto& u : units_) t += u.count;
    return t;
}

std::vector<std::uint64_t> ObservationSet::counts() const {
    std::vector<std::uint64_t> out;
    out.reserve(units_.size());
    for (const auto& u : units_) out.push_back(u.count);
    return out;
}

std::vector<JointCell> ObservationSet::cell_weights(std::span<const std::uint64_t> unit_counts) const {
    if (unit_counts.size() != units_.size()) throw std::invalid_argument("unit count size mismatch");
    std::vector<CompensatedSum> acc(cells_.size());
    for (std::size_t u = 0; u < units_.size(); ++u) {
        if (unit_counts[u] == 0) continue;
        const double k = static_cast<double>(unit_counts[u]);
        for (const auto& [cell, frac] : units_[u].spread) acc[cell].add(k * frac);
    }
    std::vector<JointCell> out;
    out.reserve(cells_.size());
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        const double w = acc[i].value();
        if (w > 0.0) out.push_back({cells_[i].first, cells_[i].second, w});
    }
    return out;
}

JointDistribution ObservationSet::joint(std::span<const std::uint64_t> unit_counts) const {
    return JointDistribution::from_weights(rows_, cols_, cell_weights(unit_counts));
}

double ObservationSet::mutual_information(std::span<const std::uint64_t> unit_counts) const {
    auto cells = cell_weights(unit_counts);
    normalize_cells(cells);
    return clfinfo::mutual_information(rows_.size(), cols_.size(), cells);
}

AnalysisJoint build_cn(const PairCount& pairs) {
    if (pairs.empty()) throw DataError("no observations");
    SetBuilder b;
    for (const auto& [key, n] : pairs.entries()) b.add(n, {{{key[0], key[1]}, 1.0}});
    return finish(AnalysisKind::noun, "", b, pairs.total());
}

AnalysisJoint build_ca(const TripleCount& triples) {
    if (triples.empty()) throw DataError("no observations");
    SetBuilder b;
    for (const auto& [key, n] : triples.entries()) b.add(n, {{{key[1], key[0]}, 1.0}});
    return finish(AnalysisKind::adjective, "", b, triples.total());
}

std::optional<AnalysisJoint> build_cn_restricted(const PairCount& pairs, const std::string& category,
                                                 const Membership& noun_membership) {
    SetBuilder b;
    for (const auto& [key, n] : pairs.entries()) {
        auto it = noun_membership.find(key[1]);
        if (it == noun_membership.end() || !it->second.contains(category)) continue;
        b.add(n, {{{key[0], key[1]}, 1.0}});
    }
    if (b.empty()) return std::nullopt;
    return finish(AnalysisKind::noun_supersense, category, b, pairs.total());
}

std::optional<AnalysisJoint> build_ca_restricted(const TripleCount& triples, const std::string& category,
                                                 const Membership& adjective_membership) {
    SetBuilder b;
    for (const auto& [key, n] : triples.entries()) {
        auto it = adjective_membership.find(key[0]);
        if (it == adjective_membership.end() || !it->second.contains(category)) continue;
        b.add(n, {{{key[1], key[0]}, 1.0}});
    }
    if (b.empty()) return std::nullopt;
    return finish(AnalysisKind::adjective_supersense, category, b, triples.total());
}

AnalysisJoint build_cs(const PairCount& pairs, const Membership& synset_membership) {
    SetBuilder b;
    for (const auto& [key, n] : pairs.entries()) {
        auto it = synset_membership.find(key[1]);
        if (it == synset_membership.end() || it->second.empty()) continue;
        const double frac = 1.0 / static_cast<double>(it->second.size());
        std::vector<std::pair<CellKey, double>> spread;
        for (const auto& s : it->second) spread.push_back({{key[0], s}, frac});
        b.add(n, std::move(spread));
    }
    if (b.empty()) throw DataError("synset analysis impossible: no noun has a synset");
    return finish(AnalysisKind::synset, "", b, pairs.total());
}

void write_joint_tsv(std::ostream& out, const JointDistribution& joint) {
    std::map<CellKey, double> sorted;
    for (const auto& c : joint.cells()) sorted[{joint.row_labels()[c.row], joint.col_labels()[c.col]}] = c.mass;
    out << "#clfinfo-counts v1 joint\n";
    char buf[32];
    for (const auto& [key, mass] : sorted) {
        std::snprintf(buf, sizeof buf, "%.17g", mass);
        out << key.first << '\t' << key.second << '\t' << buf << '\n';
    }
}

JointDistribution read_joint_tsv(std::istream& in, const std::string& source_name) {
    auto fail = [&](std::size_t line, const std::string& msg) {
        return FormatError(source_name + ":" + std::to_string(line) + ": " + msg);
    };
    std::string line;
    std::size_t no = 1;
    if (!std::getline(in, line) || line != "#clfinfo-counts v1 joint") throw fail(1, "expected joint header");
    std::map<CellKey, double> weights;
    while (std::getline(in, line)) {
        ++no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        const auto t1 = line.find('\t');
        const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
        if (t2 == std::string::npos || line.find('\t', t2 + 1) != std::string::npos) {
            throw fail(no, "expected 3 tab-separated columns");
        }
        CellKey key{line.substr(0, t1), line.substr(t1 + 1, t2 - t1 - 1)};
        if (key.first.empty() || key.second.empty()) throw fail(no, "empty label");
        const std::string num = line.substr(t2 + 1);
        char* end = nullptr;
        const double w = std::strtod(num.c_str(), &end);
        if (num.empty() || *end != '\0' || !std::isfinite(w) || w < 0.0) throw fail(no, "invalid weight '" + num + "'");
        if (!weights.emplace(key, w).second) throw fail(no, "duplicate cell");
    }
    return JointDistribution::from_labeled(weights);
}

}  // namespace clfinfo
