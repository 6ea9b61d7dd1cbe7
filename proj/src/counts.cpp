#include "clfinfo/counts.hpp"

#include <charconv>
#include <string_view>

#include "clfinfo/error.hpp"

namespace clfinfo {

namespace {

constexpr std::string_view kHeaderPrefix = "#clfinfo-counts v1 ";

template <std::size_t Arity>
void write_table(std::ostream& out, const CountTable<Arity>& counts, std::string_view kind,
                 const CountsMetadata& metadata) {
    out << kHeaderPrefix << kind << '\n';
    for (const auto& [k, v] : metadata) {
        if (k.find_first_of("=\n\t") != std::string::npos || v.find('\n') != std::string::npos) {
            throw std::invalid_argument("metadata entry '" + k + "' cannot be written");
        }
        out << "# " << k << '=' << v << '\n';
    }
    for (const auto& [key, n] : counts.entries()) {
        for (const auto& field : key) {
            if (field.find_first_of("\t\n\r") != std::string::npos) {
                throw DataError("label contains a tab or newline: '" + field + "'");
            }
            out << field << '\t';
        }
        out << n << '\n';
    }
}

template <std::size_t Arity>
CountsFile<Arity> read_table(std::istream& in, const std::string& source, std::string_view kind) {
    auto fail = [&](std::size_t line, const std::string& what) -> FormatError {
        return FormatError(source + ":" + std::to_string(line) + ": " + what);
    };
    CountsFile<Arity> file;
    std::string line;
    std::size_t no = 0;
    if (!std::getline(in, line)) throw fail(1, "missing header");
    ++no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string expected = std::string(kHeaderPrefix) + std::string(kind);
    if (line != expected) throw fail(no, "expected header '" + expected + "', found '" + line + "'");

    while (std::getline(in, line)) {
        ++no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            std::string_view body(line);
            body.remove_prefix(1);
            if (!body.empty() && body.front() == ' ') body.remove_prefix(1);
            auto eq = body.find('=');
            if (eq != std::string_view::npos) {
                file.metadata[std::string(body.substr(0, eq))] = std::string(body.substr(eq + 1));
            }
            continue;
        }
        typename CountTable<Arity>::Key key;
        std::size_t start = 0;
        for (std::size_t i = 0; i < Arity; ++i) {
            auto tab = line.find('\t', start);
            if (tab == std::string::npos) throw fail(no, "expected " + std::to_string(Arity + 1) + " columns");
            key[i] = line.substr(start, tab - start);
            if (key[i].empty()) throw fail(no, "empty label in column " + std::to_string(i + 1));
            start = tab + 1;
        }
        std::string_view count_text(line);
        count_text.remove_prefix(start);
        if (count_text.find('\t') != std::string_view::npos) {
            throw fail(no, "expected " + std::to_string(Arity + 1) + " columns");
        }
        std::uint64_t n = 0;
        auto [ptr, ec] = std::from_chars(count_text.data(), count_text.data() + count_text.size(), n);
        if (ec != std::errc{} || ptr != count_text.data() + count_text.size() || count_text.empty() || n == 0) {
            throw fail(no, "count must be a positive integer, found '" + std::string(count_text) + "'");
        }
        if (file.table.count(key) != 0) throw fail(no, "duplicate key");
        file.table.add(key, n);
    }
    return file;
}

}  // namespace

PairCount accumulate(std::span<const PairObservation> observations) {
    PairCount out;
    for (const auto& o : observations) out.add({o.classifier, o.noun});
    return out;
}

TripleCount accumulate(std::span<const TripleObservation> observations) {
    TripleCount out;
    for (const auto& o : observations) out.add({o.adjective, o.classifier, o.noun});
    return out;
}

JointDistribution normalize(const PairCount& counts) {
    if (counts.total() == 0) throw DataError("no observations");
    std::map<std::pair<std::string, std::string>, double> weights;
    for (const auto& [key, n] : counts.entries()) weights[{key[0], key[1]}] = static_cast<double>(n);
    return JointDistribution::from_labeled(weights);
}

Distribution condition(const JointDistribution& joint, const std::string& col) {
    const auto& cols = joint.col_labels();
    std::size_t ci = cols.size();
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (cols[i] == col) {
            ci = i;
            break;
        }
    }
    if (ci == cols.size()) throw DataError("unknown column label '" + col + "'");
    std::vector<std::string> labels;
    std::vector<double> weights;
    for (const auto& c : joint.cells()) {
        if (c.col != ci) continue;
        labels.push_back(joint.row_labels()[c.row]);
        weights.push_back(c.mass);
    }
    if (labels.empty()) throw DataError("column '" + col + "' has zero marginal mass");
    return Distribution::from_weights(std::move(labels), weights);
}

PairCount marginalize_triples(const TripleCount& triples, TripleProjection keep) {
    PairCount out;
    for (const auto& [key, n] : triples.entries()) {
        const auto& [adjective, classifier, noun] = key;
        if (keep == TripleProjection::classifier_adjective) {
            out.add({classifier, adjective}, n);
        } else {
            out.add({classifier, noun}, n);
        }
    }
    return out;
}

void write_counts_tsv(std::ostream& out, const PairCount& counts, const CountsMetadata& metadata) {
    write_table(out, counts, "pairs", metadata);
}

void write_counts_tsv(std::ostream& out, const TripleCount& counts, const CountsMetadata& metadata) {
    write_table(out, counts, "triples", metadata);
}

CountsFile<2> read_pairs_tsv(std::istream& in, const std::string& source_name) {
    return read_table<2>(in, source_name, "pairs");
}

CountsFile<3> read_triples_tsv(std::istream& in, const std::string& source_name) {
    return read_table<3>(in, source_name, "triples");
}

}  // namespace clfinfo
