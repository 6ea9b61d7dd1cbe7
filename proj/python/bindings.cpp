#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <map>
#include <sstream>

#include "clfinfo/bootstrap.hpp"
#include "clfinfo/config.hpp"
#include "clfinfo/conllu.hpp"
#include "clfinfo/counts.hpp"
#include "clfinfo/error.hpp"
#include "clfinfo/extraction.hpp"
#include "clfinfo/infotheory.hpp"
#include "clfinfo/lexicon.hpp"
#include "clfinfo/pipeline.hpp"
#include "clfinfo/projection.hpp"
#include "clfinfo/report.hpp"

namespace py = pybind11;
using namespace clfinfo;

namespace {

using PairDict = std::map<std::pair<std::string, std::string>, std::uint64_t>;
using TripleDict = std::map<std::tuple<std::string, std::string, std::string>, std::uint64_t>;

PairCount to_pairs(const PairDict& d) {
    PairCount out;
    for (const auto& [k, n] : d) {
        if (n > 0) out.add({k.first, k.second}, n);
    }
    return out;
}

TripleCount to_triples(const TripleDict& d) {
    TripleCount out;
    for (const auto& [k, n] : d) {
        if (n > 0) out.add({std::get<0>(k), std::get<1>(k), std::get<2>(k)}, n);
    }
    return out;
}

PairDict from_pairs(const PairCount& c) {
    PairDict out;
    for (const auto& [k, n] : c.entries()) out[{k[0], k[1]}] = n;
    return out;
}

TripleDict from_triples(const TripleCount& c) {
    TripleDict out;
    for (const auto& [k, n] : c.entries()) out[{k[0], k[1], k[2]}] = n;
    return out;
}

JointDistribution joint_from(const std::map<std::pair<std::string, std::string>, double>& weights) {
    return JointDistribution::from_labeled(weights);
}

std::ifstream open(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read '" + path + "'");
    return in;
}

RunConfig make_config(const std::map<std::string, py::object>& settings) {
    RunConfig cfg;
    for (const auto& [key, value] : settings) {
        if (py::isinstance<py::list>(value) || py::isinstance<py::tuple>(value)) {
            for (const auto& item : value) set_config_value(cfg, key, py::str(item));
        } else {
            set_config_value(cfg, key, py::str(value));
        }
    }
    return cfg;
}

py::dict stats_dict(const IngestStats& s) {
    py::dict d;
    d["sentences"] = s.sentences;
    d["skipped_blocks"] = s.skipped_blocks;
    d["bad_column_lines"] = s.bad_column_lines;
    d["bad_field_lines"] = s.bad_field_lines;
    d["bad_structure_blocks"] = s.bad_structure_blocks;
    return d;
}

py::dict extraction_dict(const ExtractionResult& r) {
    py::dict d;
    d["pairs"] = from_pairs(r.pairs);
    d["triples"] = from_triples(r.triples);
    d["stats"] = stats_dict(r.stats);
    d["files"] = r.files;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Classifier mutual-information core";

    auto base = py::register_exception<std::runtime_error>(m, "ClfinfoError", PyExc_ValueError);
    py::register_exception<FormatError>(m, "FormatError", base.ptr());
    py::register_exception<DataError>(m, "DataError", base.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

    // information theory
    m.def("entropy", [](const std::vector<double>& p) { return entropy(p); }, py::arg("probabilities"),
          "Entropy in bits of a probability vector.");
    m.def("mutual_information", [](const std::map<std::pair<std::string, std::string>, double>& w) {
        return mutual_information(joint_from(w));
    }, py::arg("weights"), "Plug-in I(C;X) in bits from {(c, x): weight}; weights are normalized.");
    m.def("conditional_entropy", [](const std::map<std::pair<std::string, std::string>, double>& w) {
        return conditional_entropy(joint_from(w));
    }, py::arg("weights"), "H(C | X) in bits from {(c, x): weight}.");
    m.def("summarize", [](const std::map<std::pair<std::string, std::string>, double>& w) {
        const auto s = summarize(joint_from(w));
        py::dict d;
        d["H_C"] = s.h_rows;
        d["H_C_given_X"] = s.h_rows_given_cols;
        d["I_C_X"] = s.mi;
        return d;
    }, py::arg("weights"));

    // ingestion and extraction
    py::class_<Token>(m, "Token")
        .def_readonly("index", &Token::index)
        .def_readonly("form", &Token::form)
        .def_readonly("lemma", &Token::lemma)
        .def_readonly("upos", &Token::upos)
        .def_readonly("xpos", &Token::xpos)
        .def_readonly("head", &Token::head)
        .def_readonly("deprel", &Token::deprel);
    py::class_<Sentence>(m, "Sentence")
        .def_readonly("tokens", &Sentence::tokens)
        .def_readonly("source_id", &Sentence::source_id);

    m.def("read_conllu", [](const std::string& path, const std::string& mode) {
        auto in = open(path);
        IngestStats stats;
        auto sentences = read_sentences(in, path, parse_mode(mode), &stats);
        return py::make_tuple(sentences, stats_dict(stats));
    }, py::arg("path"), py::arg("mode") = "lenient", "Returns (sentences, stats).");

    m.def("extract", [](const std::vector<std::string>& corpus, const std::map<std::string, py::object>& settings) {
        auto cfg = make_config(settings);
        cfg.rules.validate();
        return extraction_dict(extract_corpus(expand_corpus_paths(corpus), cfg.rules, cfg.mode, cfg.threads));
    }, py::arg("corpus"), py::arg("settings") = std::map<std::string, py::object>{},
          "Pair and triple counts from CoNLL-U files, directories or globs.");

    // counts
    m.def("read_pairs", [](const std::string& path) {
        auto in = open(path);
        auto f = read_pairs_tsv(in, path);
        return py::make_tuple(from_pairs(f.table), f.metadata);
    }, py::arg("path"), "Returns ({(classifier, noun): count}, metadata).");
    m.def("read_triples", [](const std::string& path) {
        auto in = open(path);
        auto f = read_triples_tsv(in, path);
        return py::make_tuple(from_triples(f.table), f.metadata);
    }, py::arg("path"));
    m.def("format_pairs", [](const PairDict& d, const CountsMetadata& meta) {
        std::ostringstream out;
        write_counts_tsv(out, to_pairs(d), meta);
        return out.str();
    }, py::arg("pairs"), py::arg("metadata") = CountsMetadata{}, "Counts TSV text for pair counts.");
    m.def("condition", [](const PairDict& d, const std::string& noun) {
        const auto dist = condition(normalize(to_pairs(d)), noun);
        std::map<std::string, double> out;
        for (std::size_t i = 0; i < dist.size(); ++i) out[dist.labels[i]] = dist.mass[i];
        return out;
    }, py::arg("pairs"), py::arg("noun"), "p(C | N = noun) from pair counts.");
    m.def("marginalize_triples", [](const TripleDict& d) { return from_pairs(marginalize_triples(to_triples(d))); },
          py::arg("triples"), "(classifier, adjective) counts with nouns summed out.");

    // lexicon
    py::class_<Dictionary>(m, "Dictionary")
        .def("glosses", [](const Dictionary& d, const std::string& lemma) {
            const auto* g = d.glosses(lemma);
            return g ? *g : std::set<std::string>{};
        })
        .def("__len__", &Dictionary::size)
        .def_readonly("entries_read", &Dictionary::entries_read)
        .def_readonly("malformed_lines", &Dictionary::malformed_lines);
    py::class_<Inventory>(m, "Inventory")
        .def("lookup", [](const Inventory& inv, const std::string& lemma) {
            const auto* l = inv.lookup(lemma);
            return l ? *l : std::set<std::string>{};
        })
        .def_property_readonly("labels", &Inventory::labels)
        .def("__len__", &Inventory::size)
        .def_readonly("malformed_lines", &Inventory::malformed_lines);

    m.def("normalize_gloss", [](const std::string& g) { return normalize_gloss(g); });
    m.def("load_dictionary", [](const std::string& path) {
        auto in = open(path);
        return load_dictionary(in);
    }, py::arg("path"));
    m.def("load_inventory", [](const std::string& path, const std::string& kind) {
        auto in = open(path);
        for (auto k : {InventoryKind::noun_supersense, InventoryKind::adjective_supersense, InventoryKind::synset}) {
            if (to_string(k) == kind) return load_inventory(in, k);
        }
        throw ConfigError("unknown inventory kind '" + kind + "'");
    }, py::arg("path"), py::arg("kind"));
    m.def("map_lemma", &map_lemma, py::arg("lemma"), py::arg("dictionary"), py::arg("inventory"));

    // projections
    m.def("restricted_mi", [](const PairDict& d, const std::string& category,
                              const std::map<std::string, std::set<std::string>>& membership) -> py::object {
        auto a = build_cn_restricted(to_pairs(d), category, membership);
        if (!a) return py::none();
        return py::float_(mutual_information(a->joint));
    }, py::arg("pairs"), py::arg("category"), py::arg("membership"),
          "I(C; N_i) on the pairs whose noun is in the category, or None if it has no observations.");
    m.def("synset_mi", [](const PairDict& d, const std::map<std::string, std::set<std::string>>& membership) {
        return mutual_information(build_cs(to_pairs(d), membership).joint);
    }, py::arg("pairs"), py::arg("membership"));

    // bootstrap
    py::class_<IntervalEstimate>(m, "IntervalEstimate")
        .def_readonly("point", &IntervalEstimate::point)
        .def_readonly("lower", &IntervalEstimate::lower)
        .def_readonly("upper", &IntervalEstimate::upper)
        .def_readonly("replicates_used", &IntervalEstimate::replicates_used)
        .def_readonly("point_outside", &IntervalEstimate::point_outside)
        .def("__repr__", [](const IntervalEstimate& e) {
            std::ostringstream s;
            s.precision(17);
            s << "IntervalEstimate(point=" << e.point << ", lower=" << e.lower << ", upper=" << e.upper << ")";
            return s.str();
        });
    m.def("bootstrap_mi", [](const PairDict& d, std::size_t replicates, double confidence, std::uint64_t seed,
                             unsigned threads) {
        BootstrapConfig cfg{replicates, confidence, seed, threads};
        const auto a = build_cn(to_pairs(d));
        py::gil_scoped_release release;
        return bootstrap_mi(a.observations, cfg);
    }, py::arg("pairs"), py::arg("replicates") = 1000, py::arg("confidence") = 0.95, py::arg("seed") = 20190601,
          py::arg("threads") = 1, "Percentile bootstrap interval for I(C;N) over pair counts.");

    // pipeline
    m.def("run_extract", [](const std::map<std::string, py::object>& settings) {
        return extraction_dict(run_extract(make_config(settings)));
    }, py::arg("settings"), "Runs `extract`; settings use configuration-file keys.");
    m.def("run_analyze", [](const std::map<std::string, py::object>& settings) {
        const auto cfg = make_config(settings);
        MIReport report;
        {
            py::gil_scoped_release release;
            report = run_analyze(cfg);
        }
        return to_json(report).dump(2, ' ', false, nlohmann::ordered_json::error_handler_t::replace);
    }, py::arg("settings"), "Runs `analyze`; returns the report JSON text.");
    m.def("render_report", [](const std::string& text) {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw FormatError(e.what());
        }
        return render_report(doc);
    }, py::arg("report_json"));
}
