// clfinfo: classifier mutual-information analytics over parsed corpora.
//
//   clfinfo extract --corpus data/*.conllu --output out/
//   clfinfo analyze --pairs out/pairs.tsv --triples out/triples.tsv --output out/
//   clfinfo report out/report.json
//
// Exit codes: 0 success, 1 usage or configuration error, 2 data error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "clfinfo/config.hpp"
#include "clfinfo/error.hpp"
#include "clfinfo/pipeline.hpp"
#include "clfinfo/report.hpp"

namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

// Command-line values that override configuration-file keys.
struct Overrides {
    std::map<std::string, std::string> scalar;
    std::map<std::string, std::vector<std::string>> lists;
    std::vector<std::pair<CLI::Option*, std::string>> options;

    void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
        options.emplace_back(app->add_option(flag, scalar[key], help), key);
    }
    void add_list(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
        options.emplace_back(app->add_option(flag, lists[key], help), key);
    }

    void apply(clfinfo::RunConfig& cfg) const {
        for (const auto& [opt, key] : options) {
            if (opt->count() == 0) continue;
            if (auto it = lists.find(key); it != lists.end()) {
                for (const auto& v : it->second) clfinfo::set_config_value(cfg, key, v);
            } else {
                clfinfo::set_config_value(cfg, key, scalar.at(key));
            }
        }
    }
};

clfinfo::RunConfig load_config(const std::string& path, const Overrides& overrides) {
    clfinfo::RunConfig cfg;
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw clfinfo::ConfigError("cannot read config file '" + path + "'");
        clfinfo::apply_config(in, path, cfg);
    }
    overrides.apply(cfg);
    return cfg;
}

int cmd_extract(const clfinfo::RunConfig& cfg) {
    if (cfg.corpus.empty()) throw clfinfo::ConfigError("extract needs at least one --corpus path");
    const auto r = clfinfo::run_extract(cfg);
    if (r.stats.sentences == 0) std::cerr << "warning: corpus contained no sentences\n";
    if (r.stats.skipped_blocks > 0) {
        std::cerr << "warning: skipped " << r.stats.skipped_blocks << " malformed sentence block(s)\n";
    }
    std::cout << "files " << r.files << ", sentences " << r.stats.sentences << ", skipped blocks "
              << r.stats.skipped_blocks << ", pairs " << r.pairs.total() << " (" << r.pairs.size()
              << " types), triples " << r.triples.total() << " (" << r.triples.size() << " types)\n";
    return 0;
}

int cmd_analyze(const clfinfo::RunConfig& cfg) {
    const auto report = clfinfo::run_analyze(cfg);
    for (const auto& r : report.analyses) {
        std::cout << r.analysis << ": H(C)=" << r.h_c << " H(C|X)=" << r.h_c_given_x << " I(C;X)=" << r.i_c_x
                  << " [" << r.interval.lower << ", " << r.interval.upper << "]\n";
    }
    return 0;
}

int cmd_report(const std::string& input, const std::string& output) {
    std::ifstream in(input);
    if (!in) throw clfinfo::ConfigError("cannot read report '" + input + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw clfinfo::FormatError(input + ": " + e.what());
    }
    const auto text = clfinfo::render_report(doc);
    if (output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output, std::ios::binary);
        if (!out) throw clfinfo::ConfigError("cannot write '" + output + "'");
        out << text;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mutual information between classifiers and co-occurring lexical information"};
    app.require_subcommand(1);

    std::string extract_config, analyze_config;
    Overrides extract_over, analyze_over;

    auto* extract = app.add_subcommand("extract", "Extract classifier-noun pairs and adjective triples from CoNLL-U");
    extract->add_option("--config", extract_config, "key = value configuration file");
    extract_over.add_list(extract, "--corpus", "corpus", "CoNLL-U files, directories or globs");
    extract_over.add(extract, "--mode", "mode", "strict or lenient (default lenient)");
    extract_over.add(extract, "--classifier-deprels", "extraction.classifier_deprels", "comma list (default clf)");
    extract_over.add(extract, "--classifier-xpos", "extraction.classifier_xpos", "comma list (default M)");
    extract_over.add(extract, "--match-policy", "extraction.match_policy", "deprel_or_xpos | deprel_only | xpos_only");
    extract_over.add(extract, "--noun-upos", "extraction.noun_upos", "comma list (default NOUN,PROPN)");
    extract_over.add(extract, "--adjective-deprels", "extraction.adjective_deprels", "comma list (default amod)");
    extract_over.add(extract, "--adjective-upos", "extraction.adjective_upos", "comma list (default ADJ)");
    extract_over.add(extract, "--output,-o", "output", "output directory");
    extract_over.add(extract, "--threads", "threads", "files read concurrently");

    auto* analyze = app.add_subcommand("analyze", "Compute entropies, mutual information and bootstrap intervals");
    analyze->add_option("--config", analyze_config, "key = value configuration file");
    analyze_over.add(analyze, "--pairs", "pairs", "pair counts TSV");
    analyze_over.add(analyze, "--triples", "triples", "triple counts TSV");
    analyze_over.add(analyze, "--dictionary", "dictionary", "CC-CEDICT dictionary");
    analyze_over.add(analyze, "--noun-supersenses", "noun_supersenses", "lemma<TAB>category TSV");
    analyze_over.add(analyze, "--adjective-supersenses", "adjective_supersenses", "lemma<TAB>category TSV");
    analyze_over.add(analyze, "--synsets", "synsets", "lemma<TAB>synset TSV");
    analyze_over.add(analyze, "--analyses", "analyses",
                     "comma list of noun, adjective, noun_supersense, adjective_supersense, synset");
    analyze_over.add_list(analyze, "--condition", "condition", "noun whose p(C | N) is reported");
    analyze_over.add(analyze, "--replicates", "bootstrap.replicates", "bootstrap replicates (default 1000)");
    analyze_over.add(analyze, "--confidence", "bootstrap.confidence", "interval confidence (default 0.95)");
    analyze_over.add(analyze, "--seed", "bootstrap.seed", "bootstrap seed");
    analyze_over.add(analyze, "--output,-o", "output", "output directory");
    analyze_over.add(analyze, "--threads", "threads", "bootstrap worker threads");

    std::string report_input, report_output;
    auto* report = app.add_subcommand("report", "Render a report JSON as text tables");
    report->add_option("input", report_input, "report.json")->required();
    report->add_option("--output,-o", report_output, "write to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsageError;
    }

    try {
        if (extract->parsed()) return cmd_extract(load_config(extract_config, extract_over));
        if (analyze->parsed()) return cmd_analyze(load_config(analyze_config, analyze_over));
        return cmd_report(report_input, report_output);
    } catch (const clfinfo::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDataError;
    }
}
