#include "clfinfo/pipeline.hpp"

#include <fnmatch.h>

#include <atomic>
#include <fstream>
#include <iostream>
#include <set>
#include <thread>

#include "clfinfo/error.hpp"
#include "clfinfo/lexicon.hpp"

namespace clfinfo {

namespace fs = std::filesystem;

namespace {

bool has_glob(const std::string& s) { return s.find_first_of("*?[") != std::string::npos; }

bool is_conllu_name(const fs::path& p) {
    const auto ext = p.extension().string();
    return ext == ".conllu" || ext == ".conll";
}

std::string join(const std::set<std::string>& items) {
    std::string out;
    for (const auto& s : items) {
        if (!out.empty()) out += ',';
        out += s;
    }
    return out;
}

std::ifstream open_input(const std::string& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(std::string("cannot read ") + what + " '" + path + "'");
    return in;
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    return out;
}

}  // namespace

std::vector<fs::path> expand_corpus_paths(const std::vector<std::string>& specs) {
    std::set<fs::path> found;
    for (const auto& spec : specs) {
        fs::path p(spec);
        if (has_glob(p.filename().string())) {
            fs::path dir = p.parent_path().empty() ? fs::path(".") : p.parent_path();
            if (!fs::is_directory(dir)) throw ConfigError("corpus directory '" + dir.string() + "' does not exist");
            const auto pattern = p.filename().string();
            bool any = false;
            for (const auto& entry : fs::directory_iterator(dir)) {
                if (!entry.is_regular_file()) continue;
                if (fnmatch(pattern.c_str(), entry.path().filename().c_str(), 0) == 0) {
                    found.insert(p.parent_path().empty() ? entry.path().filename() : entry.path());
                    any = true;
                }
            }
            if (!any) throw ConfigError("corpus pattern '" + spec + "' matches no files");
        } else if (fs::is_directory(p)) {
            for (const auto& entry : fs::directory_iterator(p)) {
                if (entry.is_regular_file() && is_conllu_name(entry.path())) found.insert(entry.path());
            }
        } else if (fs::exists(p)) {
            found.insert(p);
        } else {
            throw ConfigError("corpus path '" + spec + "' does not exist");
        }
    }
    return {found.begin(), found.end()};
}

ExtractionResult extract_stream(std::istream& in, const std::string& source_name, const ExtractionRules& rules,
                                ParseMode mode) {
    ExtractionResult r;
    r.files = 1;
    ConlluReader reader(in, source_name, mode);
    while (auto s = reader.next()) {
        for (const auto& p : extract_pairs(*s, rules)) r.pairs.add({p.classifier, p.noun});
        for (const auto& t : extract_triples(*s, rules)) r.triples.add({t.adjective, t.classifier, t.noun});
    }
    r.stats = reader.stats();
    return r;
}

ExtractionResult extract_corpus(const std::vector<fs::path>& files, const ExtractionRules& rules, ParseMode mode,
                                unsigned threads) {
    rules.validate();
    std::vector<ExtractionResult> shards(files.size());
    std::vector<std::exception_ptr> errors(files.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < files.size(); i = next++) {
            try {
                std::ifstream in(files[i], std::ios::binary);
                if (!in) throw ConfigError("cannot read corpus file '" + files[i].string() + "'");
                shards[i] = extract_stream(in, files[i].string(), rules, mode);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), std::max<std::size_t>(1, files.size()));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    ExtractionResult total;
    for (std::size_t i = 0; i < files.size(); ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
        total.pairs.merge_from(shards[i].pairs);
        total.triples.merge_from(shards[i].triples);
        total.stats += shards[i].stats;
        total.files += shards[i].files;
    }
    return total;
}

CountsMetadata extraction_metadata(const ExtractionRules& rules, ParseMode mode) {
    return {
        {"adjective_deprels", join(rules.adjective_deprels)},
        {"adjective_upos", join(rules.adjective_upos)},
        {"classifier_deprels", join(rules.classifier_deprels)},
        {"classifier_xpos", join(rules.classifier_xpos)},
        {"counting", "token"},
        {"keys", "surface forms"},
        {"match_policy", to_string(rules.match_policy)},
        {"mode", to_string(mode)},
        {"noun_upos", join(rules.noun_upos)},
    };
}

ExtractionResult run_extract(const RunConfig& cfg) {
    const auto files = expand_corpus_paths(cfg.corpus);
    auto result = extract_corpus(files, cfg.rules, cfg.mode, cfg.threads);
    const auto meta = extraction_metadata(cfg.rules, cfg.mode);

    fs::create_directories(cfg.output_dir);
    const fs::path dir(cfg.output_dir);
    {
        auto out = open_output(dir / "pairs.tsv");
        write_counts_tsv(out, result.pairs, meta);
    }
    {
        auto out = open_output(dir / "triples.tsv");
        write_counts_tsv(out, result.triples, meta);
    }
    nlohmann::ordered_json stats;
    stats["files"] = result.files;
    stats["sentences"] = result.stats.sentences;
    stats["skipped_blocks"] = result.stats.skipped_blocks;
    stats["bad_column_lines"] = result.stats.bad_column_lines;
    stats["bad_field_lines"] = result.stats.bad_field_lines;
    stats["bad_structure_blocks"] = result.stats.bad_structure_blocks;
    stats["pair_observations"] = result.pairs.total();
    stats["pair_types"] = result.pairs.size();
    stats["triple_observations"] = result.triples.total();
    stats["triple_types"] = result.triples.size();
    stats["extraction"] = meta;
    auto out = open_output(dir / "extract_stats.json");
    out << stats.dump(2, ' ', false, nlohmann::ordered_json::error_handler_t::replace) << '\n';
    return result;
}

MIReport run_analyze(const RunConfig& cfg) {
    if (cfg.pairs.empty()) throw ConfigError("analyze needs a pairs counts file");
    auto pairs_in = open_input(cfg.pairs, "pairs file");
    const auto pairs = read_pairs_tsv(pairs_in, cfg.pairs);

    std::optional<CountsFile<3>> triples;
    if (!cfg.triples.empty()) {
        auto in = open_input(cfg.triples, "triples file");
        triples = read_triples_tsv(in, cfg.triples);
    }
    const auto analyses = resolve_analyses(cfg, triples && !triples->table.empty());
    auto needs = [&](AnalysisKind k) { return std::find(analyses.begin(), analyses.end(), k) != analyses.end(); };

    LexiconInputs lex;
    if (needs(AnalysisKind::noun_supersense) || needs(AnalysisKind::adjective_supersense) ||
        needs(AnalysisKind::synset)) {
        auto in = open_input(cfg.dictionary, "dictionary");
        lex.dictionary = load_dictionary(in);
    }
    if (needs(AnalysisKind::noun_supersense)) {
        auto in = open_input(cfg.noun_supersenses, "noun supersense inventory");
        lex.noun_supersenses = load_inventory(in, InventoryKind::noun_supersense);
    }
    if (needs(AnalysisKind::adjective_supersense)) {
        auto in = open_input(cfg.adjective_supersenses, "adjective supersense inventory");
        lex.adjective_supersenses = load_inventory(in, InventoryKind::adjective_supersense);
    }
    if (needs(AnalysisKind::synset)) {
        auto in = open_input(cfg.synsets, "synset inventory");
        lex.synsets = load_inventory(in, InventoryKind::synset);
    }

    auto report = analyze(pairs.table, triples ? &triples->table : nullptr, lex, analyses, cfg, pairs.metadata);

    fs::create_directories(cfg.output_dir);
    const fs::path dir(cfg.output_dir);
    {
        auto out = open_output(dir / "report.json");
        out << to_json(report).dump(2, ' ', false, nlohmann::ordered_json::error_handler_t::replace) << '\n';
    }
    if (report.noun_supersense) {
        auto out = open_output(dir / "noun_supersense.csv");
        write_category_csv(out, *report.noun_supersense);
    }
    if (report.adjective_supersense) {
        auto out = open_output(dir / "adjective_supersense.csv");
        write_category_csv(out, *report.adjective_supersense);
    }
    return report;
}

}  // namespace clfinfo
