#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "clfinfo/config.hpp"
#include "clfinfo/conllu.hpp"
#include "clfinfo/counts.hpp"
#include "clfinfo/report.hpp"

namespace clfinfo {

/// Expands files, directories (their *.conllu / *.conll files) and filename
/// globs into a sorted, de-duplicated file list. Throws ConfigError naming
/// any path that does not exist or glob that matches nothing.
std::vector<std::filesystem::path> expand_corpus_paths(const std::vector<std::string>& specs);

struct ExtractionResult {
    PairCount pairs;
    TripleCount triples;
    IngestStats stats;
    std::size_t files = 0;
};

/// Extracts tuples from one CoNLL-U stream.
ExtractionResult extract_stream(std::istream& in, const std::string& source_name, const ExtractionRules& rules,
                                ParseMode mode);

/// One reader per file (up to `threads` at once); shards merge in file order.
ExtractionResult extract_corpus(const std::vector<std::filesystem::path>& files, const ExtractionRules& rules,
                                ParseMode mode, unsigned threads = 1);

/// Extraction settings echoed into counts files and reports.
CountsMetadata extraction_metadata(const ExtractionRules& rules, ParseMode mode);

/// Writes pairs.tsv, triples.tsv and extract_stats.json into cfg.output_dir.
ExtractionResult run_extract(const RunConfig& cfg);

/// Loads counts and lexicon inputs named by cfg, writes report.json and one
/// CSV per supersense analysis into cfg.output_dir.
MIReport run_analyze(const RunConfig& cfg);

}  // namespace clfinfo
