#pragma once

#include <istream>
#include <string>
#include <vector>

#include "clfinfo/bootstrap.hpp"
#include "clfinfo/conllu.hpp"
#include "clfinfo/extraction.hpp"
#include "clfinfo/projection.hpp"

namespace clfinfo {

struct RunConfig {
    std::vector<std::string> corpus;  // files, directories or globs
    ParseMode mode = ParseMode::lenient;
    ExtractionRules rules;

    std::string pairs;    // counts inputs for analyze
    std::string triples;
    std::string dictionary;
    std::string noun_supersenses;
    std::string adjective_supersenses;
    std::string synsets;

    std::vector<AnalysisKind> analyses;  // empty: pick from available inputs
    std::vector<std::string> conditionals;  // nouns whose p(C | N = noun) is reported
    BootstrapConfig bootstrap;
    std::string output_dir = ".";
    unsigned threads = 1;
};

/// Applies `key = value` lines to cfg. `[section]` headers prefix later keys
/// with `section.`; `#` and `;` start comments. Throws ConfigError naming the
/// source line on unknown keys or bad values.
void apply_config(std::istream& in, const std::string& source_name, RunConfig& cfg);

/// Sets one configuration key (the same keys the config file accepts).
void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value);

/// Comma-separated list, items trimmed, empties dropped.
std::vector<std::string> split_list(const std::string& s);

std::string to_string(ParseMode m);
ParseMode parse_mode(const std::string& s);

}  // namespace clfinfo
