#include "clfinfo/config.hpp"

#include <charconv>
#include <set>

#include "clfinfo/error.hpp"

namespace clfinfo {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::set<std::string> to_set(const std::string& value) {
    auto items = split_list(value);
    return {items.begin(), items.end()};
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
    T v{};
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size() || value.empty()) {
        throw ConfigError("invalid value '" + value + "' for " + key);
    }
    return v;
}

double parse_real(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("invalid value '" + value + "' for " + key);
    }
}

}  // namespace

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto comma = s.find(',', start);
        auto item = trim(s.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        if (!item.empty()) out.push_back(std::move(item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string to_string(ParseMode m) { return m == ParseMode::strict ? "strict" : "lenient"; }

ParseMode parse_mode(const std::string& s) {
    if (s == "strict") return ParseMode::strict;
    if (s == "lenient") return ParseMode::lenient;
    throw ConfigError("unknown mode '" + s + "' (expected strict or lenient)");
}

void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "corpus") {
        for (auto& p : split_list(value)) cfg.corpus.push_back(std::move(p));
    } else if (key == "mode") {
        cfg.mode = parse_mode(value);
    } else if (key == "pairs") {
        cfg.pairs = value;
    } else if (key == "triples") {
        cfg.triples = value;
    } else if (key == "dictionary") {
        cfg.dictionary = value;
    } else if (key == "noun_supersenses") {
        cfg.noun_supersenses = value;
    } else if (key == "adjective_supersenses") {
        cfg.adjective_supersenses = value;
    } else if (key == "synsets") {
        cfg.synsets = value;
    } else if (key == "analyses") {
        cfg.analyses.clear();
        for (const auto& a : split_list(value)) cfg.analyses.push_back(parse_analysis_kind(a));
    } else if (key == "condition") {
        for (auto& n : split_list(value)) cfg.conditionals.push_back(std::move(n));
    } else if (key == "output") {
        cfg.output_dir = value;
    } else if (key == "threads") {
        cfg.threads = parse_number<unsigned>(key, value);
    } else if (key == "extraction.classifier_deprels") {
        cfg.rules.classifier_deprels = to_set(value);
    } else if (key == "extraction.classifier_xpos") {
        cfg.rules.classifier_xpos = to_set(value);
    } else if (key == "extraction.match_policy") {
        cfg.rules.match_policy = parse_match_policy(value);
    } else if (key == "extraction.noun_upos") {
        cfg.rules.noun_upos = to_set(value);
    } else if (key == "extraction.adjective_deprels") {
        cfg.rules.adjective_deprels = to_set(value);
    } else if (key == "extraction.adjective_upos") {
        cfg.rules.adjective_upos = to_set(value);
    } else if (key == "bootstrap.replicates") {
        cfg.bootstrap.replicates = parse_number<std::size_t>(key, value);
        if (cfg.bootstrap.replicates < 1) throw ConfigError("bootstrap.replicates must be at least 1");
    } else if (key == "bootstrap.confidence") {
        cfg.bootstrap.confidence = parse_real(key, value);
        if (!(cfg.bootstrap.confidence > 0.0 && cfg.bootstrap.confidence < 1.0)) {
            throw ConfigError("bootstrap.confidence must lie in (0, 1)");
        }
    } else if (key == "bootstrap.seed") {
        cfg.bootstrap.seed = parse_number<std::uint64_t>(key, value);
    } else {
        throw ConfigError("unknown configuration key '" + key + "'");
    }
}

void apply_config(std::istream& in, const std::string& source_name, RunConfig& cfg) {
    std::string line, section;
    std::size_t no = 0;
    while (std::getline(in, line)) {
        ++no;
        // A `#` or `;` after whitespace starts a trailing comment.
        for (std::size_t i = 1; i < line.size(); ++i) {
            if ((line[i] == '#' || line[i] == ';') && (line[i - 1] == ' ' || line[i - 1] == '\t')) {
                line.resize(i);
                break;
            }
        }
        auto t = trim(line);
        if (t.empty() || t.front() == '#' || t.front() == ';') continue;
        auto where = source_name + ":" + std::to_string(no) + ": ";
        if (t.front() == '[') {
            if (t.back() != ']') throw ConfigError(where + "unterminated section header");
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos) throw ConfigError(where + "expected key = value");
        auto key = trim(t.substr(0, eq));
        auto value = trim(t.substr(eq + 1));
        if (!section.empty()) key = section + "." + key;
        try {
            set_config_value(cfg, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError(where + e.what());
        }
    }
}

}  // namespace clfinfo
