#include "clfinfo/conllu.hpp"

#include <charconv>
#include <string_view>

#include "clfinfo/error.hpp"

namespace clfinfo {

namespace {

constexpr std::size_t kColumns = 10;

bool is_blank(std::string_view s) {
    return s.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto tab = line.find('\t', start);
        if (tab == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

std::optional<int> parse_int(std::string_view s) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

// Thrown inside parse_block and turned into either FormatError or a skip.
struct BlockFault {
    std::size_t line;
    std::string what;
    enum Kind { columns, field, structure } kind;
};

}  // namespace

ConlluReader::ConlluReader(std::istream& in, std::string source_name, ParseMode mode)
    : in_(in), source_(std::move(source_name)), mode_(mode) {}

void ConlluReader::fail(std::size_t line, const std::string& what) const {
    throw FormatError(source_ + ":" + std::to_string(line) + ": " + what);
}

bool ConlluReader::read_block(std::vector<std::pair<std::size_t, std::string>>& lines) {
    lines.clear();
    std::string line;
    while (std::getline(in_, line)) {
        ++line_no_;
        if (line_no_ == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (is_blank(line)) {
            if (!lines.empty()) return true;
            continue;
        }
        lines.emplace_back(line_no_, std::move(line));
    }
    return !lines.empty();
}

std::optional<Sentence> ConlluReader::parse_block(
    const std::vector<std::pair<std::size_t, std::string>>& lines) {
    Sentence s;
    for (const auto& [no, text] : lines) {
        if (text.front() == '#') continue;
        if (s.source_id.empty()) s.source_id = source_ + ":" + std::to_string(no);
        auto cols = split_tabs(text);
        if (cols.size() != kColumns) {
            throw BlockFault{no, "expected 10 tab-separated columns, found " + std::to_string(cols.size()),
                             BlockFault::columns};
        }
        auto id = cols[0];
        if (id.find('-') != std::string_view::npos || id.find('.') != std::string_view::npos) continue;
        auto index = parse_int(id);
        if (!index || *index < 1) throw BlockFault{no, "non-integer token id '" + std::string(id) + "'", BlockFault::field};
        auto head = parse_int(cols[6]);
        if (!head) throw BlockFault{no, "non-integer head '" + std::string(cols[6]) + "'", BlockFault::field};

        Token t;
        t.index = *index;
        t.form = std::string(cols[1]);
        t.lemma = cols[2] == "_" ? t.form : std::string(cols[2]);
        t.upos = std::string(cols[3]);
        t.xpos = std::string(cols[4]);
        t.head = *head;
        t.deprel = std::string(cols[7]);

        if (t.index != static_cast<int>(s.tokens.size()) + 1) {
            throw BlockFault{no, "token id " + std::to_string(t.index) + " out of sequence", BlockFault::structure};
        }
        s.tokens.push_back(std::move(t));
    }
    if (s.tokens.empty()) return std::nullopt;

    const int n = static_cast<int>(s.tokens.size());
    int roots = 0;
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
        const auto& t = s.tokens[i];
        if (t.head < 0 || t.head > n) {
            throw BlockFault{lines.front().first, "head " + std::to_string(t.head) + " of token " +
                                                      std::to_string(t.index) + " outside [0, " + std::to_string(n) + "]",
                             BlockFault::structure};
        }
        if (t.head == t.index) {
            throw BlockFault{lines.front().first, "token " + std::to_string(t.index) + " is its own head",
                             BlockFault::structure};
        }
        if (t.head == 0) ++roots;
    }
    if (mode_ == ParseMode::strict && roots != 1) {
        throw BlockFault{lines.front().first, "expected exactly one root, found " + std::to_string(roots),
                         BlockFault::structure};
    }
    // Strict mode also requires the head links to be acyclic.
    if (mode_ == ParseMode::strict) {
        for (const auto& t : s.tokens) {
            int cur = t.head;
            for (int steps = 0; cur != 0; ++steps) {
                if (steps > n) {
                    throw BlockFault{lines.front().first, "head links contain a cycle", BlockFault::structure};
                }
                cur = s.tokens[static_cast<std::size_t>(cur) - 1].head;
            }
        }
    }
    return s;
}

std::optional<Sentence> ConlluReader::next() {
    std::vector<std::pair<std::size_t, std::string>> lines;
    while (read_block(lines)) {
        try {
            auto s = parse_block(lines);
            if (!s) continue;
            ++stats_.sentences;
            return s;
        } catch (const BlockFault& f) {
            if (mode_ == ParseMode::strict) fail(f.line, f.what);
            ++stats_.skipped_blocks;
            switch (f.kind) {
                case BlockFault::columns: ++stats_.bad_column_lines; break;
                case BlockFault::field: ++stats_.bad_field_lines; break;
                case BlockFault::structure: ++stats_.bad_structure_blocks; break;
            }
        }
    }
    return std::nullopt;
}

std::vector<Sentence> read_sentences(std::istream& in, const std::string& source_name, ParseMode mode,
                                     IngestStats* stats) {
    ConlluReader reader(in, source_name, mode);
    std::vector<Sentence> out;
    while (auto s = reader.next()) out.push_back(std::move(*s));
    if (stats) *stats += reader.stats();
    return out;
}

}  // namespace clfinfo
