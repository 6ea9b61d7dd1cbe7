#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace clfinfo {

struct Token {
    int index = 0;  // 1-based
    std::string form;
    std::string lemma;
    std::string upos;
    std::string xpos;
    int head = 0;  // 0 = root
    std::string deprel;
};

struct Sentence {
    std::vector<Token> tokens;
    std::string source_id;  // "<file>:<first line>"

    /// Token at 1-based position, or nullptr for 0 / out of range.
    const Token* at(int index) const {
        if (index < 1 || static_cast<std::size_t>(index) > tokens.size()) return nullptr;
        return &tokens[static_cast<std::size_t>(index) - 1];
    }
};

enum class ParseMode { strict, lenient };

struct IngestStats {
    std::size_t sentences = 0;
    std::size_t skipped_blocks = 0;
    std::size_t bad_column_lines = 0;
    std::size_t bad_field_lines = 0;
    std::size_t bad_structure_blocks = 0;  // index gaps, head bounds, root count

    IngestStats& operator+=(const IngestStats& o) {
        sentences += o.sentences;
        skipped_blocks += o.skipped_blocks;
        bad_column_lines += o.bad_column_lines;
        bad_field_lines += o.bad_field_lines;
        bad_structure_blocks += o.bad_structure_blocks;
        return *this;
    }
};

/// Streaming CoNLL-U reader. One reader per input; not thread-safe.
///
/// Multiword-token ranges (`1-2`) and empty nodes (`1.1`) are skipped.
/// A `_` lemma falls back to the surface form. In strict mode any malformed
/// line or tree violation throws FormatError naming source and line; in
/// lenient mode the enclosing block is dropped and counted in stats().
class ConlluReader {
public:
    ConlluReader(std::istream& in, std::string source_name, ParseMode mode = ParseMode::lenient);

    std::optional<Sentence> next();

    const IngestStats& stats() const { return stats_; }
    const std::string& source_name() const { return source_; }

private:
    bool read_block(std::vector<std::pair<std::size_t, std::string>>& lines);
    std::optional<Sentence> parse_block(const std::vector<std::pair<std::size_t, std::string>>& lines);
    [[noreturn]] void fail(std::size_t line, const std::string& what) const;

    std::istream& in_;
    std::string source_;
    ParseMode mode_;
    std::size_t line_no_ = 0;
    IngestStats stats_;
};

/// Reads every sentence from a stream.
std::vector<Sentence> read_sentences(std::istream& in, const std::string& source_name,
                                     ParseMode mode = ParseMode::lenient,
                                     IngestStats* stats = nullptr);

}  // namespace clfinfo
