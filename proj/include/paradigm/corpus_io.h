#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "paradigm/unicode.h"

namespace paradigm {

using TypeId = uint32_t;

/// Distinct word types of a corpus with their occurrence counts. Type ids
/// are assigned in order of first occurrence.
class Vocabulary {
public:
    TypeId add(const Word& word, uint64_t count = 1);

    std::optional<TypeId> find(const Word& word) const;
    bool contains(const Word& word) const { return index_.count(word) != 0; }

    const Word& word(TypeId id) const { return types_[id]; }
    uint64_t count(TypeId id) const { return counts_[id]; }
    size_t size() const { return types_.size(); }
    bool empty() const { return types_.empty(); }
    uint64_t total() const { return total_; }

    const std::vector<Word>& types() const { return types_; }

private:
    std::vector<Word> types_;
    std::vector<uint64_t> counts_;
    std::unordered_map<Word, TypeId> index_;
    uint64_t total_ = 0;
};

/// Token stream with sentence boundaries. Tokens are ids into the
/// accompanying Vocabulary.
struct Corpus {
    std::vector<TypeId> tokens;
    /// Start offset of every sentence; strictly increasing, each < tokens.size().
    std::vector<size_t> sentence_starts;

    size_t size() const { return tokens.size(); }
    bool empty() const { return tokens.empty(); }
    size_t sentence_count() const { return sentence_starts.size(); }
    size_t sentence_begin(size_t s) const { return sentence_starts[s]; }
    size_t sentence_end(size_t s) const {
        return s + 1 < sentence_starts.size() ? sentence_starts[s + 1] : tokens.size();
    }
    std::span<const TypeId> sentence(size_t s) const {
        return std::span<const TypeId>(tokens).subspan(sentence_begin(s),
                                                        sentence_end(s) - sentence_begin(s));
    }
};

struct CorpusData {
    Corpus corpus;
    Vocabulary vocab;
};

struct LoadOptions {
    bool lowercase = true;
};

/// Gold inflection tables: lemma -> (slot label -> form).
using GoldTable = std::map<Word, std::map<std::string, Word>>;

/// Predicted paradigms: lemma -> (pseudo-slot id -> form).
using Paradigms = std::map<Word, std::map<int, Word>>;

/// Thrown for malformed input; carries the 1-based line number when known.
class FormatError : public std::runtime_error {
public:
    FormatError(const std::string& what, size_t line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    size_t line() const { return line_; }

private:
    size_t line_;
};

CorpusData parse_corpus(std::istream& in, const LoadOptions& options = {});
CorpusData load_corpus(const std::filesystem::path& path, const LoadOptions& options = {});

std::vector<Word> parse_lexicon(std::istream& in, const LoadOptions& options = {});
std::vector<Word> load_lexicon(const std::filesystem::path& path, const LoadOptions& options = {});

GoldTable parse_gold(std::istream& in, const LoadOptions& options = {});
GoldTable load_gold(const std::filesystem::path& path, const LoadOptions& options = {});

void write_predictions(const Paradigms& paradigms, std::ostream& out);
void write_predictions(const Paradigms& paradigms, const std::filesystem::path& path);

Paradigms parse_predictions(std::istream& in);
Paradigms load_predictions(const std::filesystem::path& path);

/// Splits a tab-separated line into fields.
std::vector<std::string> split_tabs(const std::string& line);

}  // namespace paradigm
