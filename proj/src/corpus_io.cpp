#include "paradigm/corpus_io.h"

#include <fstream>
#include <istream>
#include <ostream>

#include <unicode/uchar.h>

namespace paradigm {

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return in;
}

// Strips a trailing carriage return so CRLF files read like LF files.
void chomp(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

Word decode_line(const std::string& line, size_t line_no) {
    auto decoded = unicode::decode(line);
    if (!decoded) throw FormatError("invalid UTF-8", line_no);
    return std::move(*decoded);
}

Word normalize(Word word, const LoadOptions& options) {
    return options.lowercase ? unicode::to_lower(word) : word;
}

std::vector<Word> split_whitespace(const Word& line) {
    std::vector<Word> out;
    Word current;
    for (char32_t c : line) {
        if (u_isUWhiteSpace(static_cast<UChar32>(c))) {
            if (!current.empty()) out.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty()) out.push_back(std::move(current));
    return out;
}

Word trim(const Word& w) {
    size_t b = 0, e = w.size();
    while (b < e && u_isUWhiteSpace(static_cast<UChar32>(w[b]))) ++b;
    while (e > b && u_isUWhiteSpace(static_cast<UChar32>(w[e - 1]))) --e;
    return w.substr(b, e - b);
}

}  // namespace

TypeId Vocabulary::add(const Word& word, uint64_t count) {
    auto [it, inserted] = index_.try_emplace(word, static_cast<TypeId>(types_.size()));
    if (inserted) {
        types_.push_back(word);
        counts_.push_back(0);
    }
    counts_[it->second] += count;
    total_ += count;
    return it->second;
}

std::optional<TypeId> Vocabulary::find(const Word& word) const {
    auto it = index_.find(word);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    size_t start = 0;
    while (true) {
        size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
    return fields;
}

CorpusData parse_corpus(std::istream& in, const LoadOptions& options) {
    CorpusData data;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        chomp(line);
        auto tokens = split_whitespace(decode_line(line, line_no));
        if (tokens.empty()) continue;
        data.corpus.sentence_starts.push_back(data.corpus.tokens.size());
        for (auto& token : tokens) {
            data.corpus.tokens.push_back(data.vocab.add(normalize(std::move(token), options)));
        }
    }
    if (in.bad()) throw std::runtime_error("read error in corpus");
    return data;
}

CorpusData load_corpus(const std::filesystem::path& path, const LoadOptions& options) {
    auto in = open_input(path);
    try {
        return parse_corpus(in, options);
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what(), e.line());
    }
}

std::vector<Word> parse_lexicon(std::istream& in, const LoadOptions& options) {
    std::vector<Word> lemmas;
    std::unordered_map<Word, bool> seen;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        chomp(line);
        Word lemma = normalize(trim(decode_line(line, line_no)), options);
        if (lemma.empty()) continue;
        if (seen.emplace(lemma, true).second) lemmas.push_back(std::move(lemma));
    }
    if (lemmas.empty()) throw std::runtime_error("lexicon is empty");
    return lemmas;
}

std::vector<Word> load_lexicon(const std::filesystem::path& path, const LoadOptions& options) {
    auto in = open_input(path);
    return parse_lexicon(in, options);
}

GoldTable parse_gold(std::istream& in, const LoadOptions& options) {
    GoldTable table;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        chomp(line);
        if (line.empty()) continue;
        auto fields = split_tabs(line);
        if (fields.size() != 3 || fields[0].empty() || fields[1].empty() || fields[2].empty()) {
            throw FormatError("malformed gold row, expected lemma<TAB>form<TAB>slot", line_no);
        }
        Word lemma = normalize(decode_line(fields[0], line_no), options);
        Word form = normalize(decode_line(fields[1], line_no), options);
        if (!unicode::decode(fields[2])) throw FormatError("invalid UTF-8", line_no);
        auto [it, inserted] = table[lemma].emplace(fields[2], std::move(form));
        if (!inserted) throw FormatError("duplicate (lemma, slot) row", line_no);
    }
    return table;
}

GoldTable load_gold(const std::filesystem::path& path, const LoadOptions& options) {
    auto in = open_input(path);
    return parse_gold(in, options);
}

void write_predictions(const Paradigms& paradigms, std::ostream& out) {
    // std::map over u32string orders by code point, which is UTF-8 byte order.
    for (const auto& [lemma, slots] : paradigms) {
        const std::string lemma_utf8 = unicode::encode(lemma);
        for (const auto& [slot, form] : slots) {
            out << lemma_utf8 << '\t' << unicode::encode(form) << '\t' << slot << '\n';
        }
    }
}

void write_predictions(const Paradigms& paradigms, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_predictions(paradigms, out);
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

Paradigms parse_predictions(std::istream& in) {
    Paradigms paradigms;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        chomp(line);
        if (line.empty()) continue;
        auto fields = split_tabs(line);
        if (fields.size() != 3 || fields[0].empty()) {
            throw FormatError("malformed prediction row", line_no);
        }
        int slot = 0;
        try {
            size_t used = 0;
            slot = std::stoi(fields[2], &used);
            if (used != fields[2].size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw FormatError("pseudo-slot id is not an integer", line_no);
        }
        auto [it, inserted] = paradigms[decode_line(fields[0], line_no)].emplace(
            slot, decode_line(fields[1], line_no));
        if (!inserted) throw FormatError("duplicate (lemma, slot) row", line_no);
    }
    return paradigms;
}

Paradigms load_predictions(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse_predictions(in);
}

}  // namespace paradigm
