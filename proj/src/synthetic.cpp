#include "paradigm/synthetic.h"

#include <fstream>
#include <set>
#include <stdexcept>

#include "paradigm/random.h"

namespace paradigm {

namespace {

constexpr std::u32string_view kStemConsonants = U"ptkmnlsr";
constexpr std::u32string_view kStemVowels = U"aiou";
// Function words use letters that never occur in stems or suffixes.
constexpr std::u32string_view kFillerConsonants = U"bfgvzhjw";
constexpr std::u32string_view kFillerVowels = U"ey";

const char32_t* const kSuffixes[] = {U"d", U"st", U"nk", U"m", U"rd", U"ps", U"lt", U"ng", U"rt", U"mp", U"sk"};
constexpr int kMaxSlots = 1 + static_cast<int>(std::size(kSuffixes));
constexpr int kMaxClasses = 4;

// Function word classes: determiner, noun, adjective, preposition. They
// follow a small phrase grammar (P D, D N, D A N, N P) so that a tagger
// has reasons to learn them independently of the inflected forms.
enum { D, N, A, P };
const char* const kClassNames[] = {"D", "N", "A", "P"};
const int kClassSizes[] = {3, 15, 8, 4};
// Chunk ending in a class (left of the form) and chunk starting with one
// (right of the form); -1 terminates.
const int kLeftChunks[4][3] = {{P, D, -1}, {D, N, -1}, {D, A, -1}, {N, P, -1}};
const int kRightChunks[4][4] = {{D, N, -1, -1}, {N, -1, -1, -1}, {A, N, -1, -1}, {P, D, N, -1}};
// (left, right) neighbour classes of the form, one frame per slot.
const std::pair<int, int> kFrames[] = {{D, N}, {N, A}, {P, D}, {A, P}, {D, A}, {N, P},
                                       {P, N}, {A, D}, {D, P}, {N, D}, {P, A}, {A, N}};

size_t chunk_length(const int* chunk, size_t n) {
    size_t k = 0;
    while (k < n && chunk[k] >= 0) ++k;
    return k;
}

size_t frame_length(int slot) {
    const auto [left, right] = kFrames[slot - 1];
    return chunk_length(kLeftChunks[left], 3) + 1 + chunk_length(kRightChunks[right], 4);
}

char32_t pick(Rng& rng, std::u32string_view letters) { return letters[rng.below(letters.size())]; }

// Class 0: consonant-final stems, "e" + suffix. Class 1: "e"-final stems,
// bare suffix. Classes 2 and 3: "i"/"u"-final stems whose last vowel is
// replaced by "y"/"w" before the suffix.
Word make_stem(Rng& rng, int cls) {
    Word core;
    for (int s = 0; s < 3; ++s) {
        core.push_back(pick(rng, kStemConsonants));
        core.push_back(pick(rng, kStemVowels));
    }
    switch (cls) {
        case 0: return core + pick(rng, kStemConsonants);
        case 1: return core + U"e";
        case 2: return core + U"i";
        default: return core + U"u";
    }
}

Word inflect_synthetic(const Word& stem, int cls, int slot) {
    if (slot == 1) return stem;
    const Word suffix = kSuffixes[slot - 2];
    switch (cls) {
        case 0: return stem + U"e" + suffix;
        case 1: return stem + suffix;
        case 2: return stem.substr(0, stem.size() - 1) + U"y" + suffix;
        default: return stem.substr(0, stem.size() - 1) + U"w" + suffix;
    }
}

Word make_filler(Rng& rng, std::set<Word>& used) {
    while (true) {
        Word w;
        const size_t syllables = 1 + rng.below(2);
        for (size_t s = 0; s < syllables; ++s) {
            w.push_back(pick(rng, kFillerConsonants));
            w.push_back(pick(rng, kFillerVowels));
        }
        if (used.insert(w).second) return w;
    }
}

std::vector<Word> make_group(Rng& rng, std::set<Word>& used, int n) {
    std::vector<Word> out;
    for (int i = 0; i < n; ++i) out.push_back(make_filler(rng, used));
    return out;
}

}  // namespace

SyntheticLanguage generate_synthetic_language(const SyntheticSpec& spec) {
    if (spec.slots < 2 || spec.slots > kMaxSlots) {
        throw std::invalid_argument("slot count must be in [2, " + std::to_string(kMaxSlots) + "]");
    }
    if (spec.classes < 2 || spec.classes > kMaxClasses) throw std::invalid_argument("class count must be in [2, 4]");
    if (spec.lemmas < spec.classes) throw std::invalid_argument("need at least one lemma per class");
    const int hidden = spec.hidden_lemmas < 0 ? spec.lemmas / 5 : spec.hidden_lemmas;
    const size_t total_lemmas = static_cast<size_t>(spec.lemmas + hidden);
    size_t needed = 0;
    for (int s = 1; s <= spec.slots; ++s) needed += total_lemmas * frame_length(s);
    if (needed > spec.tokens) {
        throw std::invalid_argument("corpus of " + std::to_string(spec.tokens) + " tokens cannot hold all " +
                                    std::to_string(total_lemmas * spec.slots) + " forms once (" + std::to_string(needed) + " tokens)");
    }

    Rng rng(spec.seed);
    SyntheticLanguage lang;

    struct Lemma {
        Word stem;
        int cls;
    };
    std::vector<Lemma> lemmas;
    std::set<Word> stems;
    for (size_t i = 0; i < total_lemmas; ++i) {
        const int cls = static_cast<int>(i % static_cast<size_t>(spec.classes));
        Word stem;
        do stem = make_stem(rng, cls);
        while (!stems.insert(stem).second);
        lemmas.push_back({stem, cls});
    }
    for (size_t i = 0; i < total_lemmas; ++i) {
        if (i < static_cast<size_t>(spec.lemmas)) {
            lang.lexicon.push_back(lemmas[i].stem);
            for (int s = 1; s <= spec.slots; ++s) {
                lang.gold[lemmas[i].stem]["SLOT" + std::to_string(s)] = inflect_synthetic(lemmas[i].stem, lemmas[i].cls, s);
            }
        } else {
            lang.hidden.push_back(lemmas[i].stem);
        }
    }

    std::set<Word> used;
    std::vector<std::vector<Word>> words(4);
    for (int c = 0; c < 4; ++c) words[c] = make_group(rng, used, kClassSizes[c]);
    auto word_of = [&](int c) { return words[c][rng.below(words[c].size())]; };

    // Every (lemma, slot) once, then uniform draws until the token budget
    // is spent.
    std::vector<std::pair<size_t, int>> events;
    for (size_t l = 0; l < total_lemmas; ++l) {
        for (int s = 1; s <= spec.slots; ++s) events.emplace_back(l, s);
    }
    size_t budget = 0;
    for (auto [l, s] : events) budget += frame_length(s);
    while (budget < spec.tokens) {
        events.emplace_back(rng.below(total_lemmas), 1 + static_cast<int>(rng.below(spec.slots)));
        budget += frame_length(events.back().second);
    }
    rng.shuffle(events);

    for (auto [l, s] : events) {
        const auto& lemma = lemmas[l];
        const auto [left, right] = kFrames[s - 1];
        std::vector<Word> sentence;
        std::vector<std::string> classes;
        for (int c : kLeftChunks[left]) {
            if (c < 0) break;
            sentence.push_back(word_of(c));
            classes.push_back(kClassNames[c]);
        }
        sentence.push_back(inflect_synthetic(lemma.stem, lemma.cls, s));
        classes.push_back("V" + std::to_string(s));
        for (int c : kRightChunks[right]) {
            if (c < 0) break;
            sentence.push_back(word_of(c));
            classes.push_back(kClassNames[c]);
        }
        lang.sentences.push_back(std::move(sentence));
        lang.token_classes.push_back(std::move(classes));
    }

    // Self-check: every gold form is attested.
    std::set<Word> attested;
    for (size_t i = 0; i < lang.sentences.size(); ++i) {
        for (size_t k = 0; k < lang.sentences[i].size(); ++k) {
            if (lang.token_classes[i][k][0] == 'V') attested.insert(lang.sentences[i][k]);
        }
    }
    for (const auto& [lemma, cells] : lang.gold) {
        for (const auto& cell : cells) {
            if (!attested.count(cell.second)) throw std::logic_error("generated corpus misses a gold form");
        }
    }
    return lang;
}

std::string corpus_text(const SyntheticLanguage& language) {
    std::string out;
    for (const auto& sentence : language.sentences) {
        for (size_t i = 0; i < sentence.size(); ++i) {
            if (i) out += ' ';
            out += unicode::encode(sentence[i]);
        }
        out += '\n';
    }
    return out;
}

void write_synthetic_language(const SyntheticLanguage& language, const std::filesystem::path& directory) {
    std::filesystem::create_directories(directory);
    auto open = [&](const char* name) {
        std::ofstream out(directory / name, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + (directory / name).string());
        return out;
    };
    {
        auto out = open("corpus.txt");
        out << corpus_text(language);
    }
    {
        auto out = open("lexicon.txt");
        for (const auto& lemma : language.lexicon) out << unicode::encode(lemma) << '\n';
    }
    {
        auto out = open("gold.tsv");
        for (const auto& [lemma, cells] : language.gold) {
            for (const auto& [slot, form] : cells) {
                out << unicode::encode(lemma) << '\t' << unicode::encode(form) << '\t' << slot << '\n';
            }
        }
    }
}

}  // namespace paradigm
