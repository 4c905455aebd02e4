#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "paradigm/corpus_io.h"

namespace paradigm {

struct SyntheticSpec {
    int slots = 4;
    int lemmas = 30;
    int classes = 2;
    size_t tokens = 20000;
    uint64_t seed = 7;
    /// Unlisted lemmas whose forms still occur in the corpus; -1 means lemmas / 5.
    int hidden_lemmas = -1;
};

/// A toy suffixing language. Slot 1 is the bare stem; slot s > 1 adds a
/// class-dependent realization of suffix s, so every slot except the first
/// has one edit tree per class. Every inflected form is preceded by a
/// marker word specific to its slot.
struct SyntheticLanguage {
    std::vector<std::vector<Word>> sentences;
    /// Generator class of every token, parallel to `sentences`: "V1".."VS"
    /// for inflected forms of slot s, otherwise the function word group.
    std::vector<std::vector<std::string>> token_classes;
    std::vector<Word> lexicon;  // listed lemmas
    std::vector<Word> hidden;   // unlisted lemmas
    GoldTable gold;             // listed lemmas only, slots "SLOT1".."SLOTS"
};

/// Throws std::invalid_argument for inconsistent settings, including one
/// whose corpus is too short to hold every form once.
SyntheticLanguage generate_synthetic_language(const SyntheticSpec& spec);

/// One sentence per line, tokens separated by spaces.
std::string corpus_text(const SyntheticLanguage& language);

/// Writes corpus.txt, lexicon.txt and gold.tsv into `directory`.
void write_synthetic_language(const SyntheticLanguage& language, const std::filesystem::path& directory);

}  // namespace paradigm
