#pragma once

#include <cstdint>
#include <iosfwd>
#include <unordered_map>
#include <vector>

#include "paradigm/corpus_io.h"

namespace paradigm {

struct HmmSettings {
    size_t states = 8;
    int iterations = 20;
    uint64_t seed = 0;
    /// Types seen fewer times than this share the UNK emission.
    uint64_t unk_threshold = 2;
    unsigned workers = 1;
};

/// First-order HMM over word types plus one UNK symbol. Symbol ids
/// 0..known_types()-1 are word types; known_types() is UNK.
class HmmModel {
public:
    HmmModel() = default;
    HmmModel(size_t states, std::vector<Word> known_types);

    size_t states() const { return states_; }
    size_t known_types() const { return types_.size(); }
    size_t symbols() const { return types_.size() + 1; }
    size_t unk() const { return types_.size(); }
    const std::vector<Word>& types() const { return types_; }

    size_t symbol(const Word& word) const;

    double initial(size_t k) const { return initial_[k]; }
    double transition(size_t from, size_t to) const { return transition_[from * states_ + to]; }
    double emission(size_t k, size_t symbol) const { return emission_[k * symbols() + symbol]; }

    std::vector<double>& initial_row() { return initial_; }
    std::vector<double>& transition_matrix() { return transition_; }
    std::vector<double>& emission_matrix() { return emission_; }

    /// Largest deviation of any row sum from 1; negative entries count as infinite.
    double normalization_error() const;

    void save(std::ostream& out) const;
    static HmmModel load(std::istream& in);

    friend bool operator==(const HmmModel& a, const HmmModel& b) {
        return a.states_ == b.states_ && a.types_ == b.types_ && a.initial_ == b.initial_ &&
               a.transition_ == b.transition_ && a.emission_ == b.emission_;
    }

private:
    size_t states_ = 0;
    std::vector<Word> types_;
    std::unordered_map<Word, size_t> index_;
    std::vector<double> initial_;
    std::vector<double> transition_;  // states x states, row-major
    std::vector<double> emission_;    // states x symbols, row-major
};

struct HmmTraining {
    HmmModel model;
    /// Corpus log-likelihood under the initial model and after every EM step.
    std::vector<double> log_likelihood;
};

/// Baum-Welch training, one chain per sentence.
HmmTraining train_hmm(const Corpus& corpus, const Vocabulary& vocab, const HmmSettings& settings);

/// Log-likelihood of the corpus under the model (forward algorithm).
double corpus_log_likelihood(const HmmModel& model, const Corpus& corpus, const Vocabulary& vocab);

/// One pseudo tag per token, aligned with corpus.tokens.
struct TagSequence {
    std::vector<uint16_t> tags;
    size_t states = 0;
};

/// Per-sentence Viterbi decoding; ties go to the lower state index.
TagSequence tag_corpus(const HmmModel& model, const Corpus& corpus, const Vocabulary& vocab,
                       unsigned workers = 1);

/// token<TAB>tag per line, blank line between sentences.
void write_tagged_corpus(const Corpus& corpus, const Vocabulary& vocab, const TagSequence& tags,
                         std::ostream& out);

}  // namespace paradigm
