#pragma once

#include <algorithm>
#include <optional>
#include <unordered_map>
#include <vector>

#include "paradigm/unicode.h"

namespace paradigm {

struct LexiconEntry {
    Word lemma;
    /// Confidence weight: theta_nl^iteration, 1 for the given lemmas.
    double weight = 1.0;
    /// 0 for the given lemmas, i for lemmas found in bootstrap round i.
    int iteration = 0;
};

/// Given lemmas plus lemmas discovered by bootstrapping. Entries are never
/// removed or re-weighted once added.
class WeightedLexicon {
public:
    WeightedLexicon() = default;
    explicit WeightedLexicon(const std::vector<Word>& gold_lemmas);

    /// Adds a discovered lemma with weight theta_nl^iteration. Returns false
    /// when the lemma is already present.
    bool add_discovered(const Word& lemma, int iteration, double theta_nl);

    bool contains(const Word& lemma) const { return index_.count(lemma) != 0; }
    std::optional<size_t> find(const Word& lemma) const;

    const LexiconEntry& operator[](size_t i) const { return entries_[i]; }
    const std::vector<LexiconEntry>& entries() const { return entries_; }
    size_t size() const { return entries_.size(); }
    size_t gold_size() const { return gold_size_; }

    /// Sum of weights; equals |L| when only given lemmas are present.
    double effective_size() const;

    friend bool operator==(const WeightedLexicon& a, const WeightedLexicon& b) {
        return a.gold_size_ == b.gold_size_ && a.entries_.size() == b.entries_.size() &&
               std::equal(a.entries_.begin(), a.entries_.end(), b.entries_.begin(),
                          [](const LexiconEntry& x, const LexiconEntry& y) {
                              return x.lemma == y.lemma && x.weight == y.weight && x.iteration == y.iteration;
                          });
    }

private:
    std::vector<LexiconEntry> entries_;
    std::unordered_map<Word, size_t> index_;
    size_t gold_size_ = 0;
};

/// theta_nl^iteration.
double lemma_weight(double theta_nl, int iteration);

}  // namespace paradigm
