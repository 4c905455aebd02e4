#include "paradigm/lexicon.h"

#include <cmath>
#include <stdexcept>

namespace paradigm {

double lemma_weight(double theta_nl, int iteration) {
    if (iteration < 0) throw std::invalid_argument("negative bootstrap iteration");
    return std::pow(theta_nl, iteration);
}

WeightedLexicon::WeightedLexicon(const std::vector<Word>& gold_lemmas) {
    for (const auto& lemma : gold_lemmas) {
        if (lemma.empty()) throw std::invalid_argument("empty lemma in lexicon");
        if (index_.emplace(lemma, entries_.size()).second) entries_.push_back({lemma, 1.0, 0});
    }
    gold_size_ = entries_.size();
}

bool WeightedLexicon::add_discovered(const Word& lemma, int iteration, double theta_nl) {
    if (lemma.empty()) throw std::invalid_argument("empty lemma");
    if (iteration < 1) throw std::invalid_argument("discovered lemmas start at iteration 1");
    if (!index_.emplace(lemma, entries_.size()).second) return false;
    entries_.push_back({lemma, lemma_weight(theta_nl, iteration), iteration});
    return true;
}

std::optional<size_t> WeightedLexicon::find(const Word& lemma) const {
    auto it = index_.find(lemma);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

double WeightedLexicon::effective_size() const {
    // Entries are summed in insertion order so the value is reproducible.
    double total = 0.0;
    for (const auto& e : entries_) total += e.weight;
    return total;
}

}  // namespace paradigm
