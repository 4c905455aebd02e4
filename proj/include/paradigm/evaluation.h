#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "paradigm/corpus_io.h"

namespace paradigm {

/// Collapses slots whose columns agree on every lemma (a lemma lacking both
/// counts as agreeing; lacking one does not). The smallest key of each
/// group is kept.
template <typename Key>
std::map<Word, std::map<Key, Word>> merge_syncretic_slots(const std::map<Word, std::map<Key, Word>>& table) {
    std::map<Key, std::vector<std::pair<Word, Word>>> columns;
    for (const auto& [lemma, cells] : table) {
        for (const auto& [slot, form] : cells) columns[slot].emplace_back(lemma, form);
    }
    std::map<std::vector<std::pair<Word, Word>>, Key> first;
    std::map<Key, bool> keep;
    for (const auto& [slot, column] : columns) keep[slot] = first.try_emplace(column, slot).second;

    std::map<Word, std::map<Key, Word>> out;
    for (const auto& [lemma, cells] : table) {
        auto& row = out[lemma];
        for (const auto& [slot, form] : cells) {
            if (keep[slot]) row.emplace(slot, form);
        }
    }
    return out;
}

struct Matching {
    std::vector<std::pair<size_t, size_t>> pairs;  // (row, column), ascending by row
    double total = 0.0;
};

/// Exact maximum-weight matching of size min(N, M) on an N x M matrix of
/// non-negative finite weights (Hungarian algorithm, O(n^2 m)).
Matching best_match(const std::vector<std::vector<double>>& weights);

struct SlotScore {
    std::string gold_slot;
    int predicted_slot = 0;
    size_t correct = 0;
    size_t total = 0;  // gold forms present for this slot
    double accuracy() const { return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total); }
};

struct EvalResult {
    double macro = 0.0;
    double micro = 0.0;
    size_t gold_slots = 0;       // N after merging
    size_t predicted_slots = 0;  // M after merging
    std::vector<SlotScore> matched;  // pairs of the macro matching, by gold slot
};

/// Best-match accuracy. Predictions for lemmas outside the gold table are
/// ignored. Throws std::invalid_argument when the gold table has no forms.
EvalResult bmacc(const GoldTable& gold, const Paradigms& predictions);

inline constexpr int kLemmaBaselineDevSlots = 48;

/// Fills slots 1..slot_count of every lemma with the lemma itself.
Paradigms lemma_baseline(const std::vector<Word>& lemmas, int slot_count = kLemmaBaselineDevSlots);

/// Number of distinct slots in the gold table.
size_t gold_slot_count(const GoldTable& gold);

/// Human-readable report; scores in percent with M in parentheses.
void write_report_text(const EvalResult& result, std::ostream& out);
/// key=value lines.
void write_report_keyvalue(const EvalResult& result, std::ostream& out);

}  // namespace paradigm
