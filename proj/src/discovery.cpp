#include "paradigm/discovery.h"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include "paradigm/format.h"
#include "paradigm/parallel.h"

namespace paradigm {

size_t CandidateMap::total() const {
    size_t n = 0;
    for (const auto& c : per_lemma) n += c.size();
    return n;
}

bool is_candidate(std::u32string_view lemma, std::u32string_view word, double lambda_p) {
    if (lemma.empty()) throw std::invalid_argument("lemma of length 0");
    const double lemma_len = static_cast<double>(lemma.size());
    // The LCS cannot exceed the shorter string; skip hopeless pairs.
    if (static_cast<double>(std::min(lemma.size(), word.size())) / lemma_len <= lambda_p) return false;
    const auto lcs = longest_common_substring(lemma, word);
    return static_cast<double>(lcs.length) / lemma_len > lambda_p;
}

CandidateMap find_candidates(const WeightedLexicon& lexicon, const Vocabulary& vocab, double lambda_p,
                             unsigned workers) {
    if (!(lambda_p >= 0.0 && lambda_p < 1.0)) throw std::invalid_argument("lambda_p must be in [0, 1)");
    for (const auto& entry : lexicon.entries()) {
        if (entry.lemma.empty()) throw std::invalid_argument("lemma of length 0");
    }
    CandidateMap map;
    map.per_lemma.resize(lexicon.size());
    parallel_for(lexicon.size(), workers, [&](size_t i) {
        const Word& lemma = lexicon[i].lemma;
        auto& out = map.per_lemma[i];
        for (TypeId w = 0; w < vocab.size(); ++w) {
            if (is_candidate(lemma, vocab.word(w), lambda_p)) out.push_back(w);
        }
    });
    return map;
}

double frequency_threshold(double effective_lexicon_size, double phi_fc) {
    return std::max(2.0, phi_fc * effective_lexicon_size);
}

RetainedTrees retain_frequent_trees(const CandidateMap& candidates, const WeightedLexicon& lexicon,
                                    const Vocabulary& vocab, double phi_fc, unsigned workers) {
    if (!(phi_fc > 0.0)) throw std::invalid_argument("phi_fc must be positive");
    if (candidates.per_lemma.size() != lexicon.size()) {
        throw std::invalid_argument("candidate map does not match the lexicon");
    }

    std::vector<std::vector<EditTree>> built(lexicon.size());
    parallel_for(lexicon.size(), workers, [&](size_t i) {
        const auto& forms = candidates.per_lemma[i];
        built[i].reserve(forms.size());
        for (TypeId w : forms) built[i].push_back(construct_edit_tree(lexicon[i].lemma, vocab.word(w)));
    });

    // Reduce in lemma order so weighted sums are independent of scheduling.
    RetainedTrees result;
    std::unordered_map<EditTree, size_t, EditTreeHash> slot_of;
    auto& stats = result.census.trees;
    for (size_t i = 0; i < lexicon.size(); ++i) {
        const auto& forms = candidates.per_lemma[i];
        for (size_t k = 0; k < forms.size(); ++k) {
            auto [it, inserted] = slot_of.try_emplace(built[i][k], stats.size());
            if (inserted) stats.push_back(TreeStats{built[i][k], {}, 0.0, {}});
            auto& s = stats[it->second];
            s.count += lexicon[i].weight;
            s.support.push_back({i, forms[k]});
        }
    }
    parallel_for(stats.size(), workers, [&](size_t i) { stats[i].key = stats[i].tree.to_string(); });
    std::sort(stats.begin(), stats.end(), [](const TreeStats& a, const TreeStats& b) {
        if (a.count != b.count) return a.count > b.count;
        return a.key < b.key;
    });

    result.threshold = frequency_threshold(lexicon.effective_size(), phi_fc);
    for (const auto& s : stats) {
        if (s.count >= result.threshold) result.trees.push_back(s.tree);
    }
    return result;
}

void write_tree_census(const TreeCensus& census, std::ostream& out) {
    for (const auto& s : census.trees) {
        out << s.key << '\t' << format_double(s.count) << '\t' << s.support.size() << '\n';
    }
}

}  // namespace paradigm
