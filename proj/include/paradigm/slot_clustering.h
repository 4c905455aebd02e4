#pragma once

#include <iosfwd>
#include <vector>

#include "paradigm/corpus_io.h"
#include "paradigm/edit_tree.h"
#include "paradigm/lexicon.h"
#include "paradigm/tagger.h"

namespace paradigm {

using FeatureVector = std::vector<double>;

/// One (lemma, form) pair produced by applying a tree: apply(tree, lemma) == form, form in V.
struct Production {
    size_t lemma;  // index into the WeightedLexicon
    TypeId form;
    friend bool operator==(const Production&, const Production&) = default;
};

/// For every tree of Psi, the lexicon entries it maps into V (L_psi) with
/// the forms produced, in lexicon order.
std::vector<std::vector<Production>> apply_trees(const std::vector<EditTree>& trees, const WeightedLexicon& lexicon,
                                                 const Vocabulary& vocab, unsigned workers = 1);

struct WeightedForm {
    TypeId form;
    double weight;  // sum of the weights of the lemmas producing it
};

/// A candidate paradigm slot.
struct SlotState {
    /// Pseudo-slot id, 1..M, assigned in order of `seed`.
    int id = 0;
    /// Index of the lowest tree in the slot; stable under merging.
    size_t seed = 0;
    std::vector<size_t> trees;            // Psi_gamma, indices into Psi, ascending
    std::vector<Production> productions;  // ascending by lemma then form
    std::vector<size_t> lemmas;           // L_gamma, ascending
    std::vector<WeightedForm> forms;      // V_gamma, ascending by form id
    FeatureVector features;
};

/// Builds the slot holding `trees`, deriving L_gamma, V_gamma and the form
/// weights from the per-tree productions. Features are left empty.
SlotState make_slot(const std::vector<size_t>& trees, const std::vector<std::vector<Production>>& productions,
                    const WeightedLexicon& lexicon);

/// Window tag tuple index for every token; -1 where the window would cross a
/// sentence boundary.
class WindowIndex {
public:
    WindowIndex(const Corpus& corpus, const Vocabulary& vocab, const TagSequence& tags, int half_width);

    size_t dimension() const { return dimension_; }
    int half_width() const { return half_width_; }

    /// Positions of every occurrence of a type.
    const std::vector<size_t>& occurrences(TypeId form) const { return occurrences_[form]; }
    long window(size_t position) const { return windows_[position]; }

private:
    int half_width_;
    size_t dimension_;
    std::vector<long> windows_;
    std::vector<std::vector<size_t>> occurrences_;
};

/// r(gamma): for every corpus token in V_gamma whose window lies inside its
/// sentence, add the form's weight at the window's tag tuple.
FeatureVector extract_slot_features(const WindowIndex& index, const SlotState& slot);
FeatureVector extract_slot_features(const Corpus& corpus, const Vocabulary& vocab, const TagSequence& tags,
                                    const SlotState& slot, int half_width);

/// Cosine similarity; 0 when either vector is all zero.
double slot_similarity(const FeatureVector& a, const FeatureVector& b);

struct MergeRecord {
    size_t left;   // seeds of the merged slots
    size_t right;
    double score;
};

struct SlotClustering {
    std::vector<SlotState> slots;  // ascending seed, ids 1..M
    std::vector<MergeRecord> merges;
};

struct ClusteringSettings {
    double lambda_s = 0.3;
    int half_width = 1;  // window size 2d+1 with d = half_width
    unsigned workers = 1;
};

/// Greedy agglomeration: start from one slot per tree and merge the most
/// similar pair of slots with disjoint lemma sets while its score exceeds
/// lambda_s. Ties go to the lowest (seed, seed) pair.
SlotClustering group_surface_changes(const std::vector<EditTree>& trees, const Corpus& corpus,
                                     const Vocabulary& vocab, const TagSequence& tags,
                                     const WeightedLexicon& lexicon, const ClusteringSettings& settings);

/// One line per merge: left<TAB>right<TAB>score.
void write_merge_log(const std::vector<MergeRecord>& merges, std::ostream& out);

}  // namespace paradigm
