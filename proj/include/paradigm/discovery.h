#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "paradigm/corpus_io.h"
#include "paradigm/edit_tree.h"
#include "paradigm/lexicon.h"

namespace paradigm {

/// Paradigm candidates per lexicon entry, aligned with WeightedLexicon
/// indices. Candidates are vocabulary ids in ascending order.
struct CandidateMap {
    std::vector<std::vector<TypeId>> per_lemma;

    size_t total() const;
    friend bool operator==(const CandidateMap&, const CandidateMap&) = default;
};

/// w is a candidate for lemma l iff |LCS(l, w)| / |l| > lambda_p.
CandidateMap find_candidates(const WeightedLexicon& lexicon, const Vocabulary& vocab, double lambda_p,
                             unsigned workers = 1);

bool is_candidate(std::u32string_view lemma, std::u32string_view word, double lambda_p);

/// max{2, phi_fc * effective_lexicon_size}.
double frequency_threshold(double effective_lexicon_size, double phi_fc);

struct TreeSupport {
    size_t lemma;  // index into the WeightedLexicon
    TypeId form;
};

struct TreeStats {
    EditTree tree;
    std::string key;  // s-expression, used for ordering and dumps
    double count = 0.0;  // weighted n_psi
    std::vector<TreeSupport> support;
};

/// Every tree built from a (lemma, candidate) pair, ordered by descending
/// weighted count, then by serialized form.
struct TreeCensus {
    std::vector<TreeStats> trees;
};

struct RetainedTrees {
    /// Psi, in census order.
    std::vector<EditTree> trees;
    TreeCensus census;
    double threshold = 0.0;

    bool same_trees(const RetainedTrees& other) const { return trees == other.trees; }
};

RetainedTrees retain_frequent_trees(const CandidateMap& candidates, const WeightedLexicon& lexicon,
                                    const Vocabulary& vocab, double phi_fc, unsigned workers = 1);

/// Diagnostics: tree<TAB>n_psi<TAB>support-count per census entry.
void write_tree_census(const TreeCensus& census, std::ostream& out);

}  // namespace paradigm
