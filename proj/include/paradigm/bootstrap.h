#pragma once

#include <iosfwd>
#include <vector>

#include "paradigm/corpus_io.h"
#include "paradigm/discovery.h"
#include "paradigm/lexicon.h"

namespace paradigm {

struct DiscoverySettings {
    double lambda_p = 0.5;
    double phi_fc = 0.05;
    double phi_nl = 0.2;
    double theta_nl = 0.5;
    unsigned workers = 1;
};

/// max{3, phi_nl * |Psi|}.
double new_lemma_threshold(size_t tree_count, double phi_nl);

/// Words of V outside the lexicon for which more than lambda_nl(|Psi|)
/// trees of Psi produce another word of V. Returned in vocabulary order.
std::vector<TypeId> discover_new_lemmas(const Vocabulary& vocab, const std::vector<EditTree>& trees,
                                        const WeightedLexicon& lexicon, double phi_nl,
                                        unsigned workers = 1);

struct BootstrapRound {
    int iteration = 0;
    double weight = 0.0;
    std::vector<Word> discovered;
};

/// Lexicon, candidates and retained trees after some number of rounds.
struct DiscoveryState {
    WeightedLexicon lexicon;
    CandidateMap candidates;
    RetainedTrees retained;
    std::vector<BootstrapRound> rounds;

    const std::vector<EditTree>& trees() const { return retained.trees; }
};

/// Candidate discovery and tree retention on the given lemmas only.
DiscoveryState discover(const Vocabulary& vocab, const std::vector<Word>& lemmas,
                        const DiscoverySettings& settings);

/// Runs `rounds` more bootstrap rounds on top of `state`. Each round adds
/// the discovered lemmas with weight theta_nl^it and recomputes candidates
/// and trees on the enlarged lexicon. rounds == 0 returns the state as is.
DiscoveryState bootstrap_iterate(const Vocabulary& vocab, DiscoveryState state, const DiscoverySettings& settings,
                                 int rounds);

/// Diagnostics: iteration<TAB>lemma<TAB>weight for every discovered lemma.
void write_discovered_lemmas(const DiscoveryState& state, std::ostream& out);

}  // namespace paradigm
