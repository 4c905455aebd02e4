#include "paradigm/bootstrap.h"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "paradigm/parallel.h"

namespace paradigm {

double new_lemma_threshold(size_t tree_count, double phi_nl) {
    return std::max(3.0, phi_nl * static_cast<double>(tree_count));
}

std::vector<TypeId> discover_new_lemmas(const Vocabulary& vocab, const std::vector<EditTree>& trees,
                                        const WeightedLexicon& lexicon, double phi_nl, unsigned workers) {
    if (trees.empty()) throw std::invalid_argument("cannot discover lemmas without edit trees");
    const double threshold = new_lemma_threshold(trees.size(), phi_nl);
    std::vector<char> found(vocab.size(), 0);
    parallel_for(vocab.size(), workers, [&](size_t id) {
        const Word& word = vocab.word(static_cast<TypeId>(id));
        if (lexicon.contains(word)) return;
        size_t hits = 0;
        for (const auto& tree : trees) {
            auto form = tree.apply(word);
            if (form && vocab.contains(*form)) ++hits;
        }
        found[id] = static_cast<double>(hits) > threshold;
    });
    std::vector<TypeId> out;
    for (TypeId id = 0; id < vocab.size(); ++id) {
        if (found[id]) out.push_back(id);
    }
    return out;
}

DiscoveryState discover(const Vocabulary& vocab, const std::vector<Word>& lemmas,
                        const DiscoverySettings& settings) {
    DiscoveryState state;
    state.lexicon = WeightedLexicon(lemmas);
    state.candidates = find_candidates(state.lexicon, vocab, settings.lambda_p, settings.workers);
    state.retained = retain_frequent_trees(state.candidates, state.lexicon, vocab, settings.phi_fc, settings.workers);
    return state;
}

DiscoveryState bootstrap_iterate(const Vocabulary& vocab, DiscoveryState state, const DiscoverySettings& settings,
                                 int rounds) {
    if (rounds < 0) throw std::invalid_argument("bootstrap rounds must be >= 0");
    if (!(settings.theta_nl > 0.0 && settings.theta_nl <= 1.0)) {
        throw std::invalid_argument("theta_nl must be in (0, 1]");
    }
    for (int r = 0; r < rounds; ++r) {
        BootstrapRound round;
        round.iteration = static_cast<int>(state.rounds.size()) + 1;
        round.weight = lemma_weight(settings.theta_nl, round.iteration);
        if (!state.trees().empty()) {
            for (TypeId id : discover_new_lemmas(vocab, state.trees(), state.lexicon, settings.phi_nl,
                                                 settings.workers)) {
                if (state.lexicon.add_discovered(vocab.word(id), round.iteration, settings.theta_nl)) {
                    round.discovered.push_back(vocab.word(id));
                }
            }
        }
        const bool changed = !round.discovered.empty();
        state.rounds.push_back(std::move(round));
        if (!changed) continue;  // fixed point: candidates and trees are unchanged
        state.candidates = find_candidates(state.lexicon, vocab, settings.lambda_p, settings.workers);
        state.retained =
            retain_frequent_trees(state.candidates, state.lexicon, vocab, settings.phi_fc, settings.workers);
    }
    return state;
}

void write_discovered_lemmas(const DiscoveryState& state, std::ostream& out) {
    for (const auto& entry : state.lexicon.entries()) {
        if (entry.iteration == 0) continue;
        out << entry.iteration << '\t' << unicode::encode(entry.lemma) << '\t' << entry.weight << '\n';
    }
}

}  // namespace paradigm
