#include "paradigm/slot_clustering.h"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "paradigm/format.h"
#include "paradigm/parallel.h"

namespace paradigm {

namespace {

constexpr size_t kMaxFeatureDimension = size_t{1} << 24;

bool disjoint_sorted(const std::vector<size_t>& a, const std::vector<size_t>& b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i == *j) return false;
        if (*i < *j) ++i; else ++j;
    }
    return true;
}

}  // namespace

std::vector<std::vector<Production>> apply_trees(const std::vector<EditTree>& trees, const WeightedLexicon& lexicon,
                                                 const Vocabulary& vocab, unsigned workers) {
    std::vector<std::vector<Production>> out(trees.size());
    parallel_for(trees.size(), workers, [&](size_t t) {
        for (size_t l = 0; l < lexicon.size(); ++l) {
            auto form = trees[t].apply(lexicon[l].lemma);
            if (!form) continue;
            if (auto id = vocab.find(*form)) out[t].push_back({l, *id});
        }
    });
    return out;
}

SlotState make_slot(const std::vector<size_t>& trees, const std::vector<std::vector<Production>>& productions,
                    const WeightedLexicon& lexicon) {
    SlotState slot;
    slot.trees = trees;
    std::sort(slot.trees.begin(), slot.trees.end());
    slot.seed = slot.trees.empty() ? 0 : slot.trees.front();
    for (size_t t : slot.trees) {
        slot.productions.insert(slot.productions.end(), productions[t].begin(), productions[t].end());
    }
    std::sort(slot.productions.begin(), slot.productions.end(), [](const Production& a, const Production& b) {
        return a.lemma != b.lemma ? a.lemma < b.lemma : a.form < b.form;
    });
    slot.productions.erase(std::unique(slot.productions.begin(), slot.productions.end()), slot.productions.end());

    for (const auto& p : slot.productions) {
        if (slot.lemmas.empty() || slot.lemmas.back() != p.lemma) slot.lemmas.push_back(p.lemma);
    }

    // Each producing lemma contributes its weight once per form, summed in
    // ascending lemma order.
    std::vector<Production> by_form = slot.productions;
    std::stable_sort(by_form.begin(), by_form.end(),
                     [](const Production& a, const Production& b) { return a.form < b.form; });
    for (const auto& p : by_form) {
        if (slot.forms.empty() || slot.forms.back().form != p.form) slot.forms.push_back({p.form, 0.0});
        slot.forms.back().weight += lexicon[p.lemma].weight;
    }
    return slot;
}

WindowIndex::WindowIndex(const Corpus& corpus, const Vocabulary& vocab, const TagSequence& tags, int half_width)
    : half_width_(half_width) {
    if (half_width < 0) throw std::invalid_argument("window half-width must be >= 0");
    if (tags.tags.size() != corpus.size()) throw std::invalid_argument("tag sequence does not match corpus");
    const size_t K = tags.states;
    if (K == 0) throw std::invalid_argument("tag set is empty");
    dimension_ = 1;
    for (int i = 0; i < 2 * half_width + 1; ++i) {
        dimension_ *= K;
        if (dimension_ > kMaxFeatureDimension) throw std::invalid_argument("feature window too large");
    }

    windows_.assign(corpus.size(), -1);
    const size_t d = static_cast<size_t>(half_width);
    for (size_t s = 0; s < corpus.sentence_count(); ++s) {
        const size_t begin = corpus.sentence_begin(s);
        const size_t end = corpus.sentence_end(s);
        for (size_t i = begin + d; i + d < end; ++i) {
            long code = 0;
            for (size_t p = i - d; p <= i + d; ++p) code = code * static_cast<long>(K) + tags.tags[p];
            windows_[i] = code;
        }
    }
    occurrences_.resize(vocab.size());
    for (size_t i = 0; i < corpus.size(); ++i) occurrences_[corpus.tokens[i]].push_back(i);
}

FeatureVector extract_slot_features(const WindowIndex& index, const SlotState& slot) {
    FeatureVector r(index.dimension(), 0.0);
    for (const auto& f : slot.forms) {
        for (size_t pos : index.occurrences(f.form)) {
            const long w = index.window(pos);
            if (w >= 0) r[static_cast<size_t>(w)] += f.weight;
        }
    }
    return r;
}

FeatureVector extract_slot_features(const Corpus& corpus, const Vocabulary& vocab, const TagSequence& tags,
                                    const SlotState& slot, int half_width) {
    return extract_slot_features(WindowIndex(corpus, vocab, tags, half_width), slot);
}

double slot_similarity(const FeatureVector& a, const FeatureVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("feature dimensions differ");
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
}

SlotClustering group_surface_changes(const std::vector<EditTree>& trees, const Corpus& corpus,
                                     const Vocabulary& vocab, const TagSequence& tags,
                                     const WeightedLexicon& lexicon, const ClusteringSettings& settings) {
    if (!(settings.lambda_s > 0.0 && settings.lambda_s < 1.0)) {
        throw std::invalid_argument("lambda_s must be in (0, 1)");
    }
    const WindowIndex index(corpus, vocab, tags, settings.half_width);
    const auto productions = apply_trees(trees, lexicon, vocab, settings.workers);

    const size_t n = trees.size();
    std::vector<SlotState> slots(n);
    parallel_for(n, settings.workers, [&](size_t t) {
        slots[t] = make_slot({t}, productions, lexicon);
        slots[t].features = extract_slot_features(index, slots[t]);
    });

    std::vector<char> active(n, 1);
    std::vector<double> score(n * n, 0.0);
    std::vector<char> disjoint(n * n, 0);
    auto refresh_row = [&](size_t a) {
        parallel_for(n, settings.workers, [&](size_t b) {
            if (b == a || !active[b]) return;
            const double s = slot_similarity(slots[a].features, slots[b].features);
            const char d = disjoint_sorted(slots[a].lemmas, slots[b].lemmas);
            score[a * n + b] = score[b * n + a] = s;
            disjoint[a * n + b] = disjoint[b * n + a] = d;
        });
    };
    parallel_for(n, settings.workers, [&](size_t a) {
        for (size_t b = a + 1; b < n; ++b) {
            score[a * n + b] = score[b * n + a] = slot_similarity(slots[a].features, slots[b].features);
            disjoint[a * n + b] = disjoint[b * n + a] = disjoint_sorted(slots[a].lemmas, slots[b].lemmas);
        }
    });

    SlotClustering result;
    while (true) {
        bool found = false;
        size_t best_a = 0, best_b = 0;
        double best = 0.0;
        for (size_t a = 0; a < n; ++a) {
            if (!active[a]) continue;
            for (size_t b = a + 1; b < n; ++b) {
                if (!active[b] || !disjoint[a * n + b]) continue;
                const double s = score[a * n + b];
                if (!found || s > best) {
                    found = true;
                    best = s;
                    best_a = a;
                    best_b = b;
                }
            }
        }
        if (!found || !(best > settings.lambda_s)) break;

        result.merges.push_back({best_a, best_b, best});
        auto merged_trees = slots[best_a].trees;
        merged_trees.insert(merged_trees.end(), slots[best_b].trees.begin(), slots[best_b].trees.end());
        slots[best_a] = make_slot(merged_trees, productions, lexicon);
        slots[best_a].features = extract_slot_features(index, slots[best_a]);
        active[best_b] = 0;
        slots[best_b] = SlotState{};
        refresh_row(best_a);
    }

    for (size_t a = 0; a < n; ++a) {
        if (!active[a]) continue;
        slots[a].id = static_cast<int>(result.slots.size()) + 1;
        result.slots.push_back(std::move(slots[a]));
    }
    return result;
}

void write_merge_log(const std::vector<MergeRecord>& merges, std::ostream& out) {
    for (const auto& m : merges) out << m.left << '\t' << m.right << '\t' << format_double(m.score) << '\n';
}

}  // namespace paradigm
