#include <cmath>
#include <set>
#include <sstream>

#include "doctest.h"
#include "paradigm/random.h"
#include "paradigm/slot_clustering.h"

using namespace paradigm;

namespace {

EditTree append(const char32_t* suffix) {
    return EditTree::match(0, 0, EditTree::replace(U"", U""), EditTree::replace(U"", suffix));
}

CorpusData corpus_from(const std::string& text) {
    std::istringstream in(text);
    return parse_corpus(in);
}

// Tags assigned per word from a lookup; unknown words get `fallback`.
TagSequence tags_by_word(const CorpusData& data, const std::map<Word, uint16_t>& table, uint16_t fallback = 7) {
    TagSequence tags;
    tags.states = 8;
    for (auto t : data.corpus.tokens) {
        auto it = table.find(data.vocab.word(t));
        tags.tags.push_back(it == table.end() ? fallback : it->second);
    }
    return tags;
}

constexpr uint16_t N = 0, V = 1, ADV = 2;

size_t tuple(uint16_t a, uint16_t b, uint16_t c) { return (a * 8u + b) * 8u + c; }

}  // namespace

TEST_CASE("feature increment for stopped in an [N, V, V] window") {
    const auto data = corpus_from("dogs stopped running\n");
    const auto tags = tags_by_word(data, {{U"dogs", N}, {U"stopped", V}, {U"running", V}});
    const WeightedLexicon lexicon({U"stop"});
    const std::vector<EditTree> psi{EditTree::match(0, 0, EditTree::replace(U"", U""), EditTree::replace(U"", U"ped"))};
    const auto productions = apply_trees(psi, lexicon, data.vocab);
    const auto slot = make_slot({0}, productions, lexicon);
    const auto r = extract_slot_features(data.corpus, data.vocab, tags, slot, 1);
    REQUIRE(r.size() == 512);
    CHECK(r[tuple(N, V, V)] == 1.0);
    double total = 0.0;
    for (double x : r) total += x;
    CHECK(total == 1.0);
}

TEST_CASE("windows crossing a sentence boundary are skipped") {
    const auto data = corpus_from("stopped dogs\ndogs stopped\nx stopped y\n");
    const auto tags = tags_by_word(data, {{U"dogs", N}, {U"stopped", V}});
    const WeightedLexicon lexicon({U"stop"});
    const auto productions = apply_trees({append(U"ped")}, lexicon, data.vocab);
    const auto r = extract_slot_features(data.corpus, data.vocab, tags, make_slot({0}, productions, lexicon), 1);
    double total = 0.0;
    for (double x : r) total += x;
    CHECK(total == 1.0);
    CHECK(r[tuple(7, V, 7)] == 1.0);
}

TEST_CASE("slot without attested forms has a zero feature vector") {
    const auto data = corpus_from("a b c\n");
    const auto tags = tags_by_word(data, {});
    const WeightedLexicon lexicon({U"stop"});
    const auto productions = apply_trees({append(U"ped")}, lexicon, data.vocab);
    const auto slot = make_slot({0}, productions, lexicon);
    CHECK(slot.forms.empty());
    const auto r = extract_slot_features(data.corpus, data.vocab, tags, slot, 1);
    for (double x : r) CHECK(x == 0.0);
}

TEST_CASE("a form produced by two lemmas adds both weights") {
    const auto data = corpus_from("p xa q\n");
    const auto tags = tags_by_word(data, {{U"p", 3}, {U"xa", 4}, {U"q", 5}});
    WeightedLexicon lexicon({U"x"});
    lexicon.add_discovered(U"xb", 1, 0.5);
    // x +a -> xa and xb (b -> a) -> xa.
    const std::vector<EditTree> psi{append(U"a"), construct_edit_tree(U"xb", U"xa")};
    const auto productions = apply_trees(psi, lexicon, data.vocab);
    REQUIRE(productions[0].size() == 1);
    REQUIRE(productions[1].size() == 1);
    const auto slot = make_slot({0, 1}, productions, lexicon);
    REQUIRE(slot.forms.size() == 1);
    CHECK(slot.forms[0].weight == 1.5);
    CHECK(slot.lemmas == std::vector<size_t>{0, 1});
    const auto r = extract_slot_features(data.corpus, data.vocab, tags, slot, 1);
    CHECK(r[tuple(3, 4, 5)] == 1.5);
}

TEST_CASE("cosine similarity") {
    CHECK(slot_similarity({1, 2, 3}, {1, 2, 3}) == doctest::Approx(1.0));
    CHECK(slot_similarity({1, 0, 0}, {0, 4, 0}) == 0.0);
    CHECK(slot_similarity({1, 1, 0}, {1, 0, 0}) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(slot_similarity({0, 0, 0}, {1, 0, 0}) == 0.0);
    CHECK(slot_similarity({0, 0}, {0, 0}) == 0.0);
    CHECK_THROWS(slot_similarity({1}, {1, 2}));
}

TEST_CASE("+ed and +d trees with shared contexts merge into one slot") {
    const auto data = corpus_from(
        "he worked hard\nhe walked hard\nshe continued hard\nshe loved hard\n"
        "he works now\nshe loves now\n");
    const auto tags = tags_by_word(data, {{U"he", N}, {U"she", N}, {U"hard", ADV}, {U"now", 3}}, V);
    const WeightedLexicon lexicon({U"work", U"walk", U"continue", U"love"});
    const std::vector<EditTree> psi{append(U"ed"), append(U"d"), append(U"s")};
    ClusteringSettings settings;
    const auto result = group_surface_changes(psi, data.corpus, data.vocab, tags, lexicon, settings);
    REQUIRE(result.slots.size() == 2);
    CHECK(result.slots[0].trees == std::vector<size_t>{0, 1});
    CHECK(result.slots[0].id == 1);
    CHECK(result.slots[1].trees == std::vector<size_t>{2});
    CHECK(result.slots[1].id == 2);
    REQUIRE(result.merges.size() == 1);
    CHECK(result.merges[0].left == 0);
    CHECK(result.merges[0].right == 1);
    CHECK(result.merges[0].score == doctest::Approx(1.0));
}

TEST_CASE("trees attested for the same lemma never merge") {
    const auto data = corpus_from("he worked hard\nhe works hard\n");
    const auto tags = tags_by_word(data, {{U"he", N}, {U"hard", ADV}}, V);
    const WeightedLexicon lexicon({U"work"});
    const auto result = group_surface_changes({append(U"ed"), append(U"s")}, data.corpus, data.vocab, tags,
                                              lexicon, ClusteringSettings{});
    CHECK(result.slots.size() == 2);
    CHECK(result.merges.empty());
}

TEST_CASE("a threshold close to one prevents merging of non-identical contexts") {
    const auto data = corpus_from("he worked hard\nhe walked hard\nshe continued hard\nshe loved now\n");
    const auto tags = tags_by_word(data, {{U"he", N}, {U"she", N}, {U"hard", ADV}, {U"now", 3}}, V);
    const WeightedLexicon lexicon({U"work", U"walk", U"continue", U"love"});
    ClusteringSettings settings;
    settings.lambda_s = 0.999;
    const auto strict =
        group_surface_changes({append(U"ed"), append(U"d")}, data.corpus, data.vocab, tags, lexicon, settings);
    CHECK(strict.slots.size() == 2);
    settings.lambda_s = 0.3;
    const auto loose =
        group_surface_changes({append(U"ed"), append(U"d")}, data.corpus, data.vocab, tags, lexicon, settings);
    CHECK(loose.slots.size() == 1);
}

TEST_CASE("clustering invariants on random inputs") {
    Rng rng(42);
    const char32_t* suffixes[] = {U"a", U"o", U"ta", U"to", U"ni", U"ne", U"ka", U"ke"};
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<Word> lemmas;
        std::string text;
        for (int l = 0; l < 12; ++l) {
            Word stem;
            for (int c = 0; c < 4; ++c) stem.push_back(U"bdfgklmprs"[rng.below(10)]);
            stem += U"u" + std::u32string(1, U'0' + static_cast<char32_t>(l % 10)) + (l >= 10 ? U"x" : U"");
            lemmas.push_back(stem);
            for (auto* s : suffixes) {
                if (rng.uniform() < 0.5) continue;
                for (int rep = 0; rep < 3; ++rep) {
                    text += "w" + std::to_string(rng.below(4)) + " " + unicode::encode(stem + s) + " z" +
                            std::to_string(rng.below(3)) + "\n";
                }
            }
        }
        const auto data = corpus_from(text);
        TagSequence tags;
        tags.states = 8;
        for (size_t i = 0; i < data.corpus.size(); ++i) tags.tags.push_back(static_cast<uint16_t>(rng.below(8)));
        const WeightedLexicon lexicon(lemmas);
        std::vector<EditTree> psi;
        for (auto* s : suffixes) psi.push_back(append(s));

        std::vector<size_t> sizes;
        for (double lambda : {0.05, 0.3, 0.6, 0.9}) {
            ClusteringSettings settings;
            settings.lambda_s = lambda;
            const auto result = group_surface_changes(psi, data.corpus, data.vocab, tags, lexicon, settings);
            sizes.push_back(result.slots.size());

            // Partition of Psi.
            std::multiset<size_t> seen;
            for (const auto& slot : result.slots) seen.insert(slot.trees.begin(), slot.trees.end());
            CHECK(seen.size() == psi.size());
            for (size_t t = 0; t < psi.size(); ++t) CHECK(seen.count(t) == 1);

            // At most one attested form per lemma and slot.
            for (const auto& slot : result.slots) {
                for (const auto& lemma : lemmas) {
                    std::set<Word> forms;
                    for (size_t t : slot.trees) {
                        auto f = psi[t].apply(lemma);
                        if (f && data.vocab.contains(*f)) forms.insert(*f);
                    }
                    CHECK(forms.size() <= 1);
                }
            }
            for (const auto& m : result.merges) CHECK(m.score > lambda);
            CHECK(result.slots.size() + result.merges.size() == psi.size());
        }
        for (size_t i = 1; i < sizes.size(); ++i) CHECK(sizes[i - 1] <= sizes[i]);
    }
}

TEST_CASE("clustering is independent of the worker count") {
    const auto data = corpus_from(
        "he worked hard\nhe walked hard\nshe continued hard\nshe loved hard\nhe works now\nshe loves now\n");
    const auto tags = tags_by_word(data, {{U"he", N}, {U"she", N}, {U"hard", ADV}, {U"now", 3}}, V);
    const WeightedLexicon lexicon({U"work", U"walk", U"continue", U"love"});
    const std::vector<EditTree> psi{append(U"ed"), append(U"d"), append(U"s")};
    ClusteringSettings one, many;
    many.workers = 8;
    const auto a = group_surface_changes(psi, data.corpus, data.vocab, tags, lexicon, one);
    const auto b = group_surface_changes(psi, data.corpus, data.vocab, tags, lexicon, many);
    std::ostringstream la, lb;
    write_merge_log(a.merges, la);
    write_merge_log(b.merges, lb);
    CHECK(la.str() == lb.str());
    CHECK(la.str() == "0\t1\t1\n");
    REQUIRE(a.slots.size() == b.slots.size());
    for (size_t i = 0; i < a.slots.size(); ++i) CHECK(a.slots[i].features == b.slots[i].features);
}
