#include <sstream>

#include "doctest.h"
#include "paradigm/corpus_io.h"

using namespace paradigm;

TEST_CASE("load_corpus counts tokens and types") {
    std::istringstream in("he studied\nhe works");
    auto data = parse_corpus(in);
    CHECK(data.corpus.size() == 4);
    CHECK(data.vocab.size() == 3);
    CHECK(data.vocab.count(*data.vocab.find(U"he")) == 2);
    CHECK(data.vocab.total() == 4);
    CHECK(data.corpus.sentence_starts == std::vector<size_t>{0, 2});
}

TEST_CASE("empty corpus") {
    std::istringstream in("");
    auto data = parse_corpus(in);
    CHECK(data.corpus.empty());
    CHECK(data.vocab.empty());
    CHECK(data.corpus.sentence_count() == 0);
}

TEST_CASE("runs of whitespace and blank lines") {
    std::istringstream in("a  b\n\n\t c\r\n");
    auto data = parse_corpus(in);
    REQUIRE(data.corpus.size() == 3);
    CHECK(data.vocab.word(data.corpus.tokens[0]) == U"a");
    CHECK(data.vocab.word(data.corpus.tokens[1]) == U"b");
    CHECK(data.corpus.sentence_starts == std::vector<size_t>{0, 2});
}

TEST_CASE("tokens are lowercased per code point, punctuation kept") {
    std::istringstream in("Ärger ÇA , Σ");
    auto data = parse_corpus(in);
    CHECK(data.vocab.contains(U"ärger"));
    CHECK(data.vocab.contains(U"ça"));
    CHECK(data.vocab.contains(U","));
    CHECK(data.vocab.contains(U"σ"));

    std::istringstream again("Ärger");
    auto raw = parse_corpus(again, LoadOptions{.lowercase = false});
    CHECK(raw.vocab.contains(U"Ärger"));
}

TEST_CASE("invalid UTF-8 is rejected with its line number") {
    std::istringstream in("ok line\nbad \xff byte\n");
    try {
        parse_corpus(in);
        FAIL("expected FormatError");
    } catch (const FormatError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("vocabulary counts equal a recount of the token stream") {
    std::istringstream in("a b a c\nb a\nd");
    auto data = parse_corpus(in);
    std::vector<uint64_t> recount(data.vocab.size(), 0);
    for (auto t : data.corpus.tokens) ++recount[t];
    uint64_t sum = 0;
    for (TypeId t = 0; t < data.vocab.size(); ++t) {
        CHECK(recount[t] == data.vocab.count(t));
        sum += recount[t];
    }
    CHECK(sum == data.corpus.size());
}

TEST_CASE("lexicon loading") {
    std::istringstream a("study\nwork\n");
    CHECK(parse_lexicon(a) == std::vector<Word>{U"study", U"work"});
    std::istringstream b("study\nstudy\n");
    CHECK(parse_lexicon(b) == std::vector<Word>{U"study"});
    std::istringstream c("study\n\nwork");
    CHECK(parse_lexicon(c) == std::vector<Word>{U"study", U"work"});
    std::istringstream empty("");
    CHECK_THROWS(parse_lexicon(empty));
}

TEST_CASE("gold loading") {
    std::istringstream in("study\tstudied\tV;PST\n");
    auto gold = parse_gold(in);
    CHECK(gold.at(U"study").at("V;PST") == U"studied");

    std::istringstream dup("study\tstudied\tV;PST\nstudy\tstudies\tV;PST\n");
    CHECK_THROWS_AS(parse_gold(dup), FormatError);

    std::istringstream empty("");
    CHECK(parse_gold(empty).empty());

    std::istringstream bad("study\tstudied\n");
    try {
        parse_gold(bad);
        FAIL("expected FormatError");
    } catch (const FormatError& e) {
        CHECK(e.line() == 1);
    }
}

TEST_CASE("prediction writing") {
    std::ostringstream one;
    write_predictions(Paradigms{{U"study", {{1, U"studied"}}}}, one);
    CHECK(one.str() == "study\tstudied\t1\n");

    std::ostringstream none;
    write_predictions(Paradigms{}, none);
    CHECK(none.str().empty());

    std::ostringstream two;
    write_predictions(Paradigms{{U"work", {{2, U"works"}, {1, U"worked"}}}, {U"walk", {{1, U"walked"}}}},
                      two);
    CHECK(two.str() == "walk\twalked\t1\nwork\tworked\t1\nwork\tworks\t2\n");
}

TEST_CASE("predictions round trip through the TSV format") {
    Paradigms p{{U"ḱóta", {{1, U"ḱótaa"}, {12, U"x"}}}, {U"b", {{3, U"bé"}}}, {U"ಕ", {{1, U"ಕಾ"}}}};
    std::ostringstream out;
    write_predictions(p, out);
    std::istringstream in(out.str());
    CHECK(parse_predictions(in) == p);
}
