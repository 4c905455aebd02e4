#include <chrono>
#include <unordered_map>

#include "doctest.h"
#include "oracles.h"
#include "paradigm/edit_tree.h"

using paradigm::construct_edit_tree;
using paradigm::EditTree;
using paradigm::longest_common_substring;

TEST_CASE("longest common substring matches brute force on the documented pairs") {
    auto check = [](const std::u32string& x, const std::u32string& y) {
        auto got = longest_common_substring(x, y);
        CHECK(got == oracle::brute_force_lcs(x, y));
        return got;
    };
    // "stud"; the strings share no longer run.
    CHECK(check(U"study", U"studied").length == 4);
    CHECK(check(U"abc", U"xyz").length == 0);
    auto polish = check(U"najtrudniejszy", U"trudny");
    CHECK(polish.length == 5);
    CHECK(polish.start_x == 3);
    CHECK(polish.start_y == 0);
}

TEST_CASE("longest common substring tie-breaking agrees with the oracle") {
    oracle::UnicodeStrings gen(11);
    for (int i = 0; i < 2000; ++i) {
        auto x = gen.next(12);
        auto y = gen.next(12);
        REQUIRE(longest_common_substring(x, y) == oracle::brute_force_lcs(x, y));
    }
    // Two equally long candidates: leftmost in x wins.
    auto r = longest_common_substring(U"abxab", U"ab");
    CHECK(r == paradigm::CommonSubstring{2, 0, 0});
    r = longest_common_substring(U"ab", U"abxab");
    CHECK(r == paradigm::CommonSubstring{2, 0, 0});
}

TEST_CASE("edit tree for najtrudniejszy -> trudny") {
    const auto tree = construct_edit_tree(U"najtrudniejszy", U"trudny");
    const auto expected = EditTree::match(
        3, 6, EditTree::replace(U"naj", U""),
        EditTree::match(5, 0, EditTree::replace(U"iejsz", U""), EditTree::replace(U"", U"")));
    CHECK(tree == expected);
    CHECK(tree.to_string() == R"((match 3 6 (rep "naj" "") (match 5 0 (rep "iejsz" "") (rep "" ""))))");

    CHECK(tree.apply(U"najappleiejszs") == std::u32string(U"apples"));
    CHECK_FALSE(tree.apply(U"trudny").has_value());
    CHECK(tree.apply(U"najtrudniejszy") == std::u32string(U"trudny"));
}

TEST_CASE("work/worked and continue/continued give different trees") {
    const auto work = construct_edit_tree(U"work", U"worked");
    const auto cont = construct_edit_tree(U"continue", U"continued");
    CHECK_FALSE(work == cont);
    CHECK(work.to_string() == R"((match 0 0 (rep "" "") (rep "" "ed")))");
    CHECK(cont.to_string() == R"((match 0 0 (rep "" "") (rep "" "d")))");
    CHECK(work.apply(U"walk") == std::u32string(U"walked"));
}

TEST_CASE("identity trees") {
    const auto same = construct_edit_tree(U"a", U"a");
    CHECK(same.apply(U"a") == std::u32string(U"a"));
    CHECK(same == EditTree::identity());
    CHECK(same.hash() == EditTree::identity().hash());
    CHECK(EditTree::identity().apply(U"whatever") == std::u32string(U"whatever"));
    CHECK(EditTree::identity().apply(U"") == std::u32string(U""));
    CHECK(construct_edit_tree(U"", U"") == EditTree::replace(U"", U""));
}

TEST_CASE("replace node applies only to its exact input") {
    const auto t = construct_edit_tree(U"abc", U"xyz");
    CHECK(t == EditTree::replace(U"abc", U"xyz"));
    CHECK(t.apply(U"abc") == std::u32string(U"xyz"));
    CHECK_FALSE(t.apply(U"abd").has_value());
}

TEST_CASE("s-expression escapes quotes and encodes UTF-8") {
    const auto t = EditTree::replace(U"a\"b\\", U"ಠ");
    CHECK(t.to_string() == "(rep \"a\\\"b\\\\\" \"\xe0\xb2\xa0\")");
}

TEST_CASE("round trip apply(construct(x, y), x) == y on random Unicode strings") {
    oracle::UnicodeStrings gen(2024);
    for (int i = 0; i < 5000; ++i) {
        auto x = gen.next(16);
        auto y = gen.next(16);
        const auto tree = construct_edit_tree(x, y);
        auto out = tree.apply(x);
        REQUIRE(out.has_value());
        REQUIRE(*out == y);
        REQUIRE(construct_edit_tree(x, y) == tree);
    }
}

TEST_CASE("structural hashing keys frequency maps") {
    std::unordered_map<EditTree, int, paradigm::EditTreeHash> counts;
    ++counts[construct_edit_tree(U"work", U"worked")];
    ++counts[construct_edit_tree(U"walk", U"walked")];
    ++counts[construct_edit_tree(U"continue", U"continued")];
    CHECK(counts.size() == 2);
    CHECK(counts[construct_edit_tree(U"talk", U"talked")] == 2);
}

TEST_CASE("construct on length-64 strings stays fast") {
    oracle::UnicodeStrings gen(5);
    const auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < 200; ++i) {
        std::u32string x = gen.next(64), y = gen.next(64);
        x.resize(64, U'a');
        y.resize(64, U'b');
        (void)construct_edit_tree(x, y);
    }
    const auto elapsed = std::chrono::steady_clock::now() - start;
    // Smoke bound only; cubic worst case for 64 code points is ~2.6e5 steps.
    CHECK(elapsed < std::chrono::seconds(5));
}
