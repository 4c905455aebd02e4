#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "paradigm/unicode.h"

namespace paradigm {

struct CommonSubstring {
    size_t length = 0;
    size_t start_x = 0;
    size_t start_y = 0;

    friend bool operator==(const CommonSubstring&, const CommonSubstring&) = default;
};

/// Longest contiguous common substring of x and y. Ties go to the smallest
/// start in x, then the smallest start in y. length == 0 when the strings
/// share no code point.
CommonSubstring longest_common_substring(std::u32string_view x, std::u32string_view y);

/// A surface form change: either Replace(old, new), which maps exactly `old`
/// to `new`, or Match(i, j, left, right), which keeps the middle of its
/// input and rewrites the first i and last j code points with the subtrees.
/// Trees are immutable values with structural equality and hashing.
class EditTree {
public:
    /// The tree that applies as identity on every string.
    EditTree();

    static EditTree replace(Word old_value, Word new_value);
    static EditTree match(size_t prefix_len, size_t suffix_len, EditTree left, EditTree right);
    static EditTree identity() { return EditTree(); }

    bool is_replace() const;
    bool is_match() const { return !is_replace(); }

    // Replace accessors.
    const Word& old_value() const;
    const Word& new_value() const;

    // Match accessors.
    size_t prefix_len() const;
    size_t suffix_len() const;
    const EditTree& left() const;
    const EditTree& right() const;

    /// Applies the tree; nullopt means the tree is not applicable to `input`.
    std::optional<Word> apply(std::u32string_view input) const;

    /// S-expression form, e.g. (match 3 6 (rep "naj" "") (rep "" "")).
    std::string to_string() const;

    size_t hash() const;

    friend bool operator==(const EditTree& a, const EditTree& b);

private:
    struct Node;
    explicit EditTree(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// Builds the edit tree mapping x to y by recursive LCS splitting.
EditTree construct_edit_tree(std::u32string_view x, std::u32string_view y);

struct EditTreeHash {
    size_t operator()(const EditTree& t) const { return t.hash(); }
};

}  // namespace paradigm
