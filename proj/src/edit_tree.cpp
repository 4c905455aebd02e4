#include "paradigm/edit_tree.h"

#include <functional>
#include <stdexcept>
#include <vector>

namespace paradigm {

struct EditTree::Node {
    bool is_replace = true;
    Word old_value;
    Word new_value;
    size_t prefix_len = 0;
    size_t suffix_len = 0;
    std::optional<EditTree> left;
    std::optional<EditTree> right;
    size_t hash = 0;
};

namespace {

size_t mix(size_t seed, size_t value) {
    // boost::hash_combine with a 64-bit constant.
    return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 12) + (seed >> 4));
}

void append_quoted(std::string& out, const Word& w) {
    out.push_back('"');
    for (char c : unicode::encode(w)) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
}

}  // namespace

CommonSubstring longest_common_substring(std::u32string_view x, std::u32string_view y) {
    CommonSubstring best;
    if (x.empty() || y.empty()) return best;
    // run[j + 1] = length of the common suffix of x[..i] and y[..j].
    std::vector<size_t> prev(y.size() + 1, 0), run(y.size() + 1, 0);
    for (size_t i = 0; i < x.size(); ++i) {
        for (size_t j = 0; j < y.size(); ++j) {
            run[j + 1] = x[i] == y[j] ? prev[j] + 1 : 0;
            const size_t len = run[j + 1];
            if (len == 0) continue;
            const size_t sx = i + 1 - len;
            const size_t sy = j + 1 - len;
            if (len > best.length ||
                (len == best.length && (sx < best.start_x || (sx == best.start_x && sy < best.start_y)))) {
                best = {len, sx, sy};
            }
        }
        std::swap(prev, run);
    }
    return best;
}

EditTree::EditTree() {
    static const std::shared_ptr<const Node> identity = [] {
        auto empty = std::make_shared<Node>();
        empty->hash = mix(mix(1, std::hash<std::u32string>{}(U"")), std::hash<std::u32string>{}(U""));
        EditTree leaf{std::shared_ptr<const Node>(empty)};
        auto node = std::make_shared<Node>();
        node->is_replace = false;
        node->left = leaf;
        node->right = leaf;
        node->hash = mix(mix(mix(mix(2, 0), 0), empty->hash), empty->hash);
        return std::shared_ptr<const Node>(node);
    }();
    node_ = identity;
}

EditTree EditTree::replace(Word old_value, Word new_value) {
    auto node = std::make_shared<Node>();
    node->hash = mix(mix(1, std::hash<std::u32string>{}(old_value)), std::hash<std::u32string>{}(new_value));
    node->old_value = std::move(old_value);
    node->new_value = std::move(new_value);
    return EditTree(std::shared_ptr<const Node>(node));
}

EditTree EditTree::match(size_t prefix_len, size_t suffix_len, EditTree left, EditTree right) {
    auto node = std::make_shared<Node>();
    node->is_replace = false;
    node->prefix_len = prefix_len;
    node->suffix_len = suffix_len;
    node->hash = mix(mix(mix(mix(2, prefix_len), suffix_len), left.hash()), right.hash());
    node->left = std::move(left);
    node->right = std::move(right);
    return EditTree(std::shared_ptr<const Node>(node));
}

bool EditTree::is_replace() const { return node_->is_replace; }

const Word& EditTree::old_value() const {
    if (!is_replace()) throw std::logic_error("old_value() on a match node");
    return node_->old_value;
}

const Word& EditTree::new_value() const {
    if (!is_replace()) throw std::logic_error("new_value() on a match node");
    return node_->new_value;
}

size_t EditTree::prefix_len() const { return node_->prefix_len; }
size_t EditTree::suffix_len() const { return node_->suffix_len; }

const EditTree& EditTree::left() const {
    if (is_replace()) throw std::logic_error("left() on a replace node");
    return *node_->left;
}

const EditTree& EditTree::right() const {
    if (is_replace()) throw std::logic_error("right() on a replace node");
    return *node_->right;
}

size_t EditTree::hash() const { return node_->hash; }

bool operator==(const EditTree& a, const EditTree& b) {
    if (a.node_ == b.node_) return true;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    if (x.hash != y.hash || x.is_replace != y.is_replace) return false;
    if (x.is_replace) return x.old_value == y.old_value && x.new_value == y.new_value;
    return x.prefix_len == y.prefix_len && x.suffix_len == y.suffix_len && *x.left == *y.left &&
           *x.right == *y.right;
}

std::optional<Word> EditTree::apply(std::u32string_view input) const {
    const Node& n = *node_;
    if (n.is_replace) {
        if (input != n.old_value) return std::nullopt;
        return n.new_value;
    }
    if (input.size() < n.prefix_len + n.suffix_len) return std::nullopt;
    auto head = n.left->apply(input.substr(0, n.prefix_len));
    if (!head) return std::nullopt;
    auto tail = n.right->apply(input.substr(input.size() - n.suffix_len));
    if (!tail) return std::nullopt;
    Word out = std::move(*head);
    out.append(input.substr(n.prefix_len, input.size() - n.prefix_len - n.suffix_len));
    out.append(*tail);
    return out;
}

std::string EditTree::to_string() const {
    const Node& n = *node_;
    std::string out;
    if (n.is_replace) {
        out = "(rep ";
        append_quoted(out, n.old_value);
        out.push_back(' ');
        append_quoted(out, n.new_value);
        out.push_back(')');
        return out;
    }
    out = "(match " + std::to_string(n.prefix_len) + ' ' + std::to_string(n.suffix_len) + ' ';
    out += n.left->to_string();
    out.push_back(' ');
    out += n.right->to_string();
    out.push_back(')');
    return out;
}

EditTree construct_edit_tree(std::u32string_view x, std::u32string_view y) {
    const auto lcs = longest_common_substring(x, y);
    if (lcs.length == 0) return EditTree::replace(Word(x), Word(y));
    const size_t x_tail = lcs.start_x + lcs.length;
    const size_t y_tail = lcs.start_y + lcs.length;
    return EditTree::match(lcs.start_x, x.size() - x_tail,
                           construct_edit_tree(x.substr(0, lcs.start_x), y.substr(0, lcs.start_y)),
                           construct_edit_tree(x.substr(x_tail), y.substr(y_tail)));
}

}  // namespace paradigm
