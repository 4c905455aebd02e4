#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace paradigm {

/// A word as a sequence of Unicode scalar values. All length and
/// substring arithmetic in the library is done on this type.
using Word = std::u32string;

namespace unicode {

/// Decodes UTF-8; returns nullopt on malformed input or surrogates.
std::optional<Word> decode(std::string_view utf8);

/// Decodes UTF-8 or throws std::runtime_error.
Word decode_or_throw(std::string_view utf8);

std::string encode(std::u32string_view word);

/// Simple (one-to-one) lowercase mapping per code point.
Word to_lower(std::u32string_view word);

}  // namespace unicode
}  // namespace paradigm
