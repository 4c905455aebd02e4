#include "paradigm/unicode.h"

#include <stdexcept>

#include <unicode/uchar.h>
#include <unicode/utf8.h>

namespace paradigm::unicode {

std::optional<Word> decode(std::string_view utf8) {
    Word out;
    out.reserve(utf8.size());
    const auto* bytes = reinterpret_cast<const uint8_t*>(utf8.data());
    const int32_t length = static_cast<int32_t>(utf8.size());
    int32_t offset = 0;
    while (offset < length) {
        UChar32 c;
        U8_NEXT(bytes, offset, length, c);
        if (c < 0) return std::nullopt;
        out.push_back(static_cast<char32_t>(c));
    }
    return out;
}

Word decode_or_throw(std::string_view utf8) {
    auto decoded = decode(utf8);
    if (!decoded) throw std::runtime_error("invalid UTF-8");
    return std::move(*decoded);
}

std::string encode(std::u32string_view word) {
    std::string out;
    out.reserve(word.size());
    for (char32_t c : word) {
        uint8_t buffer[U8_MAX_LENGTH];
        int32_t n = 0;
        UBool error = false;
        U8_APPEND(buffer, n, U8_MAX_LENGTH, static_cast<UChar32>(c), error);
        if (error) throw std::runtime_error("cannot encode code point as UTF-8");
        out.append(reinterpret_cast<const char*>(buffer), static_cast<size_t>(n));
    }
    return out;
}

Word to_lower(std::u32string_view word) {
    Word out(word);
    for (auto& c : out) c = static_cast<char32_t>(u_tolower(static_cast<UChar32>(c)));
    return out;
}

}  // namespace paradigm::unicode
