#include <facetscope/text.hpp>

#include <algorithm>

namespace facetscope {

namespace {

bool is_space(unsigned char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_word_byte(unsigned char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

}  // namespace

const std::vector<std::string>& default_junk_values() {
    static const std::vector<std::string> values{"no entry", "n/a", "-", "unknown"};
    return values;
}

std::string collapse_whitespace(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    for (unsigned char c : raw) {
        if (is_space(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(static_cast<char>(c));
    }
    return out;
}

std::string case_fold(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        auto c = static_cast<unsigned char>(text[i]);
        if (c >= 'A' && c <= 'Z') {
            out.push_back(static_cast<char>(c + ('a' - 'A')));
        } else if (c == 0xC3 && i + 1 < text.size()) {
            // U+00C0..U+00DE are encoded C3 80..C3 9E; U+00D7 (multiplication sign) is not a letter.
            auto next = static_cast<unsigned char>(text[i + 1]);
            out.push_back(static_cast<char>(c));
            if (next >= 0x80 && next <= 0x9E && next != 0x97) {
                out.push_back(static_cast<char>(next + 0x20));
            } else {
                out.push_back(static_cast<char>(next));
            }
            ++i;
        } else {
            out.push_back(static_cast<char>(c));
        }
    }
    return out;
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && !is_word_byte(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t start = i;
        while (i < text.size() && is_word_byte(static_cast<unsigned char>(text[i]))) ++i;
        if (i > start) tokens.push_back(case_fold(text.substr(start, i - start)));
    }
    return tokens;
}

ValueNormalizer::ValueNormalizer() : ValueNormalizer(default_junk_values()) {}

ValueNormalizer::ValueNormalizer(std::vector<std::string> junk_values) {
    junk_.reserve(junk_values.size());
    for (const auto& v : junk_values) junk_.push_back(case_fold(collapse_whitespace(v)));
    std::sort(junk_.begin(), junk_.end());
    junk_.erase(std::unique(junk_.begin(), junk_.end()), junk_.end());
}

bool ValueNormalizer::is_junk(std::string_view normalized) const {
    return std::binary_search(junk_.begin(), junk_.end(), case_fold(normalized));
}

std::optional<std::string> ValueNormalizer::normalize(std::string_view raw) const {
    std::string value = collapse_whitespace(raw);
    if (value.empty() || is_junk(value)) return std::nullopt;
    return value;
}

}  // namespace facetscope
