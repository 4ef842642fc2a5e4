#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace facetscope {

/// Values that carry no information and are dropped from multi-valued fields.
const std::vector<std::string>& default_junk_values();

/// Trims surrounding whitespace and collapses internal whitespace runs to a single space.
std::string collapse_whitespace(std::string_view raw);

/// Case-folds ASCII and the Latin-1 uppercase block (U+00C0..U+00DE) of a UTF-8 string.
std::string case_fold(std::string_view text);

/// Splits on non-alphanumeric ASCII bytes and lower-cases. Bytes >= 0x80 are word characters,
/// so UTF-8 encoded letters stay inside their token.
std::vector<std::string> tokenize(std::string_view text);

class ValueNormalizer {
public:
    ValueNormalizer();
    explicit ValueNormalizer(std::vector<std::string> junk_values);

    /// Whitespace-normalized display form, or nullopt when the value is empty or junk.
    std::optional<std::string> normalize(std::string_view raw) const;

    bool is_junk(std::string_view normalized) const;

    const std::vector<std::string>& junk_values() const { return junk_; }

private:
    std::vector<std::string> junk_;  // case-folded
};

}  // namespace facetscope
