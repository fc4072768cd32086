/// @file text.hpp
/// @brief Sentence segmentation, text normalization, and character n-grams.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace groundgate {

/// A segmented sentence with byte offsets into its parent text.
/// Spans are non-overlapping, strictly ordered by start, and `text`
/// equals the parent substring at [start, end).
struct SentenceSpan {
    std::size_t index = 0;  // 0-based sentence index
    std::size_t start = 0;  // byte offset, inclusive
    std::size_t end = 0;    // byte offset, exclusive
    std::string text;
};

/// Character n-gram length. 21 is the calibrated production default.
struct NGramConfig {
    int n = 21;
};

using NGramSet = std::unordered_set<std::string>;

/// Lowercase, compose common Latin combining sequences, collapse whitespace
/// runs to single spaces, strip leading/trailing whitespace. Total on any
/// byte sequence (invalid UTF-8 maps to U+FFFD) and idempotent.
std::string normalize_text(std::string_view text);

/// Rule-based splitter: a sentence ends at {. ! ?} followed by whitespace and
/// an uppercase letter or digit, unless the terminator closes a known legal
/// abbreviation (v., U.S., No., Inc., Corp., Stat., Jr., et al., e.g., i.e., §).
/// Whitespace-only input yields an empty list.
std::vector<SentenceSpan> segment_sentences(std::string_view text);

/// All contiguous substrings of `n` codepoints of normalize_text(text).
/// Shorter-than-n input yields the empty set.
NGramSet char_ngram_set(std::string_view text, const NGramConfig& config);

/// N-grams of `text` as-is, without normalization.
NGramSet ngram_set_raw(std::string_view text, int n);

/// Union of char_ngram_set over the units. Units are normalized individually,
/// so no n-gram straddles two units.
NGramSet ngram_pool(const std::vector<std::string>& units, const NGramConfig& config);

/// Split an already-normalized string on single spaces.
std::vector<std::string> whitespace_tokens(std::string_view normalized);

/// Codepoint count of a UTF-8 string (invalid bytes count as one codepoint).
std::size_t utf8_length(std::string_view text);

}  // namespace groundgate
