#include "groundgate/text.hpp"

#include <array>
#include <cctype>

namespace groundgate {

namespace {

bool is_ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

// Decodes one UTF-8 codepoint at `i`; advances `i`. Invalid bytes decode to
// U+FFFD one byte at a time so the caller never stalls.
char32_t decode_utf8(std::string_view s, std::size_t& i) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    auto cont = [&](std::size_t k) {
        return i + k < s.size() &&
               (static_cast<unsigned char>(s[i + k]) & 0xC0) == 0x80;
    };
    if ((b0 & 0xE0) == 0xC0 && cont(1)) {
        char32_t cp = (b0 & 0x1Fu) << 6 |
                      (static_cast<unsigned char>(s[i + 1]) & 0x3Fu);
        i += 2;
        return cp < 0x80 ? 0xFFFD : cp;
    }
    if ((b0 & 0xF0) == 0xE0 && cont(1) && cont(2)) {
        char32_t cp = (b0 & 0x0Fu) << 12 |
                      (static_cast<unsigned char>(s[i + 1]) & 0x3Fu) << 6 |
                      (static_cast<unsigned char>(s[i + 2]) & 0x3Fu);
        i += 3;
        return cp < 0x800 ? 0xFFFD : cp;
    }
    if ((b0 & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3)) {
        char32_t cp = (b0 & 0x07u) << 18 |
                      (static_cast<unsigned char>(s[i + 1]) & 0x3Fu) << 12 |
                      (static_cast<unsigned char>(s[i + 2]) & 0x3Fu) << 6 |
                      (static_cast<unsigned char>(s[i + 3]) & 0x3Fu);
        i += 4;
        return (cp < 0x10000 || cp > 0x10FFFF) ? 0xFFFD : cp;
    }
    ++i;
    return 0xFFFD;
}

void encode_utf8(char32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

bool is_space_cp(char32_t cp) {
    return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' ||
           cp == '\v' || cp == '\f' || cp == 0xA0;
}

char32_t lower_cp(char32_t cp) {
    if (cp >= 'A' && cp <= 'Z') return cp + 32;
    // Latin-1 uppercase block, skipping the multiplication sign.
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;
    if (cp == 0x178) return 0xFF;  // Ÿ
    return cp;
}

// Canonical composition for lowercase Latin base letters + the common
// combining marks. Returns 0 when the pair has no precomposed form.
char32_t compose_cp(char32_t base, char32_t mark) {
    struct Entry {
        char base;
        char32_t mark;
        char32_t composed;
    };
    static constexpr std::array<Entry, 25> kTable{{
        {'a', 0x300, 0xE0}, {'a', 0x301, 0xE1}, {'a', 0x302, 0xE2},
        {'a', 0x303, 0xE3}, {'a', 0x308, 0xE4}, {'a', 0x30A, 0xE5},
        {'c', 0x327, 0xE7}, {'e', 0x300, 0xE8}, {'e', 0x301, 0xE9},
        {'e', 0x302, 0xEA}, {'e', 0x308, 0xEB}, {'i', 0x300, 0xEC},
        {'i', 0x301, 0xED}, {'i', 0x302, 0xEE}, {'i', 0x308, 0xEF},
        {'n', 0x303, 0xF1}, {'o', 0x300, 0xF2}, {'o', 0x301, 0xF3},
        {'o', 0x302, 0xF4}, {'o', 0x303, 0xF5}, {'o', 0x308, 0xF6},
        {'u', 0x300, 0xF9}, {'u', 0x301, 0xFA}, {'u', 0x302, 0xFB},
        {'u', 0x308, 0xFC},
    }};
    for (const auto& e : kTable) {
        if (static_cast<char32_t>(e.base) == base && e.mark == mark) {
            return e.composed;
        }
    }
    if (base == 'y' && mark == 0x301) return 0xFD;
    if (base == 'y' && mark == 0x308) return 0xFF;
    return 0;
}

// Abbreviations whose trailing period never ends a sentence.
const std::array<std::string_view, 11> kAbbreviations{
    "v.",  "U.S.", "No.",     "Inc.", "Corp.", "Stat.",
    "Jr.", "et al.", "e.g.", "i.e.", "\xC2\xA7",  // §
};

bool ends_with_abbreviation(std::string_view prefix) {
    // `prefix` includes the candidate terminator as its last byte.
    for (std::string_view abbr : kAbbreviations) {
        std::string_view target = prefix;
        if (abbr.back() != '.') {
            target.remove_suffix(1);  // compare against the text before the '.'
        }
        if (target.size() < abbr.size() || !target.ends_with(abbr)) continue;
        const std::size_t before = target.size() - abbr.size();
        if (before == 0 ||
            !std::isalnum(static_cast<unsigned char>(target[before - 1]))) {
            return true;
        }
    }
    return false;
}

}  // namespace

std::string normalize_text(std::string_view text) {
    std::vector<char32_t> cps;
    cps.reserve(text.size());
    for (std::size_t i = 0; i < text.size();) {
        cps.push_back(lower_cp(decode_utf8(text, i)));
    }
    // Compose base + combining mark pairs.
    std::vector<char32_t> composed;
    composed.reserve(cps.size());
    for (std::size_t i = 0; i < cps.size(); ++i) {
        if (!composed.empty() && cps[i] >= 0x300 && cps[i] <= 0x36F) {
            if (char32_t c = compose_cp(composed.back(), cps[i]); c != 0) {
                composed.back() = c;
                continue;
            }
        }
        composed.push_back(cps[i]);
    }
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    bool seen_content = false;
    for (char32_t cp : composed) {
        if (is_space_cp(cp)) {
            pending_space = seen_content;
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        seen_content = true;
        encode_utf8(cp, out);
    }
    return out;
}

std::vector<SentenceSpan> segment_sentences(std::string_view text) {
    std::vector<SentenceSpan> spans;
    const std::size_t n = text.size();

    auto skip_space = [&](std::size_t p) {
        while (p < n && is_ascii_space(text[p])) ++p;
        return p;
    };

    std::size_t start = skip_space(0);
    for (std::size_t p = start; p < n; ++p) {
        const char c = text[p];
        if (c != '.' && c != '!' && c != '?') continue;
        if (p + 1 >= n || !is_ascii_space(text[p + 1])) continue;
        const std::size_t next = skip_space(p + 1);
        if (next >= n) continue;  // trailing terminator, closed below
        const auto nc = static_cast<unsigned char>(text[next]);
        if (!std::isupper(nc) && !std::isdigit(nc)) continue;
        if (c == '.' && ends_with_abbreviation(text.substr(0, p + 1))) continue;

        SentenceSpan span;
        span.index = spans.size();
        span.start = start;
        span.end = p + 1;
        span.text = std::string(text.substr(start, span.end - start));
        spans.push_back(std::move(span));
        start = next;
        p = next - 1;
    }

    // Final sentence: everything from `start` up to the last non-space byte.
    std::size_t end = n;
    while (end > start && is_ascii_space(text[end - 1])) --end;
    if (end > start) {
        SentenceSpan span;
        span.index = spans.size();
        span.start = start;
        span.end = end;
        span.text = std::string(text.substr(start, end - start));
        spans.push_back(std::move(span));
    }
    return spans;
}

NGramSet ngram_set_raw(std::string_view text, int n) {
    NGramSet grams;
    if (n < 1) return grams;
    // Byte offsets of codepoint starts, plus the end sentinel.
    std::vector<std::size_t> starts;
    starts.reserve(text.size() + 1);
    for (std::size_t i = 0; i < text.size();) {
        starts.push_back(i);
        decode_utf8(text, i);
    }
    starts.push_back(text.size());
    const std::size_t cp_count = starts.size() - 1;
    if (cp_count < static_cast<std::size_t>(n)) return grams;
    for (std::size_t i = 0; i + n <= cp_count; ++i) {
        grams.emplace(text.substr(starts[i], starts[i + n] - starts[i]));
    }
    return grams;
}

NGramSet char_ngram_set(std::string_view text, const NGramConfig& config) {
    return ngram_set_raw(normalize_text(text), config.n);
}

NGramSet ngram_pool(const std::vector<std::string>& units, const NGramConfig& config) {
    NGramSet pool;
    for (const auto& unit : units) {
        NGramSet grams = char_ngram_set(unit, config);
        pool.insert(grams.begin(), grams.end());
    }
    return pool;
}

std::vector<std::string> whitespace_tokens(std::string_view normalized) {
    std::vector<std::string> tokens;
    std::size_t pos = 0;
    while (pos < normalized.size()) {
        std::size_t space = normalized.find(' ', pos);
        if (space == std::string_view::npos) space = normalized.size();
        if (space > pos) tokens.emplace_back(normalized.substr(pos, space - pos));
        pos = space + 1;
    }
    return tokens;
}

std::size_t utf8_length(std::string_view text) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < text.size(); ++count) {
        decode_utf8(text, i);
    }
    return count;
}

}  // namespace groundgate
