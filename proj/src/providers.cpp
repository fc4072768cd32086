#include "groundgate/providers.hpp"

#include <cmath>
#include <fstream>
#include <regex>
#include <unordered_set>

#include "groundgate/text.hpp"

namespace groundgate {

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 14695981039346656037ULL;
    for (char c : bytes) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 1099511628211ULL;
    }
    return hash;
}

// ---------------------------------------------------------------------------
// MockEmbeddingProvider
// ---------------------------------------------------------------------------

EmbeddingVector MockEmbeddingProvider::embed_one(const std::string& text) {
    EmbeddingVector v;
    v.values.assign(kDimension, 0.0);
    const std::string norm = normalize_text(text);
    if (utf8_length(norm) < 3) {
        v.values[0] = 1.0;
        return v;
    }
    // Count vector needs trigram multiplicities, so walk the windows directly.
    std::vector<std::size_t> starts;
    for (std::size_t i = 0; i < norm.size();) {
        starts.push_back(i);
        const auto b = static_cast<unsigned char>(norm[i]);
        if (b < 0x80) i += 1;
        else if ((b & 0xE0) == 0xC0) i += 2;
        else if ((b & 0xF0) == 0xE0) i += 3;
        else i += 4;
    }
    starts.push_back(norm.size());
    const std::size_t cp_count = starts.size() - 1;
    for (std::size_t i = 0; i + 3 <= cp_count; ++i) {
        const std::string_view gram(norm.data() + starts[i], starts[i + 3] - starts[i]);
        v.values[fnv1a64(gram) % kDimension] += 1.0;
    }
    double norm2 = 0.0;
    for (double x : v.values) norm2 += x * x;
    const double scale = 1.0 / std::sqrt(norm2);
    for (double& x : v.values) x *= scale;
    return v;
}

std::vector<EmbeddingVector> MockEmbeddingProvider::embed(
    const std::vector<std::string>& texts) {
    if (texts.empty()) {
        throw ProviderError("embed: texts must be non-empty");
    }
    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    for (const auto& text : texts) {
        out.push_back(embed_one(text));
    }
    return out;
}

// ---------------------------------------------------------------------------
// MockJudgeProvider
// ---------------------------------------------------------------------------

PairwiseJudgment MockJudgeProvider::judge_pair(const std::string& premise,
                                               const std::string& hypothesis) {
    if (premise.empty() || hypothesis.empty()) {
        throw ProviderError("judge_pair: texts must be non-empty");
    }
    const auto premise_tokens = whitespace_tokens(normalize_text(premise));
    const auto hyp_tokens = whitespace_tokens(normalize_text(hypothesis));
    std::unordered_set<std::string> premise_set(premise_tokens.begin(),
                                                premise_tokens.end());
    std::unordered_set<std::string> hyp_set(hyp_tokens.begin(), hyp_tokens.end());
    double shared = 0.0;
    for (const auto& token : hyp_set) {
        if (premise_set.count(token)) shared += 1.0;
    }
    const double r = hyp_set.empty() ? 0.0 : shared / static_cast<double>(hyp_set.size());
    PairwiseJudgment judgment;
    judgment.entail = r;
    judgment.contradict = 1.0 - r;
    judgment.neutral = 0.0;
    judgment.consistency = r;
    return judgment;
}

// ---------------------------------------------------------------------------
// ScriptedChatProvider
// ---------------------------------------------------------------------------

ScriptedChatProvider::ScriptedChatProvider(const nlohmann::json& fixtures) {
    for (auto it = fixtures.begin(); it != fixtures.end(); ++it) {
        for (auto kt = it.value().begin(); kt != it.value().end(); ++kt) {
            if (kt.value().is_string()) {
                add_fixture(it.key(), kt.key(), kt.value().get<std::string>());
            } else {
                add_fixture(it.key(), kt.key(),
                            kt.value().get<std::vector<std::string>>());
            }
        }
    }
}

ScriptedChatProvider ScriptedChatProvider::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ProviderError("cannot open chat fixtures file " + path);
    nlohmann::json j;
    in >> j;
    return ScriptedChatProvider(j);
}

void ScriptedChatProvider::add_fixture(const std::string& template_id,
                                       const std::string& key,
                                       std::string completion) {
    fixtures_[template_id][key] = {std::move(completion)};
}

void ScriptedChatProvider::add_fixture(const std::string& template_id,
                                       const std::string& key,
                                       std::vector<std::string> completions) {
    fixtures_[template_id][key] = std::move(completions);
}

std::pair<std::string, std::string> ScriptedChatProvider::parse_sentinel(
    const std::string& prompt) {
    static const std::regex kSentinel(
        R"(### template: ([A-Za-z0-9_\-]+)@[0-9.]+ key: ([^\n]*))");
    std::smatch match;
    if (!std::regex_search(prompt, match, kSentinel)) {
        throw FixtureMissingError("no fixture for key: prompt has no template sentinel");
    }
    std::string key = match[2].str();
    while (!key.empty() && (key.back() == ' ' || key.back() == '\r')) key.pop_back();
    return {match[1].str(), key};
}

std::string ScriptedChatProvider::chat(const ChatRequest& request) {
    const auto [template_id, key] = parse_sentinel(request.prompt);
    std::lock_guard<std::mutex> lock(mutex_);
    auto tmpl_it = fixtures_.find(template_id);
    if (tmpl_it == fixtures_.end()) {
        throw FixtureMissingError("no fixture for key: template '" + template_id +
                                  "' unknown");
    }
    auto key_it = tmpl_it->second.find(key);
    if (key_it == tmpl_it->second.end()) {
        throw FixtureMissingError("no fixture for key: '" + key + "' under template '" +
                                  template_id + "'");
    }
    const auto& completions = key_it->second;
    std::size_t& cursor = cursor_[{template_id, key}];
    const std::string& completion = completions[cursor % completions.size()];
    ++cursor;
    return completion;
}

// ---------------------------------------------------------------------------
// Caching wrappers
// ---------------------------------------------------------------------------

std::vector<EmbeddingVector> CachingEmbeddingProvider::embed(
    const std::vector<std::string>& texts) {
    std::vector<EmbeddingVector> out(texts.size());
    std::vector<std::string> missing;
    std::vector<std::size_t> missing_at;
    {
        std::lock_guard<std::mutex> lock(mutex_);
        for (std::size_t i = 0; i < texts.size(); ++i) {
            auto it = cache_.find(texts[i]);
            if (it != cache_.end()) {
                out[i] = it->second;
            } else {
                missing.push_back(texts[i]);
                missing_at.push_back(i);
            }
        }
    }
    if (!missing.empty()) {
        auto fresh = inner_.embed(missing);
        std::lock_guard<std::mutex> lock(mutex_);
        for (std::size_t i = 0; i < missing.size(); ++i) {
            cache_[missing[i]] = fresh[i];
            out[missing_at[i]] = std::move(fresh[i]);
        }
    }
    return out;
}

PairwiseJudgment CachingJudgeProvider::judge_pair(const std::string& premise,
                                                  const std::string& hypothesis) {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = cache_.find({premise, hypothesis});
        if (it != cache_.end()) return it->second;
    }
    PairwiseJudgment judgment = inner_.judge_pair(premise, hypothesis);
    std::lock_guard<std::mutex> lock(mutex_);
    cache_[{premise, hypothesis}] = judgment;
    return judgment;
}

std::string CachingChatProvider::chat(const ChatRequest& request) {
    if (request.temperature > 0.0) {
        return inner_.chat(request);
    }
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = cache_.find(request.prompt);
        if (it != cache_.end()) return it->second;
    }
    std::string completion = inner_.chat(request);
    std::lock_guard<std::mutex> lock(mutex_);
    cache_[request.prompt] = completion;
    return completion;
}

}  // namespace groundgate
