/// @file providers.hpp
/// @brief Model access behind three narrow interfaces — embeddings, pairwise
/// judgments, chat — each with a deterministic mock. HTTP implementations
/// live in http_providers.hpp.

#pragma once

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

namespace groundgate {

struct EmbeddingVector {
    std::vector<double> values;

    int dimension() const { return static_cast<int>(values.size()); }
};

/// Entailment-style scores. entail/neutral/contradict sum to 1 for
/// probabilistic judges; consistency is the scalar alternative for judges
/// that emit a single score.
struct PairwiseJudgment {
    double entail = 0.0;
    double neutral = 0.0;
    double contradict = 0.0;
    double consistency = 0.0;
};

struct ChatRequest {
    std::string prompt;
    double temperature = 0.0;
    int max_tokens = 1024;
    std::optional<long long> seed;
};

class ProviderError : public std::runtime_error {
  public:
    ProviderError(const std::string& message, bool retryable = false)
        : std::runtime_error(message), retryable_(retryable) {}

    bool retryable() const { return retryable_; }

  private:
    bool retryable_;
};

/// Remote signaled a rate limit; distinct from generic transport failure.
class RateLimitedError : public ProviderError {
  public:
    explicit RateLimitedError(const std::string& message)
        : ProviderError(message, true) {}
};

/// Scripted mock has no canned completion for the request; a test
/// configuration error, never a data outcome.
class FixtureMissingError : public ProviderError {
  public:
    explicit FixtureMissingError(const std::string& message)
        : ProviderError(message, false) {}
};

class EmbeddingProvider {
  public:
    virtual ~EmbeddingProvider() = default;

    /// One vector per input, same order. Same text yields the same vector
    /// within a provider instance.
    virtual std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) = 0;
    virtual int dimension() const = 0;
    /// True when vectors can contain negative components (cosine then needs
    /// the [-1,1] -> [0,1] remap for detector scoring).
    virtual bool signed_components() const { return true; }
};

class JudgeProvider {
  public:
    virtual ~JudgeProvider() = default;
    virtual PairwiseJudgment judge_pair(const std::string& premise,
                                        const std::string& hypothesis) = 0;
};

class ChatProvider {
  public:
    virtual ~ChatProvider() = default;
    virtual std::string chat(const ChatRequest& request) = 0;
};

// ---------------------------------------------------------------------------
// Deterministic mocks
// ---------------------------------------------------------------------------

/// Normative mock embedding: count vector of character trigrams of the
/// normalized text, each trigram hashed with FNV-1a 64-bit into one of 256
/// buckets, then L2-normalized. Texts shorter than 3 codepoints map to the
/// unit vector on bucket 0.
class MockEmbeddingProvider : public EmbeddingProvider {
  public:
    static constexpr int kDimension = 256;

    std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) override;
    int dimension() const override { return kDimension; }
    bool signed_components() const override { return false; }

    static EmbeddingVector embed_one(const std::string& text);
};

/// Normative mock judge: r = |shared distinct tokens| / |distinct hypothesis
/// tokens| over whitespace tokens of the normalized texts; entail = r,
/// contradict = 1 - r, neutral = 0, consistency = r.
class MockJudgeProvider : public JudgeProvider {
  public:
    PairwiseJudgment judge_pair(const std::string& premise,
                                const std::string& hypothesis) override;
};

/// Chat mock backed by canned completions keyed by (template id, key), both
/// read from the sentinel line every shipped template puts first:
///   ### template: <id>@<semver> key: <key>
/// Fixture values may be a single string or an array cycled per call.
class ScriptedChatProvider : public ChatProvider {
  public:
    ScriptedChatProvider() = default;
    explicit ScriptedChatProvider(const nlohmann::json& fixtures);
    static ScriptedChatProvider from_file(const std::string& path);

    void add_fixture(const std::string& template_id, const std::string& key,
                     std::string completion);
    void add_fixture(const std::string& template_id, const std::string& key,
                     std::vector<std::string> completions);

    std::string chat(const ChatRequest& request) override;

    /// Parses "<id>@<semver>" and key out of the sentinel line; throws
    /// FixtureMissingError when the prompt has none.
    static std::pair<std::string, std::string> parse_sentinel(const std::string& prompt);

  private:
    // template id (without version) -> key -> completions
    std::map<std::string, std::map<std::string, std::vector<std::string>>> fixtures_;
    std::map<std::pair<std::string, std::string>, std::size_t> cursor_;
    std::mutex mutex_;
};

// ---------------------------------------------------------------------------
// Wrappers
// ---------------------------------------------------------------------------

/// Thread-safe exact-input cache; on by default for embed/judge per the
/// provider contract. The benchmark's latency pass bypasses these.
class CachingEmbeddingProvider : public EmbeddingProvider {
  public:
    explicit CachingEmbeddingProvider(EmbeddingProvider& inner) : inner_(inner) {}

    std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) override;
    int dimension() const override { return inner_.dimension(); }
    bool signed_components() const override { return inner_.signed_components(); }

  private:
    EmbeddingProvider& inner_;
    std::unordered_map<std::string, EmbeddingVector> cache_;
    std::mutex mutex_;
};

class CachingJudgeProvider : public JudgeProvider {
  public:
    explicit CachingJudgeProvider(JudgeProvider& inner) : inner_(inner) {}

    PairwiseJudgment judge_pair(const std::string& premise,
                                const std::string& hypothesis) override;

  private:
    JudgeProvider& inner_;
    std::map<std::pair<std::string, std::string>, PairwiseJudgment> cache_;
    std::mutex mutex_;
};

/// Caches only temperature-0 requests; sampling calls pass through.
class CachingChatProvider : public ChatProvider {
  public:
    explicit CachingChatProvider(ChatProvider& inner) : inner_(inner) {}

    std::string chat(const ChatRequest& request) override;

  private:
    ChatProvider& inner_;
    std::unordered_map<std::string, std::string> cache_;
    std::mutex mutex_;
};

/// Call-count instrumentation for contract tests.
class CountingChatProvider : public ChatProvider {
  public:
    explicit CountingChatProvider(ChatProvider& inner) : inner_(inner) {}

    std::string chat(const ChatRequest& request) override {
        calls_.fetch_add(1, std::memory_order_relaxed);
        return inner_.chat(request);
    }

    long long calls() const { return calls_.load(std::memory_order_relaxed); }
    void reset() { calls_.store(0, std::memory_order_relaxed); }

  private:
    ChatProvider& inner_;
    std::atomic<long long> calls_{0};
};

class CountingJudgeProvider : public JudgeProvider {
  public:
    explicit CountingJudgeProvider(JudgeProvider& inner) : inner_(inner) {}

    PairwiseJudgment judge_pair(const std::string& premise,
                                const std::string& hypothesis) override {
        calls_.fetch_add(1, std::memory_order_relaxed);
        return inner_.judge_pair(premise, hypothesis);
    }

    long long calls() const { return calls_.load(std::memory_order_relaxed); }

  private:
    JudgeProvider& inner_;
    std::atomic<long long> calls_{0};
};

class CountingEmbeddingProvider : public EmbeddingProvider {
  public:
    explicit CountingEmbeddingProvider(EmbeddingProvider& inner) : inner_(inner) {}

    std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) override {
        calls_.fetch_add(1, std::memory_order_relaxed);
        return inner_.embed(texts);
    }
    int dimension() const override { return inner_.dimension(); }
    bool signed_components() const override { return inner_.signed_components(); }

    long long calls() const { return calls_.load(std::memory_order_relaxed); }

  private:
    EmbeddingProvider& inner_;
    std::atomic<long long> calls_{0};
};

/// FNV-1a 64-bit over raw bytes; the fixed public hash of the mock
/// embedding spec.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace groundgate
