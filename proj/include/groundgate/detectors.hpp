/// @file detectors.hpp
/// @brief The eight groundedness detectors: similarity-based (cos_sim, quip),
/// NLI-style pairwise scoring (nli), and five prompting strategies (direct,
/// triplet, multigen, contextnli, claims).

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "groundgate/providers.hpp"
#include "groundgate/record.hpp"
#include "groundgate/templates.hpp"
#include "groundgate/text.hpp"

namespace groundgate {

/// Per-record detector failure. The benchmark records it as an error outcome,
/// not a prediction.
class DetectorError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Direct-prompting completion that parses to neither the pass nor the fail
/// token; counted separately from errors and from both classes.
class UnparseableVerdict : public DetectorError {
  public:
    explicit UnparseableVerdict(std::string raw)
        : DetectorError("unparseable verdict: " + raw), raw_(std::move(raw)) {}

    const std::string& raw() const { return raw_; }

  private:
    std::string raw_;
};

class ExtractionFailed : public DetectorError {
  public:
    using DetectorError::DetectorError;
};

class VerificationFailed : public DetectorError {
  public:
    using DetectorError::DetectorError;
};

class Detector {
  public:
    explicit Detector(std::string name) : name_(std::move(name)) {}
    virtual ~Detector() = default;

    const std::string& name() const { return name_; }

    /// Runs the detector, stamping detector_name and wall-clock
    /// latency_seconds onto the verdict.
    DetectorVerdict evaluate(const EvalRecord& record);

  protected:
    virtual DetectorVerdict score_record(const EvalRecord& record) = 0;

  private:
    std::string name_;
};

/// Segmented sentence texts of all context passages, in passage order.
std::vector<std::string> context_sentence_texts(const EvalRecord& record);
std::vector<SentenceSpan> response_sentences(const EvalRecord& record);

/// ALL-rule assembly: sentence grounded iff score >= threshold, response
/// grounded iff every sentence is, response_score = min sentence score.
/// Zero sentences is vacuously grounded with score 1.
DetectorVerdict verdict_from_sentence_scores(const std::vector<double>& scores,
                                             double threshold);

// ---------------------------------------------------------------------------
// Similarity family
// ---------------------------------------------------------------------------

/// dot(u,v)/(|u||v|), clamped to [-1,1]. Throws std::invalid_argument on
/// dimension mismatch or a zero vector.
double cosine(const EmbeddingVector& u, const EmbeddingVector& v);

/// For each response sentence, the maximum cosine against all context
/// sentences. Scores are remapped to [0,1] via (x+1)/2 only when the provider
/// can emit negative components.
std::vector<std::pair<int, double>> best_match_scores(
    const std::vector<SentenceSpan>& response_sentences,
    const std::vector<std::string>& context_sentences,
    EmbeddingProvider& embed);

class CosineDetector : public Detector {
  public:
    CosineDetector(EmbeddingProvider& embed, ThresholdConfig threshold)
        : Detector("cos_sim"), embed_(embed), threshold_(threshold) {}

  protected:
    DetectorVerdict score_record(const EvalRecord& record) override;

  private:
    EmbeddingProvider& embed_;
    ThresholdConfig threshold_;
};

/// |ngrams(sentence) ∩ pool| / |ngrams(sentence)|; sentences shorter than n
/// have no n-grams and score 1 (they cannot evidence hallucination).
double quip_precision(std::string_view sentence, const NGramSet& context_pool,
                      const NGramConfig& config);

struct SimilarityDetectorConfig {
    ThresholdConfig threshold;
    NGramConfig ngram;  // quip only
};

class QuipDetector : public Detector {
  public:
    explicit QuipDetector(SimilarityDetectorConfig config)
        : Detector("quip"), config_(config) {}

  protected:
    DetectorVerdict score_record(const EvalRecord& record) override;

  private:
    SimilarityDetectorConfig config_;
};

// ---------------------------------------------------------------------------
// NLI family
// ---------------------------------------------------------------------------

using ScoreMatrix = std::vector<std::vector<double>>;

/// Entry (i, j) = judge_pair(context_j as premise, response_i as
/// hypothesis).consistency.
ScoreMatrix support_matrix(const std::vector<SentenceSpan>& response_sentences,
                           const std::vector<std::string>& context_sentences,
                           JudgeProvider& judge);

/// Row-wise maximum: the best-supporting context sentence per response
/// sentence.
std::vector<std::pair<int, double>> sentence_support(const ScoreMatrix& matrix);

enum class PairGranularity { Sentence, FullContext };

struct NliDetectorConfig {
    ThresholdConfig threshold;
    PairGranularity granularity = PairGranularity::Sentence;
};

class NliDetector : public Detector {
  public:
    NliDetector(JudgeProvider& judge, NliDetectorConfig config)
        : Detector("nli"), judge_(judge), config_(config) {}

  protected:
    DetectorVerdict score_record(const EvalRecord& record) override;

  private:
    JudgeProvider& judge_;
    NliDetectorConfig config_;
};

// ---------------------------------------------------------------------------
// Prompting family
// ---------------------------------------------------------------------------

struct KnowledgeTriplet {
    std::string subject;
    std::string predicate;
    std::string object;
};

enum class TripletLabel { Entailment, Contradiction, Neutral };

struct Claim {
    std::string text;
};

enum class ClaimStatus { Supported, Unsupported, Contradicted };

/// One chat call at temperature 0; grounded iff the completion's SCORE field
/// is the template's pass token. Anything else that still parses as the fail
/// token is ungrounded; everything else raises UnparseableVerdict.
class DirectDetector : public Detector {
  public:
    DirectDetector(ChatProvider& chat, const PromptTemplate& tmpl);

  protected:
    DetectorVerdict score_record(const EvalRecord& record) override;

  private:
    ChatProvider& chat_;
    PromptTemplate template_;
    std::string pass_token_;
    std::string fail_token_;
};

std::vector<KnowledgeTriplet> extract_triplets(const EvalRecord& record,
                                               ChatProvider& chat,
                                               const PromptTemplate& tmpl);

/// One chat call carrying the full original context and the triplet; parses
/// exactly one of the three labels. An unparseable completion degrades to
/// Neutral with a logged warning.
TripletLabel check_triplet(const KnowledgeTriplet& triplet,
                           const std::vector<std::string>& context,
                           ChatProvider& chat, const PromptTemplate& tmpl);

/// Stable fixture key for a triplet check: "subject|predicate|object"
/// normalized.
std::string triplet_key(const KnowledgeTriplet& triplet);

class TripletDetector : public Detector {
  public:
    TripletDetector(ChatProvider& chat, const TemplateSet& templates,
                    ThresholdConfig threshold)
        : Detector("triplet"), chat_(chat), templates_(templates),
          threshold_(threshold) {}

  protected:
    DetectorVerdict score_record(const EvalRecord& record) override;

  private:
    ChatProvider& chat_;
    const TemplateSet& templates_;
    ThresholdConfig threshold_;
};

class MultiGenDetector : public Detector {
  public:
    MultiGenDetector(ChatProvider& chat, JudgeProvider& judge,
                     const TemplateSet& templates, SamplingConfig sampling,
                     ThresholdConfig threshold)
        : Detector("multigen"), chat_(chat), judge_(judge), templates_(templates),
          sampling_(sampling), threshold_(threshold) {}

  protected:
    DetectorVerdict score_record(const EvalRecord& record) override;

  private:
    ChatProvider& chat_;
    JudgeProvider& judge_;
    const TemplateSet& templates_;
    SamplingConfig sampling_;
    ThresholdConfig threshold_;
};

class ContextNliDetector : public Detector {
  public:
    ContextNliDetector(JudgeProvider& judge, ThresholdConfig threshold)
        : Detector("contextnli"), judge_(judge), threshold_(threshold) {}

  protected:
    DetectorVerdict score_record(const EvalRecord& record) override;

  private:
    JudgeProvider& judge_;
    ThresholdConfig threshold_;
};

std::vector<Claim> extract_claims(const std::string& text, ChatProvider& chat,
                                  const PromptTemplate& tmpl,
                                  const std::string& key);

/// One chat call with both claim lists; one status per answer claim,
/// positionally aligned (enforced).
std::vector<std::pair<Claim, ClaimStatus>> verify_claims(
    const std::vector<Claim>& answer_claims,
    const std::vector<Claim>& source_claims, ChatProvider& chat,
    const PromptTemplate& tmpl, const std::string& key);

struct ClaimsDetectorConfig {
    // Strict mode also counts Unsupported (not just Contradicted) claims as
    // ungrounding; off by default per the contradiction rule.
    bool strict = false;
};

class ClaimsDetector : public Detector {
  public:
    ClaimsDetector(ChatProvider& chat, const TemplateSet& templates,
                   ClaimsDetectorConfig config = {})
        : Detector("claims"), chat_(chat), templates_(templates), config_(config) {}

  protected:
    DetectorVerdict score_record(const EvalRecord& record) override;

  private:
    ChatProvider& chat_;
    const TemplateSet& templates_;
    ClaimsDetectorConfig config_;
};

// ---------------------------------------------------------------------------
// Aggregation primitives (kept pure so aggregation laws are testable on raw
// matrices)
// ---------------------------------------------------------------------------

/// Multi-Gen: per-sentence hallucination = mean contradiction across samples.
std::vector<double> rowwise_mean(const ScoreMatrix& contradictions);
/// ContextNLI: per-sentence hallucination = min contradiction across context
/// sentences.
std::vector<double> rowwise_min(const ScoreMatrix& contradictions);
/// Response-level hallucination = max over sentence-level scores.
double max_element_of(const std::vector<double>& values);

// ---------------------------------------------------------------------------
// Factory
// ---------------------------------------------------------------------------

struct ProviderBundle {
    EmbeddingProvider* embed = nullptr;
    JudgeProvider* judge = nullptr;
    ChatProvider* chat = nullptr;
};

struct DetectorOptions {
    ThresholdConfig threshold;           // shared default
    NGramConfig quip_ngram;              // quip
    SamplingConfig sampling;             // multigen
    PairGranularity nli_granularity = PairGranularity::Sentence;
    bool claims_strict = false;
};

const std::vector<std::string>& detector_names();
bool is_threshold_detector(const std::string& name);
/// Family for report grouping: similarity, nli, prompt, chain.
std::string detector_family(const std::string& name);

/// Builds a detector by CLI name. Throws std::invalid_argument for unknown
/// names and DetectorError when a required provider is missing.
std::unique_ptr<Detector> make_detector(const std::string& name,
                                        const ProviderBundle& providers,
                                        const TemplateSet& templates,
                                        const DetectorOptions& options);

}  // namespace groundgate
