#include "groundgate/detectors.hpp"

#include <algorithm>
#include <chrono>

namespace groundgate {

DetectorVerdict Detector::evaluate(const EvalRecord& record) {
    const auto start = std::chrono::steady_clock::now();
    DetectorVerdict verdict = score_record(record);
    const auto elapsed = std::chrono::steady_clock::now() - start;
    verdict.detector_name = name_;
    verdict.latency_seconds =
        std::chrono::duration_cast<std::chrono::duration<double>>(elapsed).count();
    return verdict;
}

std::vector<std::string> context_sentence_texts(const EvalRecord& record) {
    std::vector<std::string> sentences;
    for (const auto& passage : record.context) {
        for (const auto& span : segment_sentences(passage)) {
            sentences.push_back(span.text);
        }
    }
    return sentences;
}

std::vector<SentenceSpan> response_sentences(const EvalRecord& record) {
    return segment_sentences(record.response);
}

DetectorVerdict verdict_from_sentence_scores(const std::vector<double>& scores,
                                             double threshold) {
    DetectorVerdict verdict;
    if (scores.empty()) {
        // Vacuous: nothing to fail.
        verdict.grounded = true;
        verdict.response_score = 1.0;
        return verdict;
    }
    verdict.grounded = true;
    verdict.response_score = 1.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        const bool sentence_ok = scores[i] >= threshold;
        verdict.sentence_scores.push_back(
            {static_cast<int>(i), scores[i], sentence_ok});
        verdict.grounded = verdict.grounded && sentence_ok;
        verdict.response_score = std::min(verdict.response_score, scores[i]);
    }
    return verdict;
}

std::vector<double> rowwise_mean(const ScoreMatrix& m) {
    std::vector<double> out;
    out.reserve(m.size());
    for (const auto& row : m) {
        double sum = 0.0;
        for (double x : row) sum += x;
        out.push_back(row.empty() ? 0.0 : sum / static_cast<double>(row.size()));
    }
    return out;
}

std::vector<double> rowwise_min(const ScoreMatrix& m) {
    std::vector<double> out;
    out.reserve(m.size());
    for (const auto& row : m) {
        out.push_back(row.empty() ? 0.0 : *std::min_element(row.begin(), row.end()));
    }
    return out;
}

double max_element_of(const std::vector<double>& values) {
    return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

const std::vector<std::string>& detector_names() {
    static const std::vector<std::string> kNames{
        "cos_sim", "quip", "nli", "direct", "triplet",
        "multigen", "contextnli", "claims",
    };
    return kNames;
}

bool is_threshold_detector(const std::string& name) {
    return name != "direct" && name != "claims";
}

std::string detector_family(const std::string& name) {
    if (name == "cos_sim" || name == "quip") return "similarity";
    if (name == "nli") return "nli";
    if (name == "direct") return "prompt";
    return "chain";
}

std::unique_ptr<Detector> make_detector(const std::string& name,
                                        const ProviderBundle& providers,
                                        const TemplateSet& templates,
                                        const DetectorOptions& options) {
    auto need_embed = [&]() -> EmbeddingProvider& {
        if (!providers.embed) throw DetectorError(name + ": embedding provider required");
        return *providers.embed;
    };
    auto need_judge = [&]() -> JudgeProvider& {
        if (!providers.judge) throw DetectorError(name + ": judge provider required");
        return *providers.judge;
    };
    auto need_chat = [&]() -> ChatProvider& {
        if (!providers.chat) throw DetectorError(name + ": chat provider required");
        return *providers.chat;
    };

    if (name == "cos_sim") {
        return std::make_unique<CosineDetector>(need_embed(), options.threshold);
    }
    if (name == "quip") {
        return std::make_unique<QuipDetector>(
            SimilarityDetectorConfig{options.threshold, options.quip_ngram});
    }
    if (name == "nli") {
        return std::make_unique<NliDetector>(
            need_judge(), NliDetectorConfig{options.threshold, options.nli_granularity});
    }
    if (name == "direct") {
        return std::make_unique<DirectDetector>(need_chat(),
                                                templates.get("direct_prompt"));
    }
    if (name == "triplet") {
        return std::make_unique<TripletDetector>(need_chat(), templates,
                                                 options.threshold);
    }
    if (name == "multigen") {
        return std::make_unique<MultiGenDetector>(need_chat(), need_judge(), templates,
                                                  options.sampling, options.threshold);
    }
    if (name == "contextnli") {
        return std::make_unique<ContextNliDetector>(need_judge(), options.threshold);
    }
    if (name == "claims") {
        return std::make_unique<ClaimsDetector>(
            need_chat(), templates, ClaimsDetectorConfig{options.claims_strict});
    }
    throw std::invalid_argument("unknown detector '" + name + "'");
}

}  // namespace groundgate
