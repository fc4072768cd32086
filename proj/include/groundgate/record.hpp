/// @file record.hpp
/// @brief Domain types shared by all modules and the JSONL corpus schema.

#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace groundgate {

inline constexpr int kSchemaVersion = 1;

enum class GoldLabel { Grounded, Ungrounded, Unlabeled };
enum class Provenance { Original, SyntheticAdaptation };
enum class Split { Train, Dev, Test };
enum class CalibrationObjective { MacroF1 };

/// Closed six-type error taxonomy for ungrounded responses.
enum class ErrorType {
    FactualInaccuracies,
    ContextualMisinterpretations,
    ProceduralErrors,
    ReasoningErrors,
    Misattributions,
    TerminologicalErrors,
};

/// One (query, context, response, gold label) unit; the atom of the corpus.
struct EvalRecord {
    std::string record_id;
    std::string query_id;  // groups response variants of the same query
    std::string query;
    std::vector<std::string> context;
    std::string response;
    GoldLabel gold_label = GoldLabel::Unlabeled;
    Provenance provenance = Provenance::Original;
    // Present iff provenance == SyntheticAdaptation: which response sentences
    // were altered relative to the grounded original.
    std::optional<std::set<int>> changed_sentence_indices;
};

struct SentenceScore {
    int index = 0;
    double score = 0.0;  // in [0,1], higher = more grounded
    bool grounded = false;
};

/// Binary grounded/ungrounded decision with scores. Scores are normalized so
/// higher = more grounded; detectors whose native score is a hallucination
/// probability store 1 - that score.
struct DetectorVerdict {
    std::string detector_name;
    bool grounded = false;
    double response_score = 0.0;
    std::vector<SentenceScore> sentence_scores;  // empty for response-level detectors
    double latency_seconds = 0.0;
};

struct ThresholdConfig {
    double threshold = 0.5;
    Split calibration_split = Split::Dev;
    CalibrationObjective objective = CalibrationObjective::MacroF1;
};

struct SamplingConfig {
    int k = 3;                 // number of re-generated samples
    double temperature = 1.0;  // elevated for diversity
    long long seed = 0;
};

const char* to_string(GoldLabel label);
const char* to_string(Provenance p);
const char* to_string(Split s);
const char* to_string(ErrorType t);
/// Table-style display name, e.g. "Factual Inaccuracies".
const char* display_name(ErrorType t);

GoldLabel gold_label_from_string(const std::string& s);
Provenance provenance_from_string(const std::string& s);
Split split_from_string(const std::string& s);
/// Accepts both the compact enum name and the display name; anything else is
/// rejected (closed set).
std::optional<ErrorType> try_error_type_from_string(const std::string& s);
ErrorType error_type_from_string(const std::string& s);
const std::vector<ErrorType>& all_error_types();

/// Returns one human-readable violation per broken EvalRecord invariant;
/// empty means the record is well-formed. Never throws.
std::vector<std::string> validate_record(const EvalRecord& record);

/// Cross-record invariants: record_id uniqueness and identical query/context
/// within each query_id group.
std::vector<std::string> validate_corpus(const std::vector<EvalRecord>& records);

class SchemaError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

nlohmann::json record_to_json(const EvalRecord& record);
EvalRecord record_from_json(const nlohmann::json& j);

std::string records_to_jsonl(const std::vector<EvalRecord>& records);
std::vector<EvalRecord> records_from_jsonl(const std::string& jsonl);

std::vector<EvalRecord> read_records(const std::string& path);
void write_records(const std::string& path, const std::vector<EvalRecord>& records);

}  // namespace groundgate
