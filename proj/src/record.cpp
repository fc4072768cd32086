#include "groundgate/record.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "groundgate/text.hpp"

namespace groundgate {

const char* to_string(GoldLabel label) {
    switch (label) {
        case GoldLabel::Grounded: return "Grounded";
        case GoldLabel::Ungrounded: return "Ungrounded";
        case GoldLabel::Unlabeled: return "Unlabeled";
    }
    return "Unlabeled";
}

const char* to_string(Provenance p) {
    return p == Provenance::Original ? "Original" : "SyntheticAdaptation";
}

const char* to_string(Split s) {
    switch (s) {
        case Split::Train: return "train";
        case Split::Dev: return "dev";
        case Split::Test: return "test";
    }
    return "dev";
}

const char* to_string(ErrorType t) {
    switch (t) {
        case ErrorType::FactualInaccuracies: return "FactualInaccuracies";
        case ErrorType::ContextualMisinterpretations: return "ContextualMisinterpretations";
        case ErrorType::ProceduralErrors: return "ProceduralErrors";
        case ErrorType::ReasoningErrors: return "ReasoningErrors";
        case ErrorType::Misattributions: return "Misattributions";
        case ErrorType::TerminologicalErrors: return "TerminologicalErrors";
    }
    return "FactualInaccuracies";
}

const char* display_name(ErrorType t) {
    switch (t) {
        case ErrorType::FactualInaccuracies: return "Factual Inaccuracies";
        case ErrorType::ContextualMisinterpretations: return "Contextual Misinterpretations";
        case ErrorType::ProceduralErrors: return "Procedural Errors";
        case ErrorType::ReasoningErrors: return "Reasoning Errors";
        case ErrorType::Misattributions: return "Misattributions";
        case ErrorType::TerminologicalErrors: return "Terminological Errors";
    }
    return "Factual Inaccuracies";
}

GoldLabel gold_label_from_string(const std::string& s) {
    if (s == "Grounded") return GoldLabel::Grounded;
    if (s == "Ungrounded") return GoldLabel::Ungrounded;
    if (s == "Unlabeled") return GoldLabel::Unlabeled;
    throw SchemaError("gold_label: unknown value '" + s + "'");
}

Provenance provenance_from_string(const std::string& s) {
    if (s == "Original") return Provenance::Original;
    if (s == "SyntheticAdaptation") return Provenance::SyntheticAdaptation;
    throw SchemaError("provenance: unknown value '" + s + "'");
}

Split split_from_string(const std::string& s) {
    if (s == "train" || s == "Train") return Split::Train;
    if (s == "dev" || s == "Dev") return Split::Dev;
    if (s == "test" || s == "Test") return Split::Test;
    throw SchemaError("split: unknown value '" + s + "'");
}

const std::vector<ErrorType>& all_error_types() {
    static const std::vector<ErrorType> kAll{
        ErrorType::FactualInaccuracies,
        ErrorType::ContextualMisinterpretations,
        ErrorType::ProceduralErrors,
        ErrorType::ReasoningErrors,
        ErrorType::Misattributions,
        ErrorType::TerminologicalErrors,
    };
    return kAll;
}

std::optional<ErrorType> try_error_type_from_string(const std::string& s) {
    for (ErrorType t : all_error_types()) {
        if (s == to_string(t) || s == display_name(t)) return t;
    }
    return std::nullopt;
}

ErrorType error_type_from_string(const std::string& s) {
    if (auto t = try_error_type_from_string(s)) return *t;
    throw SchemaError("error_type: unknown value '" + s + "'");
}

std::vector<std::string> validate_record(const EvalRecord& record) {
    std::vector<std::string> violations;
    if (record.record_id.empty()) {
        violations.push_back("record_id: must be non-empty");
    }
    if (record.query_id.empty()) {
        violations.push_back("query_id: must be non-empty");
    }
    if (record.query.empty()) {
        violations.push_back("query: must be non-empty");
    }
    if (record.context.empty()) {
        violations.push_back("context: must be non-empty");
    }
    if (record.response.empty()) {
        violations.push_back("response: must be non-empty");
    }
    const bool synthetic = record.provenance == Provenance::SyntheticAdaptation;
    if (synthetic && !record.changed_sentence_indices.has_value()) {
        violations.push_back(
            "changed_sentence_indices: required for SyntheticAdaptation records");
    }
    if (!synthetic && record.changed_sentence_indices.has_value()) {
        violations.push_back(
            "changed_sentence_indices: only allowed on SyntheticAdaptation records");
    }
    if (record.changed_sentence_indices.has_value()) {
        const auto sentences = segment_sentences(record.response);
        const int count = static_cast<int>(sentences.size());
        for (int idx : *record.changed_sentence_indices) {
            if (idx < 0 || idx >= count) {
                violations.push_back(
                    "changed_sentence_indices: index " + std::to_string(idx) +
                    " does not address a response sentence (have " +
                    std::to_string(count) + ")");
            }
        }
    }
    return violations;
}

std::vector<std::string> validate_corpus(const std::vector<EvalRecord>& records) {
    std::vector<std::string> violations;
    std::unordered_set<std::string> ids;
    std::unordered_map<std::string, const EvalRecord*> group_head;
    for (const auto& record : records) {
        if (!ids.insert(record.record_id).second) {
            violations.push_back("record_id: duplicate '" + record.record_id + "'");
        }
        auto [it, inserted] = group_head.emplace(record.query_id, &record);
        if (!inserted) {
            const EvalRecord& head = *it->second;
            if (head.query != record.query || head.context != record.context) {
                violations.push_back("query_id: group '" + record.query_id +
                                     "' has divergent query or context (record '" +
                                     record.record_id + "')");
            }
        }
    }
    return violations;
}

nlohmann::json record_to_json(const EvalRecord& record) {
    nlohmann::json j{
        {"schema", kSchemaVersion},
        {"record_id", record.record_id},
        {"query_id", record.query_id},
        {"query", record.query},
        {"context", record.context},
        {"response", record.response},
        {"gold_label", to_string(record.gold_label)},
        {"provenance", to_string(record.provenance)},
    };
    if (record.changed_sentence_indices.has_value()) {
        j["changed_sentence_indices"] = *record.changed_sentence_indices;
    }
    return j;
}

EvalRecord record_from_json(const nlohmann::json& j) {
    try {
        if (!j.is_object()) throw SchemaError("record: not a JSON object");
        if (!j.contains("schema") || !j["schema"].is_number_integer() ||
            j["schema"].get<int>() != kSchemaVersion) {
            throw SchemaError("record: missing or unsupported schema version");
        }
        EvalRecord record;
        record.record_id = j.at("record_id").get<std::string>();
        record.query_id = j.at("query_id").get<std::string>();
        record.query = j.at("query").get<std::string>();
        record.context = j.at("context").get<std::vector<std::string>>();
        record.response = j.at("response").get<std::string>();
        record.gold_label = gold_label_from_string(j.at("gold_label").get<std::string>());
        record.provenance = provenance_from_string(j.at("provenance").get<std::string>());
        if (j.contains("changed_sentence_indices")) {
            record.changed_sentence_indices =
                j["changed_sentence_indices"].get<std::set<int>>();
        }
        return record;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("record: ") + e.what());
    }
}

std::string records_to_jsonl(const std::vector<EvalRecord>& records) {
    std::string out;
    for (const auto& record : records) {
        out += record_to_json(record).dump();
        out += '\n';
    }
    return out;
}

std::vector<EvalRecord> records_from_jsonl(const std::string& jsonl) {
    std::vector<EvalRecord> records;
    std::istringstream in(jsonl);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded()) {
            throw SchemaError("line " + std::to_string(line_no) + ": invalid JSON");
        }
        try {
            records.push_back(record_from_json(j));
        } catch (const SchemaError& e) {
            throw SchemaError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return records;
}

std::vector<EvalRecord> read_records(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return records_from_jsonl(buffer.str());
}

void write_records(const std::string& path, const std::vector<EvalRecord>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << records_to_jsonl(records);
}

}  // namespace groundgate
