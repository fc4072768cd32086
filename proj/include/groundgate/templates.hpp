/// @file templates.hpp
/// @brief Versioned prompt template assets.
///
/// Template files are plain text. The first body line is a sentinel that
/// stays in the filled prompt so scripted chat mocks can route it:
///   ### template: <id>@<semver> key: {key}
/// Lines starting with "#!" are metadata (e.g. pass/fail tokens) and are
/// stripped from the prompt.

#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>

namespace groundgate {

class TemplateError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct PromptTemplate {
    std::string id;       // "<name>@<semver>", parsed from the sentinel line
    std::string name;     // id without the version
    std::string body;     // prompt text including the sentinel line
    std::map<std::string, std::string> meta;  // from "#!" lines

    /// Replaces each "{key}" placeholder with its value. Placeholders without
    /// a provided value are left untouched (prompt bodies legitimately contain
    /// braces, e.g. JSON output examples).
    std::string fill(const std::map<std::string, std::string>& values) const;

    bool has_placeholder(const std::string& placeholder) const;
    std::string meta_or(const std::string& key, const std::string& fallback) const;
};

PromptTemplate parse_template(const std::string& text, const std::string& origin);
PromptTemplate load_template(const std::filesystem::path& file);

/// Directory of template files, loaded lazily by file stem.
class TemplateSet {
  public:
    explicit TemplateSet(std::filesystem::path dir) : dir_(std::move(dir)) {}

    const std::filesystem::path& dir() const { return dir_; }
    /// Loads "<name>.txt" from the directory; throws TemplateError if absent.
    const PromptTemplate& get(const std::string& name) const;

  private:
    std::filesystem::path dir_;
    mutable std::map<std::string, PromptTemplate> loaded_;
};

}  // namespace groundgate
