#include "groundgate/templates.hpp"

#include <fstream>
#include <regex>
#include <sstream>

namespace groundgate {

std::string PromptTemplate::fill(const std::map<std::string, std::string>& values) const {
    std::string out = body;
    for (const auto& [key, value] : values) {
        const std::string placeholder = "{" + key + "}";
        std::size_t pos = 0;
        while ((pos = out.find(placeholder, pos)) != std::string::npos) {
            out.replace(pos, placeholder.size(), value);
            pos += value.size();
        }
    }
    return out;
}

bool PromptTemplate::has_placeholder(const std::string& placeholder) const {
    return body.find("{" + placeholder + "}") != std::string::npos;
}

std::string PromptTemplate::meta_or(const std::string& key,
                                    const std::string& fallback) const {
    auto it = meta.find(key);
    return it == meta.end() ? fallback : it->second;
}

PromptTemplate parse_template(const std::string& text, const std::string& origin) {
    PromptTemplate tmpl;
    std::istringstream in(text);
    std::string line;
    std::string body;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.rfind("#!", 0) == 0) {
            const std::size_t colon = line.find(':');
            if (colon != std::string::npos) {
                std::string key = line.substr(2, colon - 2);
                std::string value = line.substr(colon + 1);
                auto trim = [](std::string& s) {
                    while (!s.empty() && s.front() == ' ') s.erase(s.begin());
                    while (!s.empty() && s.back() == ' ') s.pop_back();
                };
                trim(key);
                trim(value);
                tmpl.meta[key] = value;
            }
            continue;
        }
        body += line;
        body += '\n';
    }
    tmpl.body = body;

    static const std::regex kSentinel(
        R"(### template: (([A-Za-z0-9_\-]+)@[0-9.]+) key:)");
    std::smatch match;
    if (!std::regex_search(tmpl.body, match, kSentinel)) {
        throw TemplateError(origin + ": missing '### template: <id>@<semver> key:' sentinel");
    }
    tmpl.id = match[1].str();
    tmpl.name = match[2].str();
    return tmpl;
}

PromptTemplate load_template(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw TemplateError("cannot open template file " + file.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_template(buffer.str(), file.string());
}

const PromptTemplate& TemplateSet::get(const std::string& name) const {
    auto it = loaded_.find(name);
    if (it != loaded_.end()) return it->second;
    const auto path = dir_ / (name + ".txt");
    auto [inserted, ok] = loaded_.emplace(name, load_template(path));
    return inserted->second;
}

}  // namespace groundgate
