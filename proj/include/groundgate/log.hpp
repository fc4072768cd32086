#pragma once

#include <string>

namespace groundgate {

// Warnings go to stderr so stdout stays clean for reports.
void log_warn(const std::string& message);
void log_info(const std::string& message);

}  // namespace groundgate
