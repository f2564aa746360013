#include "defsort/source_location.hpp"

#include <algorithm>

namespace defsort {

std::string SourceLocation::str() const {
    return file + ":" + std::to_string(line) + ":" + std::to_string(column);
}

const char* severity_name(Severity s) {
    switch (s) {
    case Severity::Error: return "error";
    case Severity::Warning: return "warning";
    case Severity::Info: return "info";
    }
    return "?";
}

std::string Diagnostic::str() const {
    return location.str() + ": " + severity_name(severity) + " [" + code + "] " + message;
}

bool has_errors(const std::vector<Diagnostic>& diags) {
    return std::any_of(diags.begin(), diags.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

ParseError::ParseError(SourceLocation where, const std::string& message)
    : std::runtime_error(where.str() + ": " + message), where_(std::move(where)), message_(message) {}

AnalysisError::AnalysisError(std::string code, SourceLocation where, const std::string& message)
    : std::runtime_error(where.str() + ": " + message), code_(std::move(code)), where_(std::move(where)), message_(message) {}

Diagnostic AnalysisError::to_diagnostic() const {
    return Diagnostic{Severity::Error, code_, where_, message_};
}

} // namespace defsort
