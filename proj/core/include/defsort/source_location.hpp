#pragma once

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace defsort {

struct SourceLocation {
    std::string file;
    int line = 1;
    int column = 1;
    std::size_t offset = 0; // byte offset into the source text

    // Ordering is positional only; callers never compare across files.
    friend bool operator<(const SourceLocation& a, const SourceLocation& b) { return a.offset < b.offset; }
    friend bool operator==(const SourceLocation& a, const SourceLocation& b) {
        return a.file == b.file && a.offset == b.offset;
    }

    std::string str() const;
};

struct SourceSpan {
    SourceLocation start;
    SourceLocation end; // one past the last byte
};

enum class Severity { Error, Warning, Info };

const char* severity_name(Severity s);

struct Diagnostic {
    Severity severity = Severity::Error;
    std::string code;
    SourceLocation location;
    std::string message;

    std::string str() const;
};

bool has_errors(const std::vector<Diagnostic>& diags);

/// Raised for malformed input. Carries the offending location.
class ParseError : public std::runtime_error {
public:
    ParseError(SourceLocation where, const std::string& message);
    const SourceLocation& where() const noexcept { return where_; }
    const std::string& message() const noexcept { return message_; }

private:
    SourceLocation where_;
    std::string message_;
};

/// Raised by analysis stages: DuplicateName, UnknownName, CycleError.
class AnalysisError : public std::runtime_error {
public:
    AnalysisError(std::string code, SourceLocation where, const std::string& message);
    const std::string& code() const noexcept { return code_; }
    const SourceLocation& where() const noexcept { return where_; }
    const std::string& message() const noexcept { return message_; }
    Diagnostic to_diagnostic() const;

private:
    std::string code_;
    SourceLocation where_;
    std::string message_;
};

} // namespace defsort
