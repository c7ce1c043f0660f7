#pragma once

#include <stdexcept>
#include <string>

namespace desdiag {

/// Malformed input text (bad JSON, bad decimal literal, ...).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Structurally well-formed input that violates a model invariant
/// (unknown reference, duplicate label, negative cost, overlapping cells, ...).
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A search was asked to run on a system that is not diagnosable even with
/// every event observable.
struct NotDiagnosableError : std::runtime_error {
    explicit NotDiagnosableError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace desdiag
