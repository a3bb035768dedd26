#pragma once

#include <stdexcept>
#include <string>

namespace momd {

enum class ErrorKind {
    UnknownVertex,
    EmptyGraph,
    GraphTooSmall,
    GraphTooLarge,
    Io,
    FormatViolation,
    MalformedXml,
    MissingNodeReference,
    Disconnected,
    DegeneratePath,
    MismatchedInputs,
    ConfigInvalid,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::UnknownVertex:        return "UnknownVertex";
    case ErrorKind::EmptyGraph:           return "EmptyGraph";
    case ErrorKind::GraphTooSmall:        return "GraphTooSmall";
    case ErrorKind::GraphTooLarge:        return "GraphTooLarge";
    case ErrorKind::Io:                   return "Io";
    case ErrorKind::FormatViolation:      return "FormatViolation";
    case ErrorKind::MalformedXml:         return "MalformedXml";
    case ErrorKind::MissingNodeReference: return "MissingNodeReference";
    case ErrorKind::Disconnected:         return "Disconnected";
    case ErrorKind::DegeneratePath:       return "DegeneratePath";
    case ErrorKind::MismatchedInputs:     return "MismatchedInputs";
    case ErrorKind::ConfigInvalid:        return "ConfigInvalid";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(std::string(to_string(kind)) + ": " + msg), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& msg) {
    throw Error(kind, msg);
}

} // namespace momd
