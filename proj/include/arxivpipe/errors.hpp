#pragma once

#include <stdexcept>
#include <string>

namespace arxivpipe {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input data (XML, JSON lines, identifier strings, ...).
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg, long line = -1)
        : Error(line >= 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
          line_(line) {}

    long line() const { return line_; }

private:
    long line_;
};

// OAI-PMH envelope violations: bad verbs, bad resumption tokens,
// records missing their identifying parts.
class ProtocolError : public Error {
public:
    using Error::Error;
};

// Network-level harvest failure after retries are exhausted.
class HarvestError : public Error {
public:
    HarvestError(const std::string& msg, int last_status)
        : Error(msg), last_status_(last_status) {}

    int last_status() const { return last_status_; }

private:
    int last_status_;
};

class IoError : public Error {
public:
    using Error::Error;
};

// Operation applied outside its mathematical domain (empty graph, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Degenerate input to the power-law fitter.
class FitError : public Error {
public:
    using Error::Error;
};

class DivergenceError : public Error {
public:
    DivergenceError(const std::string& msg, int epoch)
        : Error(msg + " (epoch " + std::to_string(epoch) + ")"), epoch_(epoch) {}

    int epoch() const { return epoch_; }

private:
    int epoch_;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

// External converter command exited nonzero; carries its captured stderr.
class ConversionError : public Error {
public:
    ConversionError(const std::string& msg, std::string stderr_output)
        : Error(msg), stderr_output_(std::move(stderr_output)) {}

    const std::string& stderr_output() const { return stderr_output_; }

private:
    std::string stderr_output_;
};

// Converter succeeded but produced an empty document.
class EmptyOutputError : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

// Conflicting corpus files for one article id.
class IndexError : public Error {
public:
    using Error::Error;
};

}  // namespace arxivpipe
