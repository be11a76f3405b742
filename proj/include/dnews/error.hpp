// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dnews Authors

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dnews {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent corpus input. `line()` is 1-based, 0 when the
/// error is not tied to a record.
class CorpusError : public Error {
public:
    explicit CorpusError(const std::string& what, std::size_t line = 0)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class TrainingError : public Error {
public:
    using Error::Error;
};

/// Feature index outside the model's vocabulary.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Bundle/corpus/model combinations that were not produced together.
class CompatibilityError : public Error {
public:
    using Error::Error;
};

class ExtractionError : public Error {
public:
    ExtractionError(const std::string& field, const std::string& url)
        : Error(field + ": no match (" + url + ")"), field_(field), url_(url) {}

    const std::string& field() const noexcept { return field_; }
    const std::string& url() const noexcept { return url_; }

private:
    std::string field_;
    std::string url_;
};

}  // namespace dnews
