#pragma once

#include <stdexcept>
#include <string>

namespace reusemine {

// Base for every error the pipeline raises on purpose. The CLI maps each
// subclass to a distinct exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual int exit_code() const { return 1; }
};

class ConfigError : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 2; }
};

class ParseError : public Error {
public:
    ParseError(std::string path, int line, int column, const std::string& what)
        : Error(path + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          path_(std::move(path)), line_(line), column_(column), reason_(what) {}

    const std::string& path() const { return path_; }
    int line() const { return line_; }
    int column() const { return column_; }
    const std::string& reason() const { return reason_; }
    int exit_code() const override { return 3; }

private:
    std::string path_;
    int line_;
    int column_;
    std::string reason_;
};

class CycleError : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 3; }
};

class DuplicateType : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 3; }
};

class RepoAccessError : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 4; }
};

class EmptyHistory : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 4; }
};

class UnknownCommit : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 5; }
};

class LedgerFormatError : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 5; }
};

class DegenerateMatrix : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 6; }
};

class SeparationError : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 7; }
};

class SeriesTooShort : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 6; }
};

} // namespace reusemine
