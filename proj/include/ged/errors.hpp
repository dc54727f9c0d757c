#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ged {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public Error {
public:
    using Error::Error;
};

// Malformed text input. line is 1-based; 0 when not tied to a line.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Parameter outside its documented range.
class ConfigError : public Error {
public:
    using Error::Error;
};

class EmptyInput : public Error {
public:
    using Error::Error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

class InvalidGroup : public Error {
public:
    using Error::Error;
};

class InvalidEvent : public Error {
public:
    using Error::Error;
};

class MissingScore : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double residual)
        : Error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

class AlignmentError : public Error {
public:
    AlignmentError(const std::string& what, std::vector<int> indices)
        : Error(what), indices_(std::move(indices)) {}
    const std::vector<int>& indices() const noexcept { return indices_; }

private:
    std::vector<int> indices_;
};

}  // namespace ged
