#ifndef OGTT_ERROR_HPP
#define OGTT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ogtt {

/// Base class for every recoverable failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Damping/frequency combination outside the underdamped regime (alpha^2 >= omega0^2).
class NotUnderdamped : public Error {
public:
    using Error::Error;
};

class MalformedRow : public Error {
public:
    MalformedRow(std::size_t line, const std::string& detail, const std::string& source = {})
        : Error((source.empty() ? "" : source + ": ") + "line " + std::to_string(line) + ": " + detail),
          line_(line), detail_(detail) {}
    std::size_t line() const noexcept { return line_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    std::size_t line_;
    std::string detail_;
};

class EmptyInput : public Error {
public:
    using Error::Error;
};

class NoFiniteStart : public Error {
public:
    using Error::Error;
};

class InitFailure : public Error {
public:
    using Error::Error;
};

class EmptySamples : public Error {
public:
    using Error::Error;
};

class DegenerateClasses : public Error {
public:
    using Error::Error;
};

class ZeroWeight : public Error {
public:
    using Error::Error;
};

/// A pipeline stage could not find an artifact produced by an earlier stage.
class MissingArtifact : public Error {
public:
    explicit MissingArtifact(const std::string& path)
        : Error("missing artifact: " + path), path_(path) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

} // namespace ogtt

#endif // OGTT_ERROR_HPP
