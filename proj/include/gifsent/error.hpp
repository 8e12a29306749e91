#pragma once

#include <stdexcept>
#include <string>

namespace gifsent {

/// Error categories map one-to-one onto CLI exit codes (see cli.hpp).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

class BackendError : public std::runtime_error {
public:
    explicit BackendError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace gifsent
