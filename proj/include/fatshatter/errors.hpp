#pragma once

#include <stdexcept>
#include <string>

namespace fatshatter {

/// Thrown when an exact computation would exceed its enumeration cap.
class SizeLimitError : public std::runtime_error {
public:
    explicit SizeLimitError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when an experiment configuration fails validation.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fatshatter
