#pragma once

#include <stdexcept>
#include <string>

namespace subsim {

// Conditioning on a detection outcome that has zero probability.
class impossible_event : public std::runtime_error {
public:
    explicit impossible_event(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed run configuration (bad JSON, unknown keys, out-of-range values).
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// An algorithm requiring special matrix structure was applied to blocks
// that lack it.
class unsupported_structure : public std::runtime_error {
public:
    explicit unsupported_structure(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace subsim
