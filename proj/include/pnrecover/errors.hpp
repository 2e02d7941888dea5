#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pnrecover {

// Bad argument to a library call: zero vectors, dimension mismatch, degenerate boxes.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Operation on an object that is not in a usable state (e.g. an uninitialized tree).
class StateError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& what)
        : std::runtime_error("config error [" + key + "]: " + what), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("parse error at line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// A port (tracker, detector, embedder) failed while processing a frame.
class FrameError : public std::runtime_error {
public:
    FrameError(std::size_t frame, const std::string& what)
        : std::runtime_error("frame " + std::to_string(frame) + ": " + what), frame_(frame) {}

    std::size_t frame() const noexcept { return frame_; }

private:
    std::size_t frame_;
};

}  // namespace pnrecover
