#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace alzer {

// Stable error categories; the C API maps these 1:1 onto alz_errc codes.
enum class Errc {
    parse = 1,
    eval = 2,
    diff = 3,
    quad = 4,
    range = 5,
    invalid = 6,
    cap = 7,
    internal = 8,
};

class Error : public std::runtime_error {
  public:
    Error(Errc code, std::string msg) : std::runtime_error(std::move(msg)), code_(code) {}
    Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

class ParseError : public Error {
  public:
    ParseError(const std::string& msg, std::size_t offset)
        : Error(Errc::parse, msg + " (byte " + std::to_string(offset) + ")"), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

  private:
    std::size_t offset_;
};

struct EvalError : Error {
    explicit EvalError(std::string msg) : Error(Errc::eval, std::move(msg)) {}
};

struct DiffError : Error {
    explicit DiffError(std::string msg) : Error(Errc::diff, std::move(msg)) {}
};

struct QuadError : Error {
    explicit QuadError(std::string msg) : Error(Errc::quad, std::move(msg)) {}
};

struct RangeError : Error {
    explicit RangeError(std::string msg) : Error(Errc::range, std::move(msg)) {}
};

struct InvalidError : Error {
    explicit InvalidError(std::string msg) : Error(Errc::invalid, std::move(msg)) {}
};

struct CapError : Error {
    explicit CapError(std::string msg) : Error(Errc::cap, std::move(msg)) {}
};

} // namespace alzer
