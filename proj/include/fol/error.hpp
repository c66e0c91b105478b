#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fol {

/// Base class of every error the kernel reports.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A caller violated an operation's precondition (empty model, unbound
/// variable, value outside the model, function applied off its domain...).
class PreconditionError : public Error {
  public:
    using Error::Error;
};

/// A decision procedure refused an input larger than its fixed capacity.
class CapacityError : public Error {
  public:
    using Error::Error;
};

/// Value outside the representable range (Ackermann codes >= 2^63).
class RangeError : public Error {
  public:
    using Error::Error;
};

/// Lexing or parsing failure. `offset` is a byte offset into the source
/// text; `expected` lists what the parser would have accepted there.
class ParseError : public Error {
  public:
    ParseError(std::string message, std::size_t offset, std::vector<std::string> expected = {})
        : Error(format(message, offset, expected)),
          message_(std::move(message)),
          offset_(offset),
          expected_(std::move(expected)) {}

    const std::string& message() const noexcept { return message_; }
    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

  private:
    static std::string format(const std::string& message, std::size_t offset,
                              const std::vector<std::string>& expected) {
        std::string s = "offset " + std::to_string(offset) + ": " + message;
        if (!expected.empty()) {
            s += " (expected ";
            for (std::size_t i = 0; i < expected.size(); ++i) {
                if (i != 0) s += i + 1 == expected.size() ? " or " : ", ";
                s += expected[i];
            }
            s += ")";
        }
        return s;
    }

    std::string message_;
    std::size_t offset_;
    std::vector<std::string> expected_;
};

}  // namespace fol
