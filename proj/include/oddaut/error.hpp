#ifndef ODDAUT_ERROR_HPP
#define ODDAUT_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace oddaut {

// Invalid field parameters: non-prime characteristic, bad or reducible modulus.
class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operands that do not live in the same ring / space (field, arity, dimension).
class MismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A precondition on a constructor or operation argument was violated.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " at position " + std::to_string(position)),
        message_(message),
        position_(position) {}

  const std::string& message() const noexcept { return message_; }
  std::size_t position() const noexcept { return position_; }

 private:
  std::string message_;
  std::size_t position_;
};

// The evaluated map is not a bijection of the point set.
class NotBijectiveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace oddaut

#endif  // ODDAUT_ERROR_HPP
