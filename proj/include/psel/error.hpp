#pragma once

#include <stdexcept>
#include <string>

namespace psel {

// Failure categories. The CLI maps kIo to exit status 2 and everything else to 1.
enum class ErrorKind {
  kSchema,
  kParse,
  kRange,
  kUniqueness,
  kEncoding,
  kDegenerate,
  kShape,
  kBalance,
  kSplit,
  kEmpty,
  kDivision,
  kContract,
  kIo,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace psel
