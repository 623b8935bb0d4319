#pragma once

#include <stdexcept>
#include <string>

namespace convpow {

enum class ErrorKind {
  invalid_argument,  // bad input or violated precondition
  numerical,         // a numerical procedure could not meet its contract
  parse,             // malformed function file
  io,                // file system failure
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace convpow
