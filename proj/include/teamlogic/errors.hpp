// teamlogic :: error types shared across modules

#ifndef TEAMLOGIC_ERRORS_HPP
#define TEAMLOGIC_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace teamlogic {

enum class ErrorCode {
  parse = 1,
  fragment = 2,
  resource = 3,
  invalid = 4,   // bad paths, arity mismatches, malformed inputs
  io = 5,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, std::string msg)
      : std::runtime_error(std::move(msg)), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

struct SourceSpan {
  size_t begin = 0;  // byte offsets, begin <= end
  size_t end = 0;
};

class ParseError : public Error {
public:
  ParseError(std::string msg, SourceSpan span)
      : Error(ErrorCode::parse, std::move(msg)), span_(span) {}
  SourceSpan span() const { return span_; }

private:
  SourceSpan span_;
};

class FragmentError : public Error {
public:
  explicit FragmentError(std::string msg) : Error(ErrorCode::fragment, std::move(msg)) {}
};

class ResourceError : public Error {
public:
  explicit ResourceError(std::string msg) : Error(ErrorCode::resource, std::move(msg)) {}
};

class InvalidError : public Error {
public:
  explicit InvalidError(std::string msg) : Error(ErrorCode::invalid, std::move(msg)) {}
};

}  // namespace teamlogic

#endif
