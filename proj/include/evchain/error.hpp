#pragma once

#include <stdexcept>
#include <string>

namespace evchain {

// Base of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BoundsError : public Error {
 public:
  using Error::Error;
};

// Schema violation while decoding a payload; message carries the field path.
class ParseError : public Error {
 public:
  ParseError(const std::string& path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Payload is well-formed but inconsistent with the document it annotates.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

class EmptyDocumentError : public Error {
 public:
  using Error::Error;
};

class EmptySetError : public Error {
 public:
  using Error::Error;
};

class UndefinedGroupError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

// Wraps an error raised inside a named pipeline stage.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& detail)
      : Error(stage + ": " + detail), stage_(std::move(stage)), detail_(detail) {}
  const std::string& stage() const { return stage_; }
  const std::string& detail() const { return detail_; }

 private:
  std::string stage_;
  std::string detail_;
};

}  // namespace evchain
