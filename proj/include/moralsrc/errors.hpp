#pragma once

#include <stdexcept>
#include <string>

namespace moralsrc {

// Error taxonomy. The CLI maps each class to a distinct exit code.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad or inconsistent configuration: missing files, invalid parameters,
// lexicon categories with no usable seeds, empty topic-model slices.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed input file content.
class FormatError : public Error {
 public:
  using Error::Error;
};

// A single corpus record could not be interpreted (bad timestamp etc).
class RecordError : public FormatError {
 public:
  RecordError(const std::string& id, const std::string& what)
      : FormatError("record '" + id + "': " + what), id_(id) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

// A caller broke an operation's precondition.
class ContractError : public Error {
 public:
  using Error::Error;
};

// The query produced nothing to work with (entity never mentioned).
class EmptyResultError : public Error {
 public:
  using Error::Error;
};

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitFormat = 3,
  kExitContract = 4,
  kExitEmpty = 5,
  kExitInternal = 70,
};

}  // namespace moralsrc
