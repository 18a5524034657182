// Copyright (c) the fvel toolkit contributors.
// Licensed under the Apache 2.0 License.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fvel {

// Base for all toolkit errors; what() carries a human-readable message.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct MalformedRootError : Error {
  std::string file;
  int line;
  MalformedRootError(std::string file_, int line_, const std::string& what_)
      : Error(file_ + ":" + std::to_string(line_) + ": " + what_),
        file(std::move(file_)),
        line(line_) {}
};

struct MissingFileError : Error {
  std::string path;
  explicit MissingFileError(std::string path_)
      : Error("missing file: " + path_), path(std::move(path_)) {}
};

struct DuplicateSessionError : Error {
  std::string name;
  explicit DuplicateSessionError(std::string name_)
      : Error("duplicate session: " + name_), name(std::move(name_)) {}
};

struct CyclicSessionsError : Error {
  std::vector<std::string> cycle;
  explicit CyclicSessionsError(std::vector<std::string> cycle_);
};

struct NoHeaderError : Error {
  explicit NoHeaderError(const std::string& what_) : Error(what_) {}
};

struct CycleDetectedError : Error {
  std::vector<std::string> cycle;  // theory paths along the import cycle
  explicit CycleDetectedError(std::vector<std::string> cycle_);
};

struct UnresolvedTheoryError : Error {
  std::string import_name;
  std::string importer;
  UnresolvedTheoryError(std::string import_name_, std::string importer_)
      : Error("unresolved theory import '" + import_name_ + "' in " + importer_),
        import_name(std::move(import_name_)),
        importer(std::move(importer_)) {}
};

struct UnbalancedDelimiterError : Error {
  std::size_t offset;
  UnbalancedDelimiterError(const std::string& what_, std::size_t offset_)
      : Error(what_ + " (offset " + std::to_string(offset_) + ")"),
        offset(offset_) {}
};

struct ProverError : Error {
  explicit ProverError(const std::string& what_) : Error(what_) {}
};

struct SessionLostError : Error {
  explicit SessionLostError(const std::string& what_) : Error(what_) {}
};

struct ConnectFailedError : Error {
  explicit ConnectFailedError(const std::string& what_) : Error(what_) {}
};

struct InitRejectedError : Error {
  explicit InitRejectedError(const std::string& what_) : Error(what_) {}
};

struct TimeoutError : Error {
  explicit TimeoutError(const std::string& what_) : Error(what_) {}
};

struct LexError : Error {
  std::size_t offset;
  LexError(const std::string& what_, std::size_t offset_)
      : Error(what_ + " (offset " + std::to_string(offset_) + ")"),
        offset(offset_) {}
};

struct TranslationFailedError : Error {
  explicit TranslationFailedError(const std::string& what_) : Error(what_) {}
};

struct NoFunctionsError : Error {
  explicit NoFunctionsError(const std::string& what_) : Error(what_) {}
};

struct GeneratorUnavailableError : Error {
  explicit GeneratorUnavailableError(const std::string& what_) : Error(what_) {}
};

struct EmptyGenerationError : Error {
  explicit EmptyGenerationError(const std::string& what_) : Error(what_) {}
};

struct EmptyInputError : Error {
  explicit EmptyInputError(const std::string& what_) : Error(what_) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what_) : Error(what_) {}
};

}  // namespace fvel
