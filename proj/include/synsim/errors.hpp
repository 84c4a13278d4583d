// Copyright (c) 2026 synsim contributors
//
// This code is released under the
// Apache License Version 2.0 http://www.apache.org/licenses/.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace synsim {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// An explanation contains two features with the same case-folded token.
class DuplicateFeature : public Error {
 public:
  using Error::Error;
};

/// An explanation with no features.
class EmptyExplanation : public Error {
 public:
  using Error::Error;
};

/// Two substitution chains claim the same replacement token.
class ConflictingChain : public Error {
 public:
  using Error::Error;
};

/// A substitution-chain target collides with a feature already mapped in B.
class AmbiguousTarget : public Error {
 public:
  using Error::Error;
};

/// A stored embedding vector has zero norm (corrupt embedding data).
class ZeroVector : public Error {
 public:
  using Error::Error;
};

/// A line of an input file could not be parsed. Carries the line number.
class MalformedLine : public Error {
 public:
  MalformedLine(const std::string& source, std::size_t line_no, const std::string& cause)
      : Error(source + ":" + std::to_string(line_no) + ": " + cause), line_no_(line_no) {}

  std::size_t line_no() const { return line_no_; }

 private:
  std::size_t line_no_;
};

/// Two corpus records share an id.
class DuplicateRecordId : public Error {
 public:
  using Error::Error;
};

/// A corpus with no records was given to the harness.
class EmptyCorpus : public Error {
 public:
  using Error::Error;
};

/// No token of the document under attack appears in the substitution lexicon.
class NoCandidates : public Error {
 public:
  using Error::Error;
};

/// A file could not be opened or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace synsim
