#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fpv {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by the notation parser; carries the byte offset of the offending
// token and a short description of what was expected there.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class UnknownSymbol : public Error {
 public:
  explicit UnknownSymbol(const std::string& symbol)
      : Error("unknown symbol '" + symbol + "'"), symbol_(symbol) {}

  const std::string& symbol() const { return symbol_; }

 private:
  std::string symbol_;
};

class CyclicDefinition : public Error {
 public:
  explicit CyclicDefinition(const std::string& symbol)
      : Error("cyclic definition involving '" + symbol + "'") {}
};

class WordTooLong : public Error {
 public:
  explicit WordTooLong(std::size_t limit)
      : Error("expanded word exceeds the length cap of " +
              std::to_string(limit) + " letters") {}
};

class ParameterOutOfRange : public Error {
 public:
  using Error::Error;
};

class MissingParameter : public Error {
 public:
  explicit MissingParameter(const std::string& name)
      : Error("no value given for parameter '" + name + "'") {}
};

class FamilyTooLarge : public Error {
 public:
  using Error::Error;
};

class InvalidWord : public Error {
 public:
  using Error::Error;
};

class IncompleteTable : public Error {
 public:
  IncompleteTable() : Error("operation requires a complete coset table") {}
};

class OrderBoundExceeded : public Error {
 public:
  OrderBoundExceeded(unsigned long long order, unsigned long long bound)
      : Error("group order " + std::to_string(order) +
              " exceeds the traversal bound " + std::to_string(bound)) {}
};

// Corpus-level problems: malformed JSON, bad claim kinds, broken references.
class CorpusError : public Error {
 public:
  using Error::Error;
};

class DuplicateId : public CorpusError {
 public:
  explicit DuplicateId(const std::string& id)
      : CorpusError("duplicate claim id '" + id + "'") {}
};

}  // namespace fpv
