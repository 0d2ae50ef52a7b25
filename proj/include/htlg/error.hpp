#pragma once

#include <stdexcept>
#include <string>

namespace htlg {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : Error(what + " (at offset " + std::to_string(position) + ")"), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// A formula violating stratification, or mentioning an undeclared atom.
class WellFormednessError : public Error {
 public:
  using Error::Error;
};

class IllTyped : public Error {
 public:
  IllTyped(std::string path, std::string expected, std::string found)
      : Error("ill-typed term at " + path + ": expected " + expected + ", found " + found),
        path_(std::move(path)), expected_(std::move(expected)), found_(std::move(found)) {}
  const std::string& path() const { return path_; }
  const std::string& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  std::string path_, expected_, found_;
};

class LexiconError : public Error {
 public:
  using Error::Error;
};

// A proof node whose conclusion does not follow from its premisses.
class RuleError : public Error {
 public:
  using Error::Error;
};

class VariableClash : public Error {
 public:
  using Error::Error;
};

class FormulaMismatch : public Error {
 public:
  using Error::Error;
};

class CountMismatch : public Error {
 public:
  CountMismatch(std::string atom, int positive, int negative)
      : Error("atom " + atom + " has " + std::to_string(positive) + " positive and " +
              std::to_string(negative) + " negative occurrences"),
        atom_(std::move(atom)), positive_(positive), negative_(negative) {}
  const std::string& atom() const { return atom_; }
  int positive() const { return positive_; }
  int negative() const { return negative_; }

 private:
  std::string atom_;
  int positive_, negative_;
};

class NotContractible : public Error {
 public:
  using Error::Error;
};

class SiteMismatch : public Error {
 public:
  using Error::Error;
};

class NotALambdaGraph : public Error {
 public:
  NotALambdaGraph(int condition, const std::string& detail)
      : Error("not a lambda graph: condition " + std::to_string(condition) + " fails: " + detail),
        condition_(condition) {}
  int condition() const { return condition_; }

 private:
  int condition_;
};

class UnknownWord : public Error {
 public:
  explicit UnknownWord(std::string token)
      : Error("unknown word: " + token), token_(std::move(token)) {}
  const std::string& token() const { return token_; }

 private:
  std::string token_;
};

class InvalidTrace : public Error {
 public:
  using Error::Error;
};

}  // namespace htlg
