#pragma once

#include <stdexcept>
#include <string>

namespace chiral {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotAUnit : Error {
  NotAUnit() : Error("division by a non-unit of Q(k)[h]") {}
};

struct ZeroDenominator : Error {
  ZeroDenominator() : Error("zero denominator") {}
};

struct PoleAtLevel : Error {
  explicit PoleAtLevel(const std::string& den)
      : Error("level is a pole of denominator " + den) {}
};

struct ParseError : Error {
  ParseError(const std::string& what, int line, int column)
      : Error(what + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line(line), column(column) {}
  int line;
  int column;
};

struct InfiniteGradedPiece : Error {
  InfiniteGradedPiece()
      : Error("graded piece is infinite-dimensional; a length cutoff is required") {}
  explicit InfiniteGradedPiece(const std::string& what) : Error(what) {}
};

struct OracleUnsupported : Error {
  explicit OracleUnsupported(const std::string& family)
      : Error("mode oracle does not support presentation family '" + family + "'") {}
};

struct NotAlmostCommutative : Error {
  explicit NotAlmostCommutative(const std::string& pair)
      : Error("bracket " + pair + " has an h-free term") {}
};

struct NotPoisson : Error {
  using Error::Error;
};

struct InvalidComoment : Error {
  using Error::Error;
};

struct NotDominant : Error {
  using Error::Error;
};

struct NoComoment : Error {
  using Error::Error;
};

struct Unsolvable : Error {
  using Error::Error;
};

struct AnsatzTooSmall : Error {
  using Error::Error;
};

struct ResidualNonzero : Error {
  using Error::Error;
};

struct UsageError : Error {
  using Error::Error;
};

}  // namespace chiral
