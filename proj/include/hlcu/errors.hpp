#pragma once

#include <stdexcept>
#include <string>

namespace hlcu {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input or violated precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A numerical identity that must hold did not (maps to CLI exit code 3).
class InvariantError : public Error {
 public:
  using Error::Error;
};

class NotHermitianError : public DomainError {
 public:
  explicit NotHermitianError(double violation)
      : DomainError("matrix is not Hermitian: max |H - H^dagger| = " + std::to_string(violation)),
        violation_(violation) {}
  double violation() const { return violation_; }

 private:
  double violation_;
};

class DegenerateDecompositionError : public DomainError {
 public:
  using DomainError::DomainError;
};

class DegenerateRoundError : public Error {
 public:
  DegenerateRoundError(int round, double trace)
      : Error("round " + std::to_string(round) + " has vanishing trace " + std::to_string(trace)),
        round_(round) {}
  int round() const { return round_; }

 private:
  int round_;
};

class UndefinedRatioError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace hlcu
