#pragma once

#include <stdexcept>
#include <string>

namespace siegel {

// Exit codes used by the CLI; each error class carries its own.
enum class ErrorKind { Parse = 1, Domain = 2, Pole = 3, Precision = 4, Convergence = 5 };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }
  int exit_code() const { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

struct ParseError : Error {
  explicit ParseError(const std::string& w) : Error(ErrorKind::Parse, w) {}
};
struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error(ErrorKind::Domain, w) {}
};
// A character whose values do not live in Z_p (or Q_p) at the requested prime.
struct UnsupportedCharacter : DomainError {
  explicit UnsupportedCharacter(const std::string& w) : DomainError("unsupported character: " + w) {}
};
struct PrecisionError : Error {
  explicit PrecisionError(const std::string& w) : Error(ErrorKind::Precision, w) {}
};
struct ConvergenceError : Error {
  explicit ConvergenceError(const std::string& w) : Error(ErrorKind::Convergence, w) {}
};
// Pole errors optionally carry a residue, serialized by whoever throws them.
struct PoleError : Error {
  PoleError(const std::string& w, std::string residue_json = {})
      : Error(ErrorKind::Pole, w), residue(std::move(residue_json)) {}
  std::string residue;
};

}  // namespace siegel
