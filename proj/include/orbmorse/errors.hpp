#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace orbmorse {

/// Base class for all errors raised by the library.
///
/// `kind()` distinguishes malformed input (bad file, bad expression text)
/// from domain failures (degenerate critical point, inconsistent data);
/// the CLI maps these to exit codes 2 and 1 respectively.
class Error : public std::runtime_error {
 public:
  enum class Kind { Input, Domain };

  Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct InputError : Error {
  explicit InputError(const std::string& what) : Error(Kind::Input, what) {}
};

struct DomainFault : Error {
  explicit DomainFault(const std::string& what) : Error(Kind::Domain, what) {}
};

// -- expression language ----------------------------------------------------

/// Malformed expression text; `position` is a 0-based byte offset.
struct SyntaxError : InputError {
  SyntaxError(const std::string& what, std::size_t position)
      : InputError(what + " (at position " + std::to_string(position) + ")"),
        position(position) {}
  std::size_t position;
};

struct UnknownIdentifier : InputError {
  UnknownIdentifier(const std::string& name, std::size_t position)
      : InputError("unknown identifier '" + name + "' (at position " +
                   std::to_string(position) + ")"),
        position(position) {}
  std::size_t position;
};

struct VariableOutOfRange : InputError {
  VariableOutOfRange(int index, int dim, std::size_t position)
      : InputError("variable x" + std::to_string(index) + " exceeds chart dimension " +
                   std::to_string(dim) + " (at position " + std::to_string(position) + ")"),
        position(position) {}
  std::size_t position;
};

/// Evaluation outside the expression's domain (division by zero, sqrt of a
/// negative number, derivative of sqrt at zero).
struct DomainError : DomainFault {
  using DomainFault::DomainFault;
};

// -- groups and representations ---------------------------------------------

struct NotIsometry : InputError {
  using InputError::InputError;
};

struct LatticeNotPreserved : InputError {
  using InputError::InputError;
};

struct OrderExceeded : DomainFault {
  using DomainFault::DomainFault;
};

struct SubspaceNotInvariant : DomainFault {
  using DomainFault::DomainFault;
};

struct ActionNotComplexLinear : DomainFault {
  using DomainFault::DomainFault;
};

struct PhaseNotRational : DomainFault {
  using DomainFault::DomainFault;
};

// -- critical point analysis -------------------------------------------------

struct NoSeeds : InputError {
  using InputError::InputError;
};

struct NonFiniteFunctionValue : DomainFault {
  using DomainFault::DomainFault;
};

struct DegenerateCriticalPoint : DomainFault {
  using DomainFault::DomainFault;
};

struct SplitNotInvariant : DomainFault {
  using DomainFault::DomainFault;
};

// -- polynomials and inequalities --------------------------------------------

struct MissingComplexStructure : DomainFault {
  using DomainFault::DomainFault;
};

struct NotLacunary : DomainFault {
  using DomainFault::DomainFault;
};

struct OddDegreePresent : DomainFault {
  using DomainFault::DomainFault;
};

struct RationalExponents : DomainFault {
  using DomainFault::DomainFault;
};

// -- flows --------------------------------------------------------------------

struct NearCriticalSingularity : DomainFault {
  using DomainFault::DomainFault;
};

struct StepFailure : DomainFault {
  using DomainFault::DomainFault;
};

// -- files ---------------------------------------------------------------------

struct FileFormatError : InputError {
  using InputError::InputError;
};

}  // namespace orbmorse
