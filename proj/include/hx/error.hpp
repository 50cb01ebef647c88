#ifndef HX_ERROR_HPP_
#define HX_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace hx {

  // Error categories map one-to-one onto the CLI exit codes.
  enum class ErrorKind : int { usage = 1, gating = 2, invariant = 3 };

  class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, std::string const& what)
        : std::runtime_error(what), _kind(kind) {}

    ErrorKind kind() const noexcept {
      return _kind;
    }

    int exit_code() const noexcept {
      return static_cast<int>(_kind);
    }

   private:
    ErrorKind _kind;
  };

  // Bad input: malformed matrices, unknown labels, invalid weights, indices
  // out of range.
  class UsageError : public Error {
   public:
    explicit UsageError(std::string const& what)
        : Error(ErrorKind::usage, what) {}
  };

  // Valid input for which the requested computation is not defined, e.g. a
  // finite-group-only operation on an affine system.
  class GatingError : public Error {
   public:
    explicit GatingError(std::string const& what)
        : Error(ErrorKind::gating, what) {}
  };

  // A theorem-backed self-check failed. Always an implementation bug.
  class InvariantError : public Error {
   public:
    explicit InvariantError(std::string const& what)
        : Error(ErrorKind::invariant, what) {}
  };

}  // namespace hx

#endif  // HX_ERROR_HPP_
