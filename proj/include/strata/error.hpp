#ifndef STRATA_ERROR_HPP
#define STRATA_ERROR_HPP

#include <stdexcept>
#include <string>

namespace strata {

enum class ErrorKind {
    Parse,         // malformed input text or file
    Validation,    // input parses but violates a domain invariant
    Domain,        // point outside the domain of a map
    Verification,  // a numeric or structural cross-check failed
    Internal,      // inconsistent intermediate state
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace strata

#endif
