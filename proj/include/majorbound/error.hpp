// error.hpp — error codes and the exception type shared by the whole library.
#pragma once

#include <stdexcept>
#include <string>

namespace majorbound {

enum class Errc {
    not_normalized,
    negative_entry,
    unbounded,
    negative_input,
    invalid_alpha,
    out_of_range,
    invalid_epsilon,
    precondition_violated,
    branch_violation,
    pure_state,
    too_large,
    parse_error,
};

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace majorbound
