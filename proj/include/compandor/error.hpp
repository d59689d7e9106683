#pragma once

#include <stdexcept>
#include <string>

namespace compandor {

enum class Errc {
  invalid_argument = 1,       // a value violates an operation's precondition
  invalid_configuration = 2,  // (N, L) or x_max cannot form a quantizer
  parse_error = 3,            // malformed design file or sample stream
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace compandor
