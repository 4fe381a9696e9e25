#pragma once

#include <stdexcept>
#include <string>

namespace pqng {

enum class errc {
  invalid_argument = 1,
  degenerate_herald,        // herald probability is exactly zero
  truncation_insufficient,  // a truncated series/cutoff cannot meet its bound
  insufficient_samples,     // sample count below the significance floor
  parse_error,
  io_error,
  internal,
};

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool condition, errc code, const std::string& what) {
  if (!condition) throw Error(code, what);
}

}  // namespace pqng
