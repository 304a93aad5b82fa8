#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace forge {

// Arbitrary-precision natural number. Codes of proofs outgrow 64 bits almost
// immediately, so everything that touches the standard model uses this.
using Natural = boost::multiprecision::cpp_int;

// Raised when an evaluation would leave the representable range
// (see kMaxValueBits) or iterate over an unreasonably large domain.
class EvalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMaxValueBits = 1u << 20;

inline std::string to_string(const Natural& n) { return n.str(); }

inline std::size_t bit_length(const Natural& n) {
  return n == 0 ? 0 : static_cast<std::size_t>(boost::multiprecision::msb(n)) + 1;
}

} // namespace forge
