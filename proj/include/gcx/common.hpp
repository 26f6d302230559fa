#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gcx {

// One base-B digit. B stays tiny (a few hundred for desk-scale machines),
// but base selection allows anything up to 2^20 for the arithmetic tests.
using Digit = std::uint32_t;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a verification run contradicts the compiled instance.
struct VerifyFailure : Error {
  using Error::Error;
};

// Raised when certification is requested for a run that did not halt
// within the time bound.
struct TimeoutRefusal : Error {
  using Error::Error;
};

// 64-bit FNV-1a, stable across platforms; used for machine fingerprints.
constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v);

}  // namespace gcx
