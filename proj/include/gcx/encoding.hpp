#pragma once

// Numbering of states and symbols, base selection, and the fixed-width
// base-B arithmetic behind every instance value.
//
// A configuration at time step j (1-based) occupies the T-digit block whose
// least significant digit sits at place B^((T-j)*T); in the most-significant-
// first digit array of width T*T that is the index range [(j-1)*T, j*T).

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gcx/common.hpp"
#include "gcx/machine.hpp"

namespace gcx {

// state_code is the bijection onto 1..s (start state first,
// then declaration order); symbol_code maps onto 1..k with `$` -> 1 and
// `_` -> 2. The base is the smallest power of two >= (s+1)k + 2.
struct CodeBook {
  int s = 0;
  int k = 0;
  Digit base = 0;
  int base_bits = 0;            // base == 2^base_bits
  std::vector<int> state_code;  // state id -> 1..s
  std::vector<int> symbol_code; // symbol id -> 1..k
  std::vector<int> state_of;    // code 1..s -> state id
  std::vector<int> symbol_of;   // code 1..k -> symbol id

  Digit pair_code(int q, int a) const {
    return static_cast<Digit>(state_code[static_cast<std::size_t>(q)]) *
               static_cast<Digit>(k) +
           static_cast<Digit>(symbol_code[static_cast<std::size_t>(a)]);
  }
  Digit max_pair_code() const {
    return static_cast<Digit>((s + 1)) * static_cast<Digit>(k);
  }

  static CodeBook from_machine(const TuringMachine& m);
  // Codebook over anonymous states/symbols, for the bare numeric facts.
  static CodeBook for_sizes(int s, int k);
};

// Unsigned fixed-width amount: exactly `width` base-`base` digits, most
// significant first. Comparison and subtraction require equal widths.
class BigAmount {
 public:
  BigAmount() = default;
  BigAmount(std::size_t width, Digit base) : base_(base), digits_(width, 0) {}
  static BigAmount from_digits(std::vector<Digit> digits, Digit base);

  std::size_t width() const { return digits_.size(); }
  Digit base() const { return base_; }
  Digit digit(std::size_t i) const { return digits_[i]; }
  void set_digit(std::size_t i, Digit d) { digits_[i] = d; }
  std::span<const Digit> digits() const { return digits_; }

  bool is_zero() const;
  // Index of the most significant nonzero digit; width() when zero.
  std::size_t leading_nonzero() const;

  friend bool operator==(const BigAmount&, const BigAmount&) = default;

 private:
  Digit base_ = 0;
  std::vector<Digit> digits_;
};

std::strong_ordering compare(const BigAmount& a, const BigAmount& b);
// a - b; throws Error when b > a (a greedy solver never lets that happen).
BigAmount subtract(const BigAmount& a, const BigAmount& b);

// A nonzero amount whose digits vanish outside one short window. Coin
// values fit in a 2T-digit window, so instances store these instead of
// full-width amounts. `msd` is the absolute index (most significant first)
// of digits.front(), which is nonzero; digits.back() is nonzero too.
struct SparseAmount {
  std::size_t msd = 0;
  std::vector<Digit> digits;

  bool is_zero() const { return digits.empty(); }
  static SparseAmount from_window(std::size_t start,
                                  std::span<const Digit> window);
  friend bool operator==(const SparseAmount&, const SparseAmount&) = default;
};

std::strong_ordering compare(const SparseAmount& a, const SparseAmount& b);
// true iff c <= w. `w_msd` must equal w.leading_nonzero().
bool fits_under(const SparseAmount& c, const BigAmount& w, std::size_t w_msd);
// w -= c in place; throws Error on underflow.
void subtract_in_place(BigAmount& w, const SparseAmount& c);
BigAmount to_big(const SparseAmount& a, std::size_t width, Digit base);
SparseAmount to_sparse(const BigAmount& a);

// Configuration digits (pair code at the head cell) in the block of time
// step j, zeros elsewhere; width T*T. Requires 1 <= j <= T.
BigAmount encode_config(const Configuration& c, int j, const CodeBook& cb,
                        int T);

enum class DigitKind : std::uint8_t { Zero, Symbol, Pair, Invalid };

struct DecodedDigit {
  DigitKind kind = DigitKind::Invalid;
  int state = -1;   // id, for Pair
  int symbol = -1;  // id, for Symbol and Pair
};

DecodedDigit classify_digit(const CodeBook& cb, Digit d);

// Reads the T-digit block at shift b*T (b blocks above the least
// significant end, 0 <= b < T); a configuration encoded at time j lands in
// block b = T - j. Invalid digits are reported, not rejected.
std::vector<DecodedDigit> decode_block(const BigAmount& a, int b,
                                       const CodeBook& cb, int T);

std::string render_decoded(const TuringMachine& m,
                           std::span<const DecodedDigit> cells);

// Canonical text: digits as decimals joined by '.', every maximal run of
// two or more zeros compressed to `0*<count>`.
std::string render_amount(const BigAmount& a);
BigAmount parse_amount(std::string_view text, std::size_t width, Digit base);
std::string render_amount(const SparseAmount& a, std::size_t width);
SparseAmount parse_sparse_amount(std::string_view text, std::size_t width,
                                 Digit base);
// Lowercase hex of the binary value (no leading zeros); the base must be a
// power of two.
std::string render_amount_hex(const BigAmount& a);

}  // namespace gcx
