#include "gcx/encoding.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <sstream>

namespace gcx {

CodeBook CodeBook::from_machine(const TuringMachine& m) {
  CodeBook cb;
  cb.s = m.num_states();
  cb.k = m.num_symbols();
  cb.state_code.assign(static_cast<std::size_t>(cb.s), 0);
  cb.symbol_code.assign(static_cast<std::size_t>(cb.k), 0);
  cb.state_of.assign(static_cast<std::size_t>(cb.s) + 1, -1);
  cb.symbol_of.assign(static_cast<std::size_t>(cb.k) + 1, -1);

  int next = 1;
  auto assign_state = [&](int q) {
    cb.state_code[static_cast<std::size_t>(q)] = next;
    cb.state_of[static_cast<std::size_t>(next)] = q;
    ++next;
  };
  assign_state(m.start);
  for (int q = 0; q < cb.s; ++q)
    if (q != m.start) assign_state(q);

  next = 1;
  auto assign_symbol = [&](int a) {
    cb.symbol_code[static_cast<std::size_t>(a)] = next;
    cb.symbol_of[static_cast<std::size_t>(next)] = a;
    ++next;
  };
  assign_symbol(TuringMachine::kEndmarker);
  assign_symbol(m.blank);
  for (int a = 0; a < cb.k; ++a)
    if (a != TuringMachine::kEndmarker && a != m.blank) assign_symbol(a);

  const auto need = static_cast<Digit>(cb.s + 1) * static_cast<Digit>(cb.k) + 2;
  cb.base = std::bit_ceil(need);
  cb.base_bits = std::countr_zero(cb.base);
  return cb;
}

CodeBook CodeBook::for_sizes(int s, int k) {
  if (s < 1 || k < 1) throw Error("codebook sizes must be positive");
  CodeBook cb;
  cb.s = s;
  cb.k = k;
  cb.state_code.resize(static_cast<std::size_t>(s));
  cb.symbol_code.resize(static_cast<std::size_t>(k));
  cb.state_of.assign(static_cast<std::size_t>(s) + 1, -1);
  cb.symbol_of.assign(static_cast<std::size_t>(k) + 1, -1);
  for (int q = 0; q < s; ++q) {
    cb.state_code[static_cast<std::size_t>(q)] = q + 1;
    cb.state_of[static_cast<std::size_t>(q) + 1] = q;
  }
  for (int a = 0; a < k; ++a) {
    cb.symbol_code[static_cast<std::size_t>(a)] = a + 1;
    cb.symbol_of[static_cast<std::size_t>(a) + 1] = a;
  }
  const auto need = static_cast<Digit>(s + 1) * static_cast<Digit>(k) + 2;
  cb.base = std::bit_ceil(need);
  cb.base_bits = std::countr_zero(cb.base);
  return cb;
}

BigAmount BigAmount::from_digits(std::vector<Digit> digits, Digit base) {
  BigAmount a;
  a.base_ = base;
  for (Digit d : digits)
    if (d >= base) throw Error("digit " + std::to_string(d) +
                               " out of range for base " + std::to_string(base));
  a.digits_ = std::move(digits);
  return a;
}

bool BigAmount::is_zero() const {
  return std::all_of(digits_.begin(), digits_.end(),
                     [](Digit d) { return d == 0; });
}

std::size_t BigAmount::leading_nonzero() const {
  for (std::size_t i = 0; i < digits_.size(); ++i)
    if (digits_[i] != 0) return i;
  return digits_.size();
}

std::strong_ordering compare(const BigAmount& a, const BigAmount& b) {
  if (a.width() != b.width())
    throw Error("comparing amounts of different widths");
  for (std::size_t i = 0; i < a.width(); ++i)
    if (a.digit(i) != b.digit(i)) return a.digit(i) <=> b.digit(i);
  return std::strong_ordering::equal;
}

BigAmount subtract(const BigAmount& a, const BigAmount& b) {
  if (a.width() != b.width() || a.base() != b.base())
    throw Error("subtracting amounts of different shapes");
  BigAmount out(a.width(), a.base());
  std::int64_t borrow = 0;
  for (std::size_t i = a.width(); i-- > 0;) {
    std::int64_t d = static_cast<std::int64_t>(a.digit(i)) -
                     static_cast<std::int64_t>(b.digit(i)) - borrow;
    if (d < 0) {
      d += a.base();
      borrow = 1;
    } else {
      borrow = 0;
    }
    out.set_digit(i, static_cast<Digit>(d));
  }
  if (borrow) throw Error("amount subtraction underflow");
  return out;
}

SparseAmount SparseAmount::from_window(std::size_t start,
                                       std::span<const Digit> window) {
  std::size_t lo = 0, hi = window.size();
  while (lo < hi && window[lo] == 0) ++lo;
  while (hi > lo && window[hi - 1] == 0) --hi;
  SparseAmount a;
  a.msd = lo == hi ? 0 : start + lo;  // zero has one canonical form
  a.digits.assign(window.begin() + static_cast<std::ptrdiff_t>(lo),
                  window.begin() + static_cast<std::ptrdiff_t>(hi));
  return a;
}

std::strong_ordering compare(const SparseAmount& a, const SparseAmount& b) {
  if (a.is_zero() || b.is_zero()) {
    if (a.is_zero() && b.is_zero()) return std::strong_ordering::equal;
    return a.is_zero() ? std::strong_ordering::less
                       : std::strong_ordering::greater;
  }
  if (a.msd != b.msd) return b.msd <=> a.msd;  // lower index = greater value
  const std::size_t n = std::max(a.digits.size(), b.digits.size());
  for (std::size_t t = 0; t < n; ++t) {
    Digit da = t < a.digits.size() ? a.digits[t] : 0;
    Digit db = t < b.digits.size() ? b.digits[t] : 0;
    if (da != db) return da <=> db;
  }
  return std::strong_ordering::equal;
}

bool fits_under(const SparseAmount& c, const BigAmount& w, std::size_t w_msd) {
  if (c.is_zero()) return true;
  if (c.msd < w_msd) return false;  // c has a more significant digit
  if (c.msd > w_msd) return true;
  for (std::size_t t = 0; t < c.digits.size(); ++t) {
    Digit cd = c.digits[t];
    Digit wd = w.digit(c.msd + t);
    if (cd != wd) return cd < wd;
  }
  return true;  // equal through the window, zero afterwards
}

void subtract_in_place(BigAmount& w, const SparseAmount& c) {
  if (c.is_zero()) return;
  if (c.msd + c.digits.size() > w.width())
    throw Error("sparse amount wider than the target");
  std::int64_t borrow = 0;
  for (std::size_t t = c.digits.size(); t-- > 0;) {
    const std::size_t i = c.msd + t;
    std::int64_t d = static_cast<std::int64_t>(w.digit(i)) -
                     static_cast<std::int64_t>(c.digits[t]) - borrow;
    if (d < 0) {
      d += w.base();
      borrow = 1;
    } else {
      borrow = 0;
    }
    w.set_digit(i, static_cast<Digit>(d));
  }
  std::size_t i = c.msd;
  while (borrow) {
    if (i == 0) throw Error("amount subtraction underflow");
    --i;
    if (w.digit(i) == 0) {
      w.set_digit(i, w.base() - 1);
    } else {
      w.set_digit(i, w.digit(i) - 1);
      borrow = 0;
    }
  }
}

BigAmount to_big(const SparseAmount& a, std::size_t width, Digit base) {
  BigAmount out(width, base);
  if (a.is_zero()) return out;
  if (a.msd + a.digits.size() > width)
    throw Error("sparse amount wider than requested width");
  for (std::size_t t = 0; t < a.digits.size(); ++t) {
    if (a.digits[t] >= base) throw Error("sparse digit out of range");
    out.set_digit(a.msd + t, a.digits[t]);
  }
  return out;
}

SparseAmount to_sparse(const BigAmount& a) {
  return SparseAmount::from_window(0, a.digits());
}

BigAmount encode_config(const Configuration& c, int j, const CodeBook& cb,
                        int T) {
  if (j < 1 || j > T)
    throw Error("time step " + std::to_string(j) + " outside 1.." +
                std::to_string(T));
  if (static_cast<int>(c.tape.size()) != T)
    throw Error("configuration tape width differs from the time bound");
  if (c.head < 1 || c.head > T) throw Error("head position out of range");
  const std::size_t width = static_cast<std::size_t>(T) * static_cast<std::size_t>(T);
  BigAmount out(width, cb.base);
  const std::size_t off = static_cast<std::size_t>(j - 1) * static_cast<std::size_t>(T);
  for (int i = 1; i <= T; ++i) {
    const int a = c.cell(i);
    const Digit d = i == c.head
                        ? cb.pair_code(c.state, a)
                        : static_cast<Digit>(
                              cb.symbol_code[static_cast<std::size_t>(a)]);
    out.set_digit(off + static_cast<std::size_t>(i - 1), d);
  }
  return out;
}

DecodedDigit classify_digit(const CodeBook& cb, Digit d) {
  DecodedDigit out;
  if (d == 0) {
    out.kind = DigitKind::Zero;
  } else if (d <= static_cast<Digit>(cb.k)) {
    out.kind = DigitKind::Symbol;
    out.symbol = cb.symbol_of[d];
  } else if (d <= cb.max_pair_code()) {
    out.kind = DigitKind::Pair;
    const int f = static_cast<int>((d - 1) / static_cast<Digit>(cb.k));
    const int g = static_cast<int>(d - static_cast<Digit>(f) *
                                           static_cast<Digit>(cb.k));
    out.state = cb.state_of[static_cast<std::size_t>(f)];
    out.symbol = cb.symbol_of[static_cast<std::size_t>(g)];
  } else {
    out.kind = DigitKind::Invalid;
  }
  return out;
}

std::vector<DecodedDigit> decode_block(const BigAmount& a, int b,
                                       const CodeBook& cb, int T) {
  if (b < 0 || b >= T) throw Error("block index out of range");
  const std::size_t width = static_cast<std::size_t>(T) * static_cast<std::size_t>(T);
  if (a.width() != width) throw Error("amount width is not T*T");
  const std::size_t start = width - static_cast<std::size_t>(b + 1) *
                                        static_cast<std::size_t>(T);
  std::vector<DecodedDigit> out;
  out.reserve(static_cast<std::size_t>(T));
  for (int i = 0; i < T; ++i)
    out.push_back(classify_digit(cb, a.digit(start + static_cast<std::size_t>(i))));
  return out;
}

std::string render_decoded(const TuringMachine& m,
                           std::span<const DecodedDigit> cells) {
  std::ostringstream os;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os << " ";
    switch (cells[i].kind) {
      case DigitKind::Zero: os << "0"; break;
      case DigitKind::Symbol:
        os << m.symbols[static_cast<std::size_t>(cells[i].symbol)];
        break;
      case DigitKind::Pair:
        os << "(" << m.states[static_cast<std::size_t>(cells[i].state)] << " "
           << m.symbols[static_cast<std::size_t>(cells[i].symbol)] << ")";
        break;
      case DigitKind::Invalid: os << "?"; break;
    }
  }
  return os.str();
}

namespace {

void render_digits(std::span<const Digit> digits, std::string& out) {
  std::size_t i = 0;
  bool first = true;
  while (i < digits.size()) {
    if (!first) out += ".";
    first = false;
    if (digits[i] == 0) {
      std::size_t run = 1;
      while (i + run < digits.size() && digits[i + run] == 0) ++run;
      if (run >= 2) {
        out += "0*";
        out += std::to_string(run);
      } else {
        out += "0";
      }
      i += run;
    } else {
      out += std::to_string(digits[i]);
      ++i;
    }
  }
}

std::vector<Digit> parse_digits(std::string_view text, std::size_t width,
                                Digit base) {
  std::vector<Digit> digits;
  digits.reserve(width);
  std::size_t pos = 0;
  while (pos <= text.size() && !text.empty()) {
    std::size_t dot = text.find('.', pos);
    std::string_view tok = text.substr(
        pos, dot == std::string_view::npos ? std::string_view::npos : dot - pos);
    if (tok.empty()) throw Error("empty digit token in amount");
    std::size_t run = 1;
    std::string_view num = tok;
    if (tok.size() >= 2 && tok[0] == '0' && tok[1] == '*') {
      num = tok.substr(2);
      std::size_t parsed = 0;
      for (char c : num) {
        if (c < '0' || c > '9') throw Error("bad zero-run token in amount");
        parsed = parsed * 10 + static_cast<std::size_t>(c - '0');
      }
      if (num.empty() || parsed == 0) throw Error("bad zero-run token in amount");
      run = parsed;
      num = "0";
    }
    std::uint64_t v = 0;
    if (num.empty()) throw Error("empty digit token in amount");
    for (char c : num) {
      if (c < '0' || c > '9') throw Error("bad digit token in amount");
      v = v * 10 + static_cast<std::uint64_t>(c - '0');
      if (v >= base) throw Error("digit out of range in amount");
    }
    for (std::size_t r = 0; r < run; ++r)
      digits.push_back(static_cast<Digit>(v));
    if (dot == std::string_view::npos) break;
    pos = dot + 1;
  }
  if (digits.size() != width)
    throw Error("amount has " + std::to_string(digits.size()) +
                " digits, expected " + std::to_string(width));
  return digits;
}

}  // namespace

std::string render_amount(const BigAmount& a) {
  std::string out;
  render_digits(a.digits(), out);
  return out;
}

BigAmount parse_amount(std::string_view text, std::size_t width, Digit base) {
  return BigAmount::from_digits(parse_digits(text, width, base), base);
}

std::string render_amount(const SparseAmount& a, std::size_t width) {
  if (a.msd + a.digits.size() > width)
    throw Error("sparse amount wider than requested width");
  std::vector<Digit> full(width, 0);
  std::copy(a.digits.begin(), a.digits.end(),
            full.begin() + static_cast<std::ptrdiff_t>(a.msd));
  std::string out;
  render_digits(full, out);
  return out;
}

SparseAmount parse_sparse_amount(std::string_view text, std::size_t width,
                                 Digit base) {
  const std::vector<Digit> digits = parse_digits(text, width, base);
  return SparseAmount::from_window(0, digits);
}

std::string render_amount_hex(const BigAmount& a) {
  if (a.base() == 0 || (a.base() & (a.base() - 1)) != 0)
    throw Error("hex rendering requires a power-of-two base");
  const int m = std::countr_zero(a.base());
  const std::size_t total_bits = a.width() * static_cast<std::size_t>(m);
  const std::size_t pad = (4 - total_bits % 4) % 4;
  std::string out;
  out.reserve(total_bits / 4 + 2);
  std::uint64_t acc = 0;
  int nbits = static_cast<int>(pad);
  static const char* hexd = "0123456789abcdef";
  for (std::size_t i = 0; i < a.width(); ++i) {
    acc = (acc << m) | a.digit(i);
    nbits += m;
    while (nbits >= 4) {
      out += hexd[(acc >> (nbits - 4)) & 0xf];
      nbits -= 4;
      acc &= (1ULL << nbits) - 1;
    }
  }
  const std::size_t first = out.find_first_not_of('0');
  if (first == std::string::npos) return "0";
  return out.substr(first);
}

}  // namespace gcx
