#pragma once

// Compiles (machine, input, T) into a greedy coin change instance. Coins
// carry a uniform name (copy / transition / left-end with their arguments)
// and the enumerator walks the name space in a fixed order, restartable
// from any name. Coin values live in a window of at most 2T digits, so the
// instance stores them sparsely.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gcx/encoding.hpp"
#include "gcx/machine.hpp"

namespace gcx {

enum class CoinKind : std::uint8_t { Copy, Transition, LeftEnd };

struct CoinName {
  CoinKind kind = CoinKind::Copy;
  int q = -1;        // Transition, LeftEnd
  int a_minus = -1;  // Transition
  int a = -1;        // Copy, Transition: symbol under the head
  int a_plus = -1;   // Transition, LeftEnd
  int i = 0;         // Copy: 1..T, Transition: 2..T-1
  int j = 0;         // 1..T

  static CoinName copy(int a, int i, int j) {
    CoinName n;
    n.kind = CoinKind::Copy;
    n.a = a;
    n.i = i;
    n.j = j;
    return n;
  }
  static CoinName transition(int q, int a_minus, int a, int a_plus, int i,
                             int j) {
    return CoinName{CoinKind::Transition, q, a_minus, a, a_plus, i, j};
  }
  static CoinName left_end(int q, int a_plus, int j) {
    CoinName n;
    n.kind = CoinKind::LeftEnd;
    n.q = q;
    n.a_plus = a_plus;
    n.j = j;
    return n;
  }
  friend bool operator==(const CoinName&, const CoinName&) = default;
};

// Fixed total order: kind first (copy < transition < left-end), then the
// argument tuple with states/symbols compared by codebook code.
bool name_less(const CodeBook& cb, const CoinName& x, const CoinName& y);
std::string render_coin_name(const TuringMachine& m, const CoinName& n);

// k*T^2 copy + s*k^3*(T-2)*T transition + (s-2)*k*T left-end names.
std::uint64_t coin_name_count(const CodeBook& cb, int T);

// Emits every valid name exactly once in name order. The enumerator's only
// state is the current name, so it can resume from (and including) any
// valid name.
class CoinEnumerator {
 public:
  CoinEnumerator(const TuringMachine& m, const CodeBook& cb, int T);
  CoinEnumerator(const TuringMachine& m, const CodeBook& cb, int T,
                 const CoinName& resume_at);
  std::optional<CoinName> next();

 private:
  const TuringMachine* m_;
  const CodeBook* cb_;
  int T_;
  std::optional<CoinName> cur_;
};

// Value of a named coin; throws Error for malformed names.
SparseAmount coin_value(const TuringMachine& m, const CodeBook& cb,
                        const CoinName& n, int T);
// The query coin: transition(accept, $, _, _, 2, T).
CoinName query_coin_name(const TuringMachine& m, int T);
SparseAmount query_coin(const TuringMachine& m, const CodeBook& cb, int T);
// The initial change amount for the given input, width T*T.
BigAmount initial_amount(const TuringMachine& m, const CodeBook& cb,
                         std::string_view input, int T);

// The input-independent part of an instance: every coin, sorted strictly
// descending by value (equal values merged, keeping the least name).
struct CoinSet {
  int T = 0;
  CodeBook cb;
  std::uint64_t machine_fp = 0;
  std::vector<CoinName> names;       // parallel to values
  std::vector<SparseAmount> values;  // strictly descending
  std::size_t query_index = 0;
  std::uint64_t names_enumerated = 0;
  std::uint64_t merged_names = 0;

  std::size_t width() const {
    return static_cast<std::size_t>(T) * static_cast<std::size_t>(T);
  }
  const SparseAmount& query_value() const { return values[query_index]; }
};

// Requires a normalized machine (the transition-coin values read delta).
CoinSet compile_coins(const TuringMachine& m, int T);

struct Instance {
  BigAmount W;
  std::shared_ptr<const CoinSet> coins;

  int T() const { return coins->T; }
  const CodeBook& cb() const { return coins->cb; }
};

Instance compile(const TuringMachine& m, std::string_view input, int T);
// Same coin set, different input; for sweeping inputs at one time bound.
Instance make_instance(std::shared_ptr<const CoinSet> coins,
                       const TuringMachine& m, std::string_view input);

// Text format, deterministic byte for byte:
//   T= / B= / m= / machine= headers, W=, query=, then one
//   `name<TAB>value` line per coin in descending value order.
std::string serialize_instance(const TuringMachine& m, const Instance& inst);
void write_instance(const TuringMachine& m, const Instance& inst,
                    const std::string& path);

// An instance read back from disk; names stay opaque strings.
struct LoadedInstance {
  int T = 0;
  Digit base = 0;
  int base_bits = 0;
  std::string machine_fp;
  BigAmount W;
  SparseAmount query;
  std::vector<std::string> names;
  std::vector<SparseAmount> values;  // strictly descending

  std::size_t width() const {
    return static_cast<std::size_t>(T) * static_cast<std::size_t>(T);
  }
};

LoadedInstance parse_instance(std::string_view text,
                              std::string_view origin = "<instance>");
LoadedInstance read_instance(const std::string& path);

}  // namespace gcx
