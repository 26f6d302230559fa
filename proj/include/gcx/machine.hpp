#pragma once

// Deterministic single-tape Turing machines: text-format parsing,
// well-formedness validation, normalization to the endmarker / halting-ritual
// discipline, and direct step-by-step simulation.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gcx/common.hpp"

namespace gcx {

enum class Dir : std::uint8_t { Left, Right };

enum class Verdict : std::uint8_t { Accept, Reject, Timeout };

std::string_view to_string(Verdict v);

struct Rule {
  int next = -1;
  int write = -1;
  Dir dir = Dir::Right;
  friend bool operator==(const Rule&, const Rule&) = default;
};

// States and tape symbols are interned; all operations work on ids.
// Symbol id 0 is always the left endmarker `$`; the blank symbol is `_`.
struct TuringMachine {
  std::vector<std::string> states;     // declaration order
  std::vector<std::string> symbols;    // tape alphabet; symbols[0] == "$"
  std::vector<char> input_symbol;      // per symbol id
  int start = -1;
  int accept = -1;
  int reject = -1;
  int blank = -1;
  std::vector<std::optional<Rule>> delta;  // indexed q * symbols.size() + a

  static constexpr int kEndmarker = 0;

  int num_states() const { return static_cast<int>(states.size()); }
  int num_symbols() const { return static_cast<int>(symbols.size()); }
  bool is_halting(int q) const { return q == accept || q == reject; }

  const std::optional<Rule>& rule(int q, int a) const {
    return delta[static_cast<std::size_t>(q) * symbols.size() +
                 static_cast<std::size_t>(a)];
  }
  std::optional<Rule>& rule(int q, int a) {
    return delta[static_cast<std::size_t>(q) * symbols.size() +
                 static_cast<std::size_t>(a)];
  }

  int state_id(std::string_view name) const;   // -1 if unknown
  int symbol_id(std::string_view name) const;  // -1 if unknown
};

// Parses the line-oriented machine format:
//   states: <name>...
//   start: <name>
//   accept: <name>
//   reject: <name>
//   input_alphabet: <sym>...
//   tape_alphabet: $ _ <sym>...
//   delta: q a -> q' a' L|R
// `#` starts a comment. Errors mention <origin>:<line>.
TuringMachine parse_tm(std::string_view text, std::string_view origin = "<tm>");
TuringMachine parse_tm_file(const std::string& path);

// Canonical text form: directive order fixed, deltas sorted by (state,
// symbol) id. parse_tm(serialize_tm(m)) reproduces m exactly.
std::string serialize_tm(const TuringMachine& m);
std::uint64_t fingerprint(const TuringMachine& m);

// Structural well-formedness; throws Error on the first violation.
void validate(const TuringMachine& m);

// Returns a machine that additionally walks the head back to `$`, blanks
// cells 2 and 3 and parks the head over cell 2 before entering a halting
// state. Requires the source machine to bounce right off `$` without
// rewriting it and to never write `$` elsewhere; throws Error otherwise.
TuringMachine normalize(const TuringMachine& m);

struct Configuration {
  int state = -1;
  int head = 1;           // 1-based
  std::vector<int> tape;  // tape[0] = cell 1 (the endmarker)

  int cell(int i) const { return tape[static_cast<std::size_t>(i) - 1]; }
  friend bool operator==(const Configuration&, const Configuration&) = default;
};

bool is_halting(const TuringMachine& m, const Configuration& c);

// Tape `$ x_1..x_n _.._` of exactly time_bound cells, head on the endmarker.
// Input symbols are single characters; requires time_bound >= max(3, n+2).
Configuration initial_config(const TuringMachine& m, std::string_view input,
                             int time_bound);

// One transition; halting configurations map to themselves. Throws when the
// head would leave [1, T] or the endmarker would be rewritten.
Configuration step(const TuringMachine& m, const Configuration& c);

struct RunResult {
  Verdict verdict = Verdict::Timeout;
  std::vector<Configuration> trace;  // exactly time_bound + 1 entries
};

// trace[t] is the configuration after t steps. The verdict reflects the
// first time_bound configurations (trace[0..T-1]): accept/reject if a
// halting state appears there, timeout otherwise.
RunResult run(const TuringMachine& m, std::string_view input, int time_bound);

std::string render_configuration(const TuringMachine& m,
                                 const Configuration& c);
std::string render_run(const TuringMachine& m, const RunResult& r);

}  // namespace gcx
