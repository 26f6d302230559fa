#pragma once

// Certifies compiled instances against direct simulation. A run is walked
// coin by coin: an analytic predictor classifies the remaining amount into
// one of the four intermediate shapes (or the final block) and names the
// coin the greedy solver must take next; the materialized binary-search
// choice has to agree at every step, phase boundaries have to reproduce the
// encoded configurations digit for digit, and the query coin has to be
// picked exactly on accepting runs.

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gcx/compiler.hpp"
#include "gcx/encoding.hpp"
#include "gcx/greedy.hpp"
#include "gcx/machine.hpp"

namespace gcx {

enum class CaseLabel : std::uint8_t { Case1, Case2, Case3, Case4, FinalBlock };

std::string_view to_string(CaseLabel c);

// One simulated phase: phases 1..T-1 carry one machine transition each,
// phase T consumes the final configuration down to zero.
struct TransitionReport {
  int j = 0;
  int coins_used = 0;
  std::vector<CaseLabel> cases;
};

struct PairReport {
  Verdict verdict = Verdict::Timeout;
  bool decision = false;   // c* in the greedy set
  bool certified = false;
  std::string failure;     // first mismatch, empty when certified
  std::uint64_t failure_step = 0;
  std::vector<TransitionReport> phases;
  std::uint64_t steps_checked = 0;  // predictor/solver agreements
  std::uint64_t total_coins = 0;
  std::uint64_t cstar_picks = 0;
  std::uint64_t cstar_step = 0;
  bool reject_analogue_ok = true;
};

// Names the coin the greedy solver must pick from the amount w. Stateless:
// everything is read off the leading nonzero block. Throws Error when w
// matches no expected shape.
CoinName predict_next_coin(const BigAmount& w, const TuringMachine& m,
                           const CodeBook& cb, int T);

// Full certification of one (machine, input, T) run. The machine must be
// normalized. Pass a prebuilt coin set to amortize compilation across
// inputs; it must come from compile_coins(m, T). Throws TimeoutRefusal when
// the run does not halt within T.
PairReport verify_pair(const TuringMachine& m, std::string_view input, int T,
                       std::shared_ptr<const CoinSet> coins = nullptr);

// Phase reports only; throws VerifyFailure on any mismatch.
std::vector<TransitionReport> verify_transitions(const TuringMachine& m,
                                                 std::string_view input,
                                                 int T);

struct AcceptanceCert {
  Verdict verdict = Verdict::Timeout;
  bool decision = false;
  bool ok = false;
};

// Acceptance equivalence: machine accepts iff c* is in the greedy set.
AcceptanceCert verify_acceptance(const TuringMachine& m,
                                 std::string_view input, int T);

// Line-oriented report: one `j=.. coins=.. cases=..` line per phase, then
// CERTIFIED or FALSIFIED(step=..).
std::string render_report(const PairReport& rep);

}  // namespace gcx
