#include "gcx/verifier.hpp"

#include <algorithm>
#include <sstream>

namespace gcx {

std::string_view to_string(CaseLabel c) {
  switch (c) {
    case CaseLabel::Case1: return "Case1";
    case CaseLabel::Case2: return "Case2";
    case CaseLabel::Case3: return "Case3";
    case CaseLabel::Case4: return "Case4";
    case CaseLabel::FinalBlock: return "FinalBlock";
  }
  return "?";
}

CoinName predict_next_coin(const BigAmount& w, const TuringMachine& m,
                           const CodeBook& cb, int T) {
  const std::size_t width =
      static_cast<std::size_t>(T) * static_cast<std::size_t>(T);
  if (w.width() != width) throw Error("amount width is not T*T");
  const std::size_t p = w.leading_nonzero();
  if (p == w.width()) throw Error("amount is zero");
  const int j = static_cast<int>(p / static_cast<std::size_t>(T)) + 1;
  const int i = static_cast<int>(p % static_cast<std::size_t>(T)) + 1;
  auto at = [&](int pos) {  // 1-based position inside block j
    return w.digit(static_cast<std::size_t>(j - 1) *
                       static_cast<std::size_t>(T) +
                   static_cast<std::size_t>(pos) - 1);
  };

  const DecodedDigit lead = classify_digit(cb, at(i));
  if (lead.kind == DigitKind::Pair) {
    // Head bit leading: only legal on the endmarker with a live state.
    if (i != 1 || lead.symbol != TuringMachine::kEndmarker ||
        m.is_halting(lead.state))
      throw Error("unexpected head bit at position " + std::to_string(i) +
                  " of time step " + std::to_string(j));
    const DecodedDigit nxt = classify_digit(cb, at(2));
    if (nxt.kind != DigitKind::Symbol)
      throw Error("cell 2 is not a symbol at time step " + std::to_string(j));
    return CoinName::left_end(lead.state, nxt.symbol, j);
  }
  if (lead.kind != DigitKind::Symbol)
    throw Error("leading digit is not a configuration code at time step " +
                std::to_string(j));
  if (i + 1 <= T) {
    const DecodedDigit nxt = classify_digit(cb, at(i + 1));
    if (nxt.kind == DigitKind::Pair) {
      // The head bit is adjacent: the next coin moves it.
      if (i + 1 > T - 1)
        throw Error("head bit in the last tape cell has no transition coin");
      const DecodedDigit after = classify_digit(cb, at(i + 2));
      if (after.kind != DigitKind::Symbol)
        throw Error("cell right of the head is not a symbol at time step " +
                    std::to_string(j));
      return CoinName::transition(nxt.state, lead.symbol, nxt.symbol,
                                  after.symbol, i + 1, j);
    }
  }
  return CoinName::copy(lead.symbol, i, j);
}

namespace {

// Case 2 and case 3 both copy; they differ in whether the head bit still
// sits further right in the leading block.
CaseLabel copy_case(const BigAmount& w, const CodeBook& cb, int j, int i,
                    int T) {
  const std::size_t off =
      static_cast<std::size_t>(j - 1) * static_cast<std::size_t>(T);
  for (int pos = i + 1; pos <= T; ++pos) {
    const DecodedDigit d =
        classify_digit(cb, w.digit(off + static_cast<std::size_t>(pos) - 1));
    if (d.kind == DigitKind::Pair) return CaseLabel::Case3;
  }
  return CaseLabel::Case2;
}

std::string dump_leading(const TuringMachine& m, const CodeBook& cb,
                         const BigAmount& w, int T) {
  const std::size_t p = w.leading_nonzero();
  if (p == w.width()) return "0";
  const int j = static_cast<int>(p / static_cast<std::size_t>(T)) + 1;
  std::ostringstream os;
  os << "time " << j << ": "
     << render_decoded(m, decode_block(w, T - j, cb, T));
  if (j < T)
    os << " | time " << j + 1 << ": "
       << render_decoded(m, decode_block(w, T - j - 1, cb, T));
  return os.str();
}

}  // namespace

PairReport verify_pair(const TuringMachine& m, std::string_view input, int T,
                       std::shared_ptr<const CoinSet> coins) {
  const RunResult rr = run(m, input, T);
  if (rr.verdict == Verdict::Timeout)
    throw TimeoutRefusal("run did not halt within " + std::to_string(T) +
                         " steps; refusing to certify");
  if (!coins) coins = std::make_shared<const CoinSet>(compile_coins(m, T));
  if (coins->T != T || coins->machine_fp != fingerprint(m))
    throw Error("coin set was compiled for a different machine or bound");
  const CodeBook& cb = coins->cb;
  const std::span<const SparseAmount> values = coins->values;
  const SparseAmount& cstar = coins->query_value();

  PairReport rep;
  rep.verdict = rr.verdict;
  BigAmount w = initial_amount(m, cb, input, T);
  bool failed = false;
  std::uint64_t global = 0;
  auto fail = [&](const std::string& msg) {
    if (!failed) {
      rep.failure = msg;
      rep.failure_step = global;
      failed = true;
    }
  };

  if (w != encode_config(rr.trace[0], 1, cb, T))
    fail("initial amount does not encode the initial configuration");

  std::optional<std::size_t> final_first_pick;
  for (int j = 1; j <= T && !failed; ++j) {
    const BigAmount target =
        j < T ? encode_config(rr.trace[static_cast<std::size_t>(j)], j + 1, cb,
                              T)
              : BigAmount(coins->width(), cb.base);
    TransitionReport phase;
    phase.j = j;
    while (!failed && compare(w, target) == std::strong_ordering::greater) {
      if (phase.coins_used > 4 * T) {
        fail("phase " + std::to_string(j) + " does not converge");
        break;
      }
      CoinName pred;
      try {
        pred = predict_next_coin(w, m, cb, T);
      } catch (const Error& e) {
        fail(std::string("predictor: ") + e.what() + " [" +
             dump_leading(m, cb, w, T) + "]");
        break;
      }
      const SparseAmount pred_value = coin_value(m, cb, pred, T);
      const auto pick = pick_largest_fitting(values, w, w.leading_nonzero());
      if (!pick) {
        fail("no coin fits under the remaining amount [" +
             dump_leading(m, cb, w, T) + "]");
        break;
      }
      if (compare(pred_value, values[*pick]) != std::strong_ordering::equal) {
        fail("predicted " + render_coin_name(m, pred) + " but greedy chose " +
             render_coin_name(m, coins->names[*pick]) + " [" +
             dump_leading(m, cb, w, T) + "]");
        break;
      }
      ++rep.steps_checked;
      CaseLabel label = CaseLabel::FinalBlock;
      if (j == T) {
        if (!final_first_pick) final_first_pick = *pick;
      } else {
        switch (pred.kind) {
          case CoinKind::LeftEnd: label = CaseLabel::Case1; break;
          case CoinKind::Transition: label = CaseLabel::Case4; break;
          case CoinKind::Copy: label = copy_case(w, cb, pred.j, pred.i, T); break;
        }
      }
      phase.cases.push_back(label);
      ++phase.coins_used;
      if (compare(values[*pick], cstar) == std::strong_ordering::equal) {
        if (rep.cstar_picks == 0) rep.cstar_step = global;
        ++rep.cstar_picks;
      }
      subtract_in_place(w, values[*pick]);
      ++global;
    }
    if (!failed && compare(w, target) != std::strong_ordering::equal)
      fail("phase " + std::to_string(j) +
           " fell past its boundary configuration [" +
           dump_leading(m, cb, w, T) + "]");
    if (!failed && phase.coins_used != T - 1 && phase.coins_used != T - 2)
      fail("phase " + std::to_string(j) + " used " +
           std::to_string(phase.coins_used) + " coins, expected " +
           std::to_string(T - 2) + " or " + std::to_string(T - 1));
    rep.phases.push_back(std::move(phase));
  }

  rep.total_coins = global;
  rep.decision = rep.cstar_picks > 0;
  if (!failed) {
    const bool accepted = rr.verdict == Verdict::Accept;
    std::uint64_t before_final = 0;
    for (const auto& ph : rep.phases)
      if (ph.j < T) before_final += static_cast<std::uint64_t>(ph.coins_used);
    if (accepted != rep.decision)
      fail(std::string("acceptance mismatch: run ") +
           std::string(to_string(rr.verdict)) + " but c* " +
           (rep.decision ? "chosen" : "not chosen"));
    else if (accepted && rep.cstar_picks != 1)
      fail("c* chosen " + std::to_string(rep.cstar_picks) + " times");
    else if (accepted && rep.cstar_step != before_final)
      fail("c* chosen at step " + std::to_string(rep.cstar_step) +
           ", expected the head block of the final configuration");
    if (!failed && !accepted) {
      // The final head block must fall to the reject twin of c*.
      const SparseAmount twin = coin_value(
          m, cb,
          CoinName::transition(m.reject, TuringMachine::kEndmarker, m.blank,
                               m.blank, 2, T),
          T);
      rep.reject_analogue_ok =
          final_first_pick &&
          compare(values[*final_first_pick], twin) ==
              std::strong_ordering::equal;
      if (!rep.reject_analogue_ok)
        fail("rejecting run does not consume the reject head block first");
    }
  }
  rep.certified = !failed;
  return rep;
}

std::vector<TransitionReport> verify_transitions(const TuringMachine& m,
                                                 std::string_view input,
                                                 int T) {
  PairReport rep = verify_pair(m, input, T);
  if (!rep.certified)
    throw VerifyFailure("step " + std::to_string(rep.failure_step) + ": " +
                        rep.failure);
  return std::move(rep.phases);
}

AcceptanceCert verify_acceptance(const TuringMachine& m,
                                 std::string_view input, int T) {
  PairReport rep = verify_pair(m, input, T);
  AcceptanceCert cert;
  cert.verdict = rep.verdict;
  cert.decision = rep.decision;
  cert.ok = rep.certified;
  return cert;
}

std::string render_report(const PairReport& rep) {
  std::ostringstream os;
  for (const auto& ph : rep.phases) {
    os << "j=" << ph.j << " coins=" << ph.coins_used << " cases=";
    std::size_t c = 0;
    bool first = true;
    while (c < ph.cases.size()) {
      std::size_t run = 1;
      while (c + run < ph.cases.size() && ph.cases[c + run] == ph.cases[c])
        ++run;
      if (!first) os << ",";
      first = false;
      os << to_string(ph.cases[c]);
      if (run > 1) os << "x" << run;
      c += run;
    }
    if (ph.cases.empty()) os << "-";
    os << "\n";
  }
  os << "verdict=" << to_string(rep.verdict) << " decision="
     << (rep.decision ? "IN" : "OUT") << " coins=" << rep.total_coins
     << " checked=" << rep.steps_checked << "\n";
  if (rep.certified) {
    os << "CERTIFIED\n";
  } else {
    os << "error: " << rep.failure << "\n";
    os << "FALSIFIED(step=" << rep.failure_step << ")\n";
  }
  return os.str();
}

}  // namespace gcx
