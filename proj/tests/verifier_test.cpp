#include "gcx/verifier.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace gcx;

namespace {

TuringMachine load_normalized(const std::string& name) {
  return normalize(parse_tm_file(std::string(GCX_MACHINES_DIR) + "/" + name));
}

const char* kPingPong = R"(
states: ping pong acc rej
start: ping
accept: acc
reject: rej
input_alphabet: 0 1
tape_alphabet: $ _ 0 1
delta: ping $ -> ping $ R
delta: ping 0 -> pong 0 R
delta: ping 1 -> pong 1 R
delta: ping _ -> pong _ R
delta: pong $ -> pong $ R
delta: pong 0 -> ping 0 L
delta: pong 1 -> ping 1 L
delta: pong _ -> ping _ L
)";

TEST(Predict, InitialAmountNamesTheLeftEndCoin) {
  const TuringMachine m = load_normalized("parity.tm");
  const int T = 12;
  const CodeBook cb = CodeBook::from_machine(m);
  const BigAmount w = initial_amount(m, cb, "11", T);
  const CoinName n = predict_next_coin(w, m, cb, T);
  EXPECT_EQ(n.kind, CoinKind::LeftEnd);
  EXPECT_EQ(n.q, m.start);
  EXPECT_EQ(n.a_plus, m.symbol_id("1"));
  EXPECT_EQ(n.j, 1);
}

TEST(Predict, RejectsShapesOutsideTheCases) {
  const TuringMachine m = load_normalized("parity.tm");
  const int T = 6;
  const CodeBook cb = CodeBook::from_machine(m);
  EXPECT_THROW(predict_next_coin(BigAmount(36, cb.base), m, cb, T), Error);
  // An invalid digit (B-1 can never be a code) in the lead.
  BigAmount junk(36, cb.base);
  junk.set_digit(3, cb.base - 1);
  EXPECT_THROW(predict_next_coin(junk, m, cb, T), Error);
  // A halting head bit on the endmarker has no left-end coin.
  BigAmount stuck(36, cb.base);
  stuck.set_digit(0, cb.pair_code(m.accept, TuringMachine::kEndmarker));
  stuck.set_digit(1, 2);
  EXPECT_THROW(predict_next_coin(stuck, m, cb, T), Error);
}

TEST(VerifyPair, CertifiesAcceptingAndRejectingRuns) {
  const TuringMachine m = load_normalized("parity.tm");
  const int T = 20;
  const PairReport yes = verify_pair(m, "", T);
  EXPECT_TRUE(yes.certified) << yes.failure;
  EXPECT_EQ(yes.verdict, Verdict::Accept);
  EXPECT_TRUE(yes.decision);
  EXPECT_EQ(yes.cstar_picks, 1u);

  const PairReport no = verify_pair(m, "1", T);
  EXPECT_TRUE(no.certified) << no.failure;
  EXPECT_EQ(no.verdict, Verdict::Reject);
  EXPECT_FALSE(no.decision);
  EXPECT_EQ(no.cstar_picks, 0u);
  EXPECT_TRUE(no.reject_analogue_ok);
}

TEST(VerifyPair, PhaseStructureMatchesTheHeadPosition) {
  const TuringMachine m = load_normalized("parity.tm");
  const int T = 20;
  const PairReport rep = verify_pair(m, "11", T);
  ASSERT_TRUE(rep.certified) << rep.failure;
  ASSERT_EQ(rep.phases.size(), static_cast<std::size_t>(T));

  // Head on the endmarker: one left-end coin, then pure copies.
  const TransitionReport& first = rep.phases[0];
  EXPECT_EQ(first.coins_used, T - 1);
  ASSERT_FALSE(first.cases.empty());
  EXPECT_EQ(first.cases[0], CaseLabel::Case1);
  for (std::size_t s = 1; s < first.cases.size(); ++s)
    EXPECT_EQ(first.cases[s], CaseLabel::Case2);

  // Head at cell 2: the transition coin leads, no case-3 prefix.
  const TransitionReport& second = rep.phases[1];
  EXPECT_EQ(second.coins_used, T - 2);
  EXPECT_EQ(second.cases[0], CaseLabel::Case4);

  // Head at cell 3: one copy below the head first (case 3), then the move.
  const TransitionReport& third = rep.phases[2];
  EXPECT_EQ(third.coins_used, T - 2);
  ASSERT_GE(third.cases.size(), 2u);
  EXPECT_EQ(third.cases[0], CaseLabel::Case3);
  EXPECT_EQ(third.cases[1], CaseLabel::Case4);

  std::uint64_t total = 0;
  for (const TransitionReport& ph : rep.phases) {
    EXPECT_TRUE(ph.coins_used == T - 1 || ph.coins_used == T - 2);
    if (ph.j == T) {
      for (CaseLabel c : ph.cases) EXPECT_EQ(c, CaseLabel::FinalBlock);
    }
    total += static_cast<std::uint64_t>(ph.coins_used);
  }
  EXPECT_EQ(total, rep.total_coins);
  EXPECT_GE(total, static_cast<std::uint64_t>(T) * (T - 2));
  EXPECT_LE(total, static_cast<std::uint64_t>(T) * (T - 1));

  // c* is consumed by the first pick of the final block.
  std::uint64_t before_final = total - static_cast<std::uint64_t>(
                                           rep.phases.back().coins_used);
  EXPECT_EQ(rep.cstar_step, before_final);
}

TEST(VerifyPair, WholeCorpusSpotCheck) {
  for (const char* name : {"parity.tm", "contains01.tm", "always_reject.tm"}) {
    const TuringMachine m = load_normalized(name);
    const int T = 18;
    auto cs = std::make_shared<const CoinSet>(compile_coins(m, T));
    for (const std::string& x : {std::string(""), std::string("01"),
                                 std::string("110"), std::string("0011")}) {
      const PairReport rep = verify_pair(m, x, T, cs);
      EXPECT_TRUE(rep.certified) << name << " '" << x << "': " << rep.failure;
      EXPECT_EQ(rep.decision, rep.verdict == Verdict::Accept);
    }
  }
}

TEST(VerifyPair, TamperedCoinSetIsFalsified) {
  const TuringMachine m = load_normalized("parity.tm");
  const int T = 12;
  CoinSet cs = compile_coins(m, T);
  // Drop the very first coin the run needs.
  const CodeBook cb = cs.cb;
  const BigAmount w0 = initial_amount(m, cb, "1", T);
  const SparseAmount needed =
      coin_value(m, cb, predict_next_coin(w0, m, cb, T), T);
  const auto hit = find_value(cs.values, needed);
  ASSERT_TRUE(hit.has_value());
  ASSERT_NE(*hit, cs.query_index);
  cs.values.erase(cs.values.begin() + static_cast<std::ptrdiff_t>(*hit));
  cs.names.erase(cs.names.begin() + static_cast<std::ptrdiff_t>(*hit));
  if (*hit < cs.query_index) --cs.query_index;

  const PairReport rep =
      verify_pair(m, "1", T, std::make_shared<const CoinSet>(std::move(cs)));
  EXPECT_FALSE(rep.certified);
  EXPECT_FALSE(rep.failure.empty());
  EXPECT_EQ(rep.failure_step, 0u);
  EXPECT_NE(rep.failure.find("predicted"), std::string::npos) << rep.failure;
}

TEST(VerifyWrappers, TransitionsAndAcceptance) {
  const TuringMachine m = load_normalized("contains01.tm");
  const auto phases = verify_transitions(m, "001", 18);
  EXPECT_EQ(phases.size(), 18u);

  const AcceptanceCert ok = verify_acceptance(m, "001", 18);
  EXPECT_TRUE(ok.ok);
  EXPECT_EQ(ok.verdict, Verdict::Accept);
  EXPECT_TRUE(ok.decision);

  const AcceptanceCert no = verify_acceptance(m, "110", 18);
  EXPECT_TRUE(no.ok);
  EXPECT_EQ(no.verdict, Verdict::Reject);
  EXPECT_FALSE(no.decision);
}

TEST(VerifyWrappers, TimeoutIsRefusedNotCertified) {
  const TuringMachine m = normalize(parse_tm(kPingPong));
  EXPECT_THROW(verify_pair(m, "1", 10), TimeoutRefusal);
  EXPECT_THROW(verify_acceptance(m, "1", 10), TimeoutRefusal);
}

// Flips every bit while scanning right, then walks back to the endmarker
// before accepting. Real overwrites plus a left walk outside the ritual.
const char* kFlipAndReturn = R"(
states: flip back fin acc rej
start: flip
accept: acc
reject: rej
input_alphabet: 0 1
tape_alphabet: $ _ 0 1
delta: flip $ -> flip $ R
delta: flip 0 -> flip 1 R
delta: flip 1 -> flip 0 R
delta: flip _ -> back _ L
delta: back $ -> fin $ R
delta: back 0 -> back 0 L
delta: back 1 -> back 1 L
delta: back _ -> back _ L
delta: fin $ -> fin $ R
delta: fin 0 -> acc 0 R
delta: fin 1 -> acc 1 R
delta: fin _ -> acc _ R
)";

TEST(VerifyPair, TapeRewritingZigZagCertifies) {
  const TuringMachine m = normalize(parse_tm(kFlipAndReturn));
  const int T = 26;
  auto cs = std::make_shared<const CoinSet>(compile_coins(m, T));
  for (const std::string& x : {std::string("0110"), std::string("10"),
                               std::string("")}) {
    const PairReport rep = verify_pair(m, x, T, cs);
    EXPECT_TRUE(rep.certified) << "'" << x << "': " << rep.failure;
    EXPECT_EQ(rep.verdict, Verdict::Accept);
    EXPECT_TRUE(rep.decision);
  }
}

// Already satisfies both machine disciplines: bounce, wipe cells 2 and 3,
// park on cell 2. Certifies at the structural minimum T = 4.
const char* kInstantAccept = R"(
states: s0 w2 w3 acc rej
start: s0
accept: acc
reject: rej
input_alphabet: 0
tape_alphabet: $ _ 0
delta: s0 $ -> w2 $ R
delta: s0 _ -> w2 _ R
delta: s0 0 -> w2 0 R
delta: w2 $ -> w2 $ R
delta: w2 _ -> w3 _ R
delta: w2 0 -> w3 _ R
delta: w3 $ -> w3 $ R
delta: w3 _ -> acc _ L
delta: w3 0 -> acc _ L
)";

TEST(VerifyPair, MinimalBoundStillCertifies) {
  const TuringMachine m = parse_tm(kInstantAccept);
  const PairReport rep = verify_pair(m, "", 4);
  EXPECT_TRUE(rep.certified) << rep.failure;
  EXPECT_EQ(rep.verdict, Verdict::Accept);
  EXPECT_TRUE(rep.decision);
  for (const TransitionReport& ph : rep.phases)
    EXPECT_TRUE(ph.coins_used == 2 || ph.coins_used == 3);
}

TEST(Greedy, BinarySearchEqualsLinearScanOnCompiledValues) {
  const TuringMachine m = load_normalized("always_reject.tm");
  const int T = 6;
  auto cs = std::make_shared<const CoinSet>(compile_coins(m, T));
  const Instance inst = make_instance(cs, m, "1101");
  const GreedyTrace trace = greedy_set(inst.W, cs->values);
  EXPECT_TRUE(trace.leftover.is_zero());
  BigAmount w = inst.W;
  for (std::size_t s = 0; s < trace.picks.size(); ++s) {
    // Linear scan for the largest fitting coin.
    std::optional<std::size_t> best;
    for (std::size_t c = 0; c < cs->values.size(); ++c) {
      if (!fits_under(cs->values[c], w, w.leading_nonzero())) continue;
      if (!best || compare(cs->values[c], cs->values[*best]) ==
                       std::strong_ordering::greater)
        best = c;
    }
    ASSERT_TRUE(best.has_value());
    EXPECT_EQ(*best, trace.picks[s]) << "step " << s;
    subtract_in_place(w, cs->values[*best]);
    EXPECT_EQ(w, trace.remaining[s]);
  }
}

TEST(Report, RendersPhasesAndVerdict) {
  const TuringMachine m = load_normalized("always_reject.tm");
  const PairReport rep = verify_pair(m, "0", 12);
  ASSERT_TRUE(rep.certified) << rep.failure;
  const std::string text = render_report(rep);
  EXPECT_NE(text.find("j=1 coins=11 cases=Case1,Case2x10"), std::string::npos)
      << text;
  EXPECT_NE(text.find("CERTIFIED"), std::string::npos);
  EXPECT_NE(text.find("decision=OUT"), std::string::npos);
}

}  // namespace
