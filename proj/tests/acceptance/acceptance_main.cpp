// Acceptance suite: every criterion below prints exactly one PASS/FAIL
// line; the process exits nonzero if any criterion fails.

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <vector>

#include "gcx/compiler.hpp"
#include "gcx/greedy.hpp"
#include "gcx/machine.hpp"
#include "gcx/verifier.hpp"

using namespace gcx;
using bigint = boost::multiprecision::cpp_int;

namespace {

struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define CHECK(cond, msg)                                                 \
  do {                                                                   \
    if (!(cond)) {                                                       \
      std::ostringstream os_;                                            \
      os_ << msg << " (" << #cond << " at line " << __LINE__ << ")";     \
      throw CheckFailure(os_.str());                                     \
    }                                                                    \
  } while (0)

#define EXPECT_THROW_BELOW(expr, msg)            \
  do {                                           \
    bool threw_ = false;                         \
    try {                                        \
      (void)(expr);                              \
    } catch (const Error&) {                     \
      threw_ = true;                             \
    }                                            \
    CHECK(threw_, msg);                          \
  } while (0)

TuringMachine load_normalized(const std::string& name) {
  return normalize(parse_tm_file(std::string(GCX_MACHINES_DIR) + "/" + name));
}

std::vector<std::string> all_binary_inputs(int max_len) {
  std::vector<std::string> out{""};
  std::vector<std::string> level{""};
  for (int l = 1; l <= max_len; ++l) {
    std::vector<std::string> next;
    for (const auto& p : level)
      for (char c : {'0', '1'}) next.push_back(p + c);
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

bool parity_truth(const std::string& x) {
  return std::count(x.begin(), x.end(), '1') % 2 == 0;
}
bool contains01_truth(const std::string& x) {
  return x.find("01") != std::string::npos;
}
bool reject_truth(const std::string&) { return false; }

struct CorpusStats {
  std::size_t pairs = 0;
  std::size_t certified = 0;
  std::size_t equivalence_ok = 0;
  std::size_t phase_count_ok = 0;
  std::size_t phases_total = 0;
  std::uint64_t predictor_steps = 0;
  std::size_t totals_in_bounds = 0;
  std::string first_failure;
  int T = 0;
};

// One pass over the whole corpus feeds criteria 1-3.
const CorpusStats& corpus() {
  static const CorpusStats stats = [] {
    CorpusStats st;
    const int T = 24;
    st.T = T;
    const std::vector<std::string> inputs = all_binary_inputs(6);
    const std::vector<
        std::pair<std::string, std::function<bool(const std::string&)>>>
        machines = {{"parity.tm", parity_truth},
                    {"contains01.tm", contains01_truth},
                    {"always_reject.tm", reject_truth}};
    for (const auto& [name, truth] : machines) {
      const TuringMachine m = load_normalized(name);
      auto cs = std::make_shared<const CoinSet>(compile_coins(m, T));
      for (const std::string& x : inputs) {
        const PairReport rep = verify_pair(m, x, T, cs);
        ++st.pairs;
        if (rep.certified) ++st.certified;
        if (!rep.certified && st.first_failure.empty())
          st.first_failure = name + " '" + x + "': " + rep.failure;
        const bool expect = truth(x);
        if (rep.decision == expect &&
            (rep.verdict == Verdict::Accept) == expect)
          ++st.equivalence_ok;
        else if (st.first_failure.empty())
          st.first_failure = name + " '" + x + "': wrong verdict/decision";
        for (const TransitionReport& ph : rep.phases) {
          ++st.phases_total;
          if (ph.coins_used == T - 1 || ph.coins_used == T - 2)
            ++st.phase_count_ok;
        }
        st.predictor_steps += rep.steps_checked;
        if (rep.total_coins >= static_cast<std::uint64_t>(T) * (T - 2) &&
            rep.total_coins <= static_cast<std::uint64_t>(T) * (T - 1))
          ++st.totals_in_bounds;
      }
    }
    return st;
  }();
  return stats;
}

// 1. Acceptance equivalence over the corpus, all inputs up to length 6.
std::string criterion_acceptance() {
  const CorpusStats& st = corpus();
  CHECK(st.pairs == 3 * 127, "corpus size");
  CHECK(st.certified == st.pairs, "uncertified pair: " + st.first_failure);
  CHECK(st.equivalence_ok == st.pairs,
        "equivalence failure: " + st.first_failure);
  std::ostringstream os;
  os << st.pairs << " pairs, 3 machines, inputs <= 6, T=" << st.T;
  return os.str();
}

// 2. Every phase takes T-1 or T-2 coins, boundaries land digit-exact,
//    leftover is zero.
std::string criterion_transitions() {
  const CorpusStats& st = corpus();
  CHECK(st.certified == st.pairs,
        "boundary/leftover failure: " + st.first_failure);
  CHECK(st.phase_count_ok == st.phases_total, "phase with a wrong coin count");
  CHECK(st.totals_in_bounds == st.pairs, "total coin count out of bounds");
  std::ostringstream os;
  os << st.phases_total << " phases across " << st.pairs << " runs";
  return os.str();
}

// 3. The analytic predictor matches the binary-search choice at every step.
std::string criterion_predictor() {
  const CorpusStats& st = corpus();
  CHECK(st.predictor_steps >= 10000, "fewer than 10^4 steps exercised");
  CHECK(st.certified == st.pairs,
        "predictor mismatch: " + st.first_failure);
  std::ostringstream os;
  os << st.predictor_steps << " steps, 100% agreement";
  return os.str();
}

// 4. Pair codes clear symbol codes and stay below B-1, for every codebook
//    with 1 <= s <= 8, 2 <= k <= 8.
std::string criterion_codebooks() {
  int checked = 0;
  for (int s = 1; s <= 8; ++s)
    for (int k = 2; k <= 8; ++k) {
      const CodeBook cb = CodeBook::for_sizes(s, k);
      const Digit min_pair = static_cast<Digit>(k) + 1;
      const Digit max_symbol = static_cast<Digit>(k);
      CHECK(min_pair > max_symbol, "pair codes must clear symbol codes");
      CHECK(cb.max_pair_code() <= cb.base - 2, "codes must stay below B-1");
      CHECK(cb.base >= static_cast<Digit>((s + 1) * k + 2), "base too small");
      CHECK((cb.base & (cb.base - 1)) == 0, "base must be a power of two");
      ++checked;
    }
  return std::to_string(checked) + " codebooks, exhaustive";
}

bigint oracle_value(const BigAmount& a) {
  bigint v = 0;
  for (std::size_t i = 0; i < a.width(); ++i) {
    v *= a.base();
    v += a.digit(i);
  }
  return v;
}

// 5. Fixed-width arithmetic against an independent big integer.
std::string criterion_arithmetic() {
  std::mt19937_64 rng(20240811);
  const int rounds = 100000;
  int at_max_width = 0;
  for (int round = 0; round < rounds; ++round) {
    const int mbits = 1 + static_cast<int>(rng() % 16);
    const Digit base = Digit{1} << mbits;
    std::size_t width;
    if (round % 500 == 0) {
      width = 3600;
      ++at_max_width;
    } else if (round % 7 == 0) {
      width = 257 + rng() % 768;
    } else {
      width = 1 + rng() % 256;
    }
    BigAmount a(width, base), b(width, base);
    for (std::size_t i = 0; i < width; ++i) {
      a.set_digit(i, static_cast<Digit>(rng() % base));
      b.set_digit(i, static_cast<Digit>(rng() % base));
    }
    const bigint va = oracle_value(a), vb = oracle_value(b);
    CHECK((compare(a, b) == std::strong_ordering::less) == (va < vb),
          "compare disagrees with the oracle");
    CHECK((compare(a, b) == std::strong_ordering::equal) == (va == vb),
          "equality disagrees with the oracle");
    const BigAmount& hi = va >= vb ? a : b;
    const BigAmount& lo = va >= vb ? b : a;
    const BigAmount diff = subtract(hi, lo);
    CHECK(oracle_value(diff) == (va >= vb ? va - vb : vb - va),
          "subtract disagrees with the oracle");
    std::ostringstream hex;
    hex << std::hex << va;
    CHECK(render_amount_hex(a) == hex.str(),
          "hex rendering disagrees with the oracle");
    CHECK(parse_amount(render_amount(a), width, base) == a,
          "canonical rendering does not round-trip");
    if (width <= 64) {
      // Digit extraction straight from the integer value.
      bigint v = va;
      for (std::size_t i = width; i-- > 0;) {
        CHECK(static_cast<Digit>(v % base) == a.digit(i),
              "digit extraction disagrees");
        v /= base;
      }
      CHECK(v == 0, "leftover value after digit extraction");
    }
  }
  std::ostringstream os;
  os << rounds << " pairs, " << at_max_width << " at width 3600";
  return os.str();
}

// 6. Greedy never beats the DP optimum; equality on the canonical system.
std::string criterion_greedy_vs_dp() {
  std::mt19937_64 rng(424242);
  for (int round = 0; round < 500; ++round) {
    std::vector<std::uint64_t> coins{1};
    const int extra = static_cast<int>(rng() % 8);  // at most 8 values total
    for (int c = 0; c < extra && coins.size() < 8; ++c)
      coins.push_back(2 + rng() % 499);
    std::sort(coins.begin(), coins.end(), std::greater<>());
    coins.erase(std::unique(coins.begin(), coins.end()), coins.end());
    const std::uint64_t W = rng() % 501;
    const SmallTrace g = greedy_set(W, coins);
    const DpResult d = optimal_dp(W, coins);
    CHECK(g.leftover == 0, "a unit coin forces a zero leftover");
    CHECK(g.picks.size() >= d.count, "greedy beat the optimum");
  }
  std::vector<std::uint64_t> usd{25, 10, 5, 1};
  for (std::uint64_t W = 0; W <= 200; ++W)
    CHECK(greedy_set(W, usd).picks.size() == optimal_dp(W, usd).count,
          "greedy must be optimal on {1,5,10,25} at W=" + std::to_string(W));
  return "500 random instances; {1,5,10,25} exhaustive to 200";
}

// 7. Byte-identical recompilation and the closed-form name count.
std::string criterion_determinism() {
  const TuringMachine m = load_normalized("parity.tm");
  const int T = 8;
  const Instance a = compile(m, "10", T);
  const Instance b = compile(m, "10", T);
  const std::string sa = serialize_instance(m, a);
  const std::string sb = serialize_instance(m, b);
  CHECK(sa == sb, "recompilation changed bytes");
  const CodeBook& cb = a.cb();
  const std::uint64_t expected =
      static_cast<std::uint64_t>(cb.k) * T * T +
      static_cast<std::uint64_t>(cb.s) * cb.k * cb.k * cb.k * (T - 2) * T +
      static_cast<std::uint64_t>(cb.s - 2) * cb.k * T;
  CHECK(a.coins->names_enumerated == expected,
        "name count deviates from the closed form");
  CHECK(coin_name_count(cb, T) == expected, "closed form helper deviates");
  std::ostringstream os;
  os << sa.size() << " bytes, " << expected << " names before dedup";
  return os.str();
}

// 8. Degenerate inputs: empty string, minimum bound, reject path, timeout
//    refusal.
std::string criterion_degenerate() {
  const TuringMachine parity = load_normalized("parity.tm");
  const PairReport empty = verify_pair(parity, "", 24);
  CHECK(empty.certified && empty.verdict == Verdict::Accept,
        "empty input must certify as accepting");

  // T = n + 2: construction works (exactly one blank) and the compiler
  // still emits an instance, but the bound is too tight for the ritual.
  const std::string x = "0101";
  const int tight = static_cast<int>(x.size()) + 2;
  const Configuration c0 = initial_config(parity, x, tight);
  CHECK(c0.tape.back() == parity.blank, "last cell must be blank");
  CHECK(c0.cell(tight - 1) != parity.blank, "exactly one blank expected");
  const Instance inst = compile(parity, x, tight);
  CHECK(!inst.coins->values.empty(), "instance must still be emitted");
  EXPECT_THROW_BELOW(run(parity, x, tight),
                     "the scan must run off a bound this tight");
  CHECK(initial_config(parity, "", 3).tape.size() == 3, "T >= 3 floor");

  // A run that exhausts the bound without escaping the tape is refused.
  const TuringMachine rejector = load_normalized("always_reject.tm");
  CHECK(run(rejector, "0", 3).verdict == Verdict::Timeout,
        "the minimum bound cannot fit the halting ritual");
  bool refused = false;
  try {
    verify_pair(rejector, "0", 3);
  } catch (const TimeoutRefusal&) {
    refused = true;
  }
  CHECK(refused, "timeout must be refused, not certified");

  const PairReport rej = verify_pair(rejector, "01", 24);
  CHECK(rej.certified && rej.verdict == Verdict::Reject && !rej.decision,
        "reject path must certify with c* left out");
  CHECK(rej.reject_analogue_ok, "reject twin must take the head block");
  return "empty input, T=n+2, reject path, timeout refusal";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<std::string()>>>
      criteria = {
          {"acceptance-equivalence", criterion_acceptance},
          {"transition-structure", criterion_transitions},
          {"case-analysis-oracle", criterion_predictor},
          {"encoding-code-ranges", criterion_codebooks},
          {"arithmetic-cross-check", criterion_arithmetic},
          {"greedy-vs-optimal", criterion_greedy_vs_dp},
          {"determinism", criterion_determinism},
          {"degenerate-coverage", criterion_degenerate},
      };
  bool all_pass = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string note;
    bool pass = true;
    try {
      note = criteria[i].second();
    } catch (const std::exception& e) {
      pass = false;
      note = e.what();
    }
    all_pass = all_pass && pass;
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << (i + 1) << ". "
              << criteria[i].first << ": " << note << "\n";
  }
  return all_pass ? 0 : 1;
}
