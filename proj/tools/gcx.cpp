// gcx: compile Turing machines into greedy coin change instances, solve
// them, and certify that the greedy trace replays the machine run.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "gcx/compiler.hpp"
#include "gcx/greedy.hpp"
#include "gcx/machine.hpp"
#include "gcx/verifier.hpp"

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFalsified = 3;
constexpr int kExitTimeout = 4;

struct RunManifest {
  std::string subcommand;
  std::string machine_path;
  std::string instance_path;
  std::string input;
  std::string output_path;
  std::optional<int> time_bound;
  std::optional<double> cm;   // T = ceil(cm * n^ell) when no --time
  std::optional<double> ell;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
};

int resolve_time(const RunManifest& mf, std::size_t n) {
  if (mf.time_bound) return *mf.time_bound;  // explicit bounds are taken as-is
  if (mf.cm && mf.ell) {
    const double raw = *mf.cm * std::pow(static_cast<double>(n), *mf.ell);
    if (!(raw >= 0) || raw > 1e9) throw gcx::Error("time bound out of range");
    // The formula degenerates for tiny n; lift to the structural minimum.
    const int least = std::max<int>(3, static_cast<int>(n) + 2);
    return std::max(static_cast<int>(std::ceil(raw)), least);
  }
  throw gcx::Error("a time bound is required: --time T or --cm C --ell L");
}

gcx::TuringMachine load_normalized(const std::string& path) {
  return gcx::normalize(gcx::parse_tm_file(path));
}

int cmd_compile(const RunManifest& mf) {
  const gcx::TuringMachine m = load_normalized(mf.machine_path);
  const int T = resolve_time(mf, mf.input.size());
  const gcx::Instance inst = gcx::compile(m, mf.input, T);
  gcx::write_instance(m, inst, mf.output_path);
  std::cout << "wrote " << mf.output_path << " (T=" << T << ", "
            << inst.coins->values.size() << " coins)\n";
  return kExitSuccess;
}

int cmd_run_tm(const RunManifest& mf, bool show_trace) {
  const gcx::TuringMachine m = load_normalized(mf.machine_path);
  const int T = resolve_time(mf, mf.input.size());
  const gcx::RunResult r = gcx::run(m, mf.input, T);
  if (show_trace)
    std::cout << gcx::render_run(m, r);
  else
    std::cout << gcx::to_string(r.verdict) << "\n";
  switch (r.verdict) {
    case gcx::Verdict::Accept: return kExitSuccess;
    case gcx::Verdict::Reject: return kExitNegative;
    case gcx::Verdict::Timeout: return kExitTimeout;
  }
  return kExitUsage;
}

// Generic instances are two lines: W=<decimal> and coins=<decimal list>.
bool looks_generic(const std::string& text) {
  return text.rfind("W=", 0) == 0;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw gcx::Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::uint64_t> parse_u64_list(std::string_view s) {
  std::vector<std::uint64_t> out;
  std::uint64_t cur = 0;
  bool have = false;
  for (char c : s) {
    if (c >= '0' && c <= '9') {
      cur = cur * 10 + static_cast<std::uint64_t>(c - '0');
      have = true;
    } else if (c == ',' || c == ' ' || c == '\t') {
      if (have) out.push_back(cur);
      cur = 0;
      have = false;
    } else {
      throw gcx::Error("bad number list");
    }
  }
  if (have) out.push_back(cur);
  return out;
}

int cmd_greedy(const RunManifest& mf, bool decision,
               std::optional<std::uint64_t> generic_query,
               std::optional<std::uint64_t> trace_limit) {
  const std::string text = slurp(mf.instance_path);
  if (looks_generic(text)) {
    std::istringstream in(text);
    std::string wline, cline;
    std::getline(in, wline);
    std::getline(in, cline);
    if (wline.rfind("W=", 0) != 0 || cline.rfind("coins=", 0) != 0)
      throw gcx::Error("generic instance needs 'W=' and 'coins=' lines");
    const auto wlist = parse_u64_list(wline.substr(2));
    if (wlist.size() != 1) throw gcx::Error("'W=' needs one number");
    const std::uint64_t W = wlist.front();
    std::vector<std::uint64_t> coins = parse_u64_list(cline.substr(6));
    if (coins.empty()) throw gcx::Error("'coins=' lists no values");
    std::sort(coins.begin(), coins.end(), std::greater<>());
    coins.erase(std::unique(coins.begin(), coins.end()), coins.end());
    if (decision) {
      if (!generic_query)
        throw gcx::Error("--decision on a generic instance needs --query");
      const bool in_set = gcx::gcc_decision(W, coins, *generic_query);
      std::cout << (in_set ? "IN" : "OUT") << "\n";
      return in_set ? kExitSuccess : kExitNegative;
    }
    const gcx::SmallTrace t = gcx::greedy_set(W, coins);
    std::uint64_t shown = 0;
    for (std::uint64_t v : t.picks) {
      if (trace_limit && shown >= *trace_limit) break;
      std::cout << "step=" << shown << " value=" << v << "\n";
      ++shown;
    }
    std::cout << "picks=" << t.picks.size() << " leftover=" << t.leftover
              << "\n";
    return kExitSuccess;
  }

  const gcx::LoadedInstance li = gcx::parse_instance(text, mf.instance_path);
  if (decision) {
    const bool in_set = gcx::gcc_decision(li.W, li.values, li.query);
    std::cout << (in_set ? "IN" : "OUT") << "\n";
    return in_set ? kExitSuccess : kExitNegative;
  }
  const gcx::GreedyTrace t = gcx::greedy_set(li.W, li.values);
  std::uint64_t shown = 0;
  for (std::size_t s = 0; s < t.picks.size(); ++s) {
    if (trace_limit && shown >= *trace_limit) break;
    std::cout << "step=" << s << " coin=" << li.names[t.picks[s]] << "\n";
    ++shown;
  }
  std::cout << "picks=" << t.picks.size()
            << " leftover=" << gcx::render_amount(t.leftover) << "\n";
  return kExitSuccess;
}

int cmd_verify_one(const RunManifest& mf) {
  const gcx::TuringMachine m = load_normalized(mf.machine_path);
  const int T = resolve_time(mf, mf.input.size());
  try {
    const gcx::PairReport rep = gcx::verify_pair(m, mf.input, T);
    std::cout << gcx::render_report(rep);
    return rep.certified ? kExitSuccess : kExitFalsified;
  } catch (const gcx::TimeoutRefusal& e) {
    std::cout << "REFUSED(timeout): " << e.what() << "\n";
    return kExitTimeout;
  }
}

std::vector<std::string> corpus_inputs(const gcx::TuringMachine& m,
                                       std::optional<int> all_len,
                                       std::optional<std::uint64_t> random_n,
                                       int random_maxlen, std::uint64_t seed) {
  std::string alphabet;
  for (int a = 0; a < m.num_symbols(); ++a)
    if (m.input_symbol[static_cast<std::size_t>(a)])
      alphabet += m.symbols[static_cast<std::size_t>(a)];
  if (alphabet.empty()) throw gcx::Error("machine has an empty input alphabet");
  std::vector<std::string> inputs;
  if (all_len) {
    if (*all_len < 0 || *all_len > 16)
      throw gcx::Error("--all-inputs length must be in 0..16");
    double count = 0;
    for (int l = 0; l <= *all_len; ++l)
      count += std::pow(static_cast<double>(alphabet.size()), l);
    if (count > 2e5) throw gcx::Error("--all-inputs corpus too large");
    std::vector<std::string> level{""};
    inputs.push_back("");
    for (int l = 1; l <= *all_len; ++l) {
      std::vector<std::string> next;
      for (const auto& p : level)
        for (char c : alphabet) next.push_back(p + c);
      inputs.insert(inputs.end(), next.begin(), next.end());
      level = std::move(next);
    }
  }
  if (random_n) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> len(0, random_maxlen);
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    for (std::uint64_t r = 0; r < *random_n; ++r) {
      std::string x;
      const int l = len(rng);
      for (int c = 0; c < l; ++c) x += alphabet[pick(rng)];
      inputs.push_back(std::move(x));
    }
  }
  return inputs;
}

int cmd_verify_corpus(const RunManifest& mf, std::optional<int> all_len,
                      std::optional<std::uint64_t> random_n,
                      int random_maxlen) {
  const gcx::TuringMachine m = load_normalized(mf.machine_path);
  const std::vector<std::string> inputs =
      corpus_inputs(m, all_len, random_n, random_maxlen, mf.seed);

  // One compiled coin set per distinct bound; shared read-only afterwards.
  std::map<int, std::shared_ptr<const gcx::CoinSet>> sets;
  std::vector<int> bounds(inputs.size());
  for (std::size_t v = 0; v < inputs.size(); ++v) {
    bounds[v] = resolve_time(mf, inputs[v].size());
    if (!sets.count(bounds[v]))
      sets[bounds[v]] = std::make_shared<const gcx::CoinSet>(
          gcx::compile_coins(m, bounds[v]));
  }

  struct Row {
    std::string line;
    int code = kExitSuccess;
  };
  std::vector<Row> rows(inputs.size());
  std::atomic<std::size_t> cursor{0};
  auto work = [&] {
    while (true) {
      const std::size_t v = cursor.fetch_add(1);
      if (v >= inputs.size()) return;
      std::ostringstream os;
      os << "[" << v << "] input='" << inputs[v] << "' T=" << bounds[v] << " ";
      try {
        const gcx::PairReport rep =
            gcx::verify_pair(m, inputs[v], bounds[v], sets.at(bounds[v]));
        os << "verdict=" << gcx::to_string(rep.verdict)
           << " decision=" << (rep.decision ? "IN" : "OUT") << " ";
        if (rep.certified) {
          os << "CERTIFIED";
        } else {
          os << "FALSIFIED(step=" << rep.failure_step << ") " << rep.failure;
          rows[v].code = kExitFalsified;
        }
      } catch (const gcx::TimeoutRefusal&) {
        os << "REFUSED(timeout)";
        rows[v].code = kExitTimeout;
      }
      rows[v].line = os.str();
    }
  };
  {
    const unsigned jobs =
        std::max(1u, std::min<unsigned>(mf.jobs, inputs.size()));
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(work);
  }

  std::size_t certified = 0, falsified = 0, refused = 0;
  for (const Row& row : rows) {
    std::cout << row.line << "\n";
    if (row.code == kExitSuccess) ++certified;
    if (row.code == kExitFalsified) ++falsified;
    if (row.code == kExitTimeout) ++refused;
  }
  std::cout << "corpus: " << certified << " certified, " << falsified
            << " falsified, " << refused << " refused\n";
  if (falsified) return kExitFalsified;
  if (refused) return kExitTimeout;
  return kExitSuccess;
}

int cmd_optimal(std::uint64_t W, const std::string& coin_list, bool witness) {
  std::vector<std::uint64_t> coins = parse_u64_list(coin_list);
  std::sort(coins.begin(), coins.end(), std::greater<>());
  coins.erase(std::unique(coins.begin(), coins.end()), coins.end());
  const gcx::DpResult r = gcx::optimal_dp(W, coins);
  std::cout << r.count << "\n";
  if (witness) {
    for (std::size_t i = 0; i < r.witness.size(); ++i)
      std::cout << (i ? " " : "") << r.witness[i];
    std::cout << "\n";
  }
  return kExitSuccess;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"greedy coin change reduction toolkit"};
  app.require_subcommand(1);
  RunManifest mf;

  auto add_time_flags = [&](CLI::App* sub) {
    sub->add_option("--time", mf.time_bound, "explicit time/space bound T");
    sub->add_option("--cm", mf.cm, "constant C in T = ceil(C * n^L)");
    sub->add_option("--ell", mf.ell, "exponent L in T = ceil(C * n^L)");
  };

  CLI::App* compile = app.add_subcommand("compile", "machine -> instance file");
  compile->add_option("machine", mf.machine_path, "machine file")
      ->required();
  compile->add_option("--input", mf.input, "input string")->default_val("");
  compile->add_option("-o,--output", mf.output_path, "instance file to write")
      ->required();
  add_time_flags(compile);

  bool decision = false, witness = false, show_trace = false;
  std::optional<std::uint64_t> trace_limit, generic_query;
  CLI::App* greedy = app.add_subcommand("greedy", "run the greedy solver");
  greedy->add_option("instance", mf.instance_path, "instance file")
      ->required();
  greedy->add_flag("--decision", decision, "print IN/OUT for the query coin");
  greedy->add_option("--query", generic_query,
                     "query value (generic instances only)");
  greedy->add_option("--trace-limit", trace_limit, "print at most N steps");

  std::optional<int> all_len;
  std::optional<std::uint64_t> random_n;
  int random_maxlen = 6;
  CLI::App* verify = app.add_subcommand("verify", "certify machine vs greedy");
  verify->add_option("machine", mf.machine_path, "machine file")
      ->required();
  verify->add_option("--input", mf.input, "input string")->default_val("");
  add_time_flags(verify);
  verify->add_option("--all-inputs", all_len,
                     "corpus mode: every input up to this length");
  auto* seed_opt =
      verify->add_option("--seed", mf.seed, "seed for --random corpus");
  verify->add_option("--random", random_n, "corpus mode: N random inputs")
      ->needs(seed_opt);
  verify->add_option("--max-len", random_maxlen,
                     "max length for --random inputs");
  verify->add_option("--jobs", mf.jobs, "parallel corpus verification");

  CLI::App* run_tm = app.add_subcommand("run-tm", "simulate the machine");
  run_tm->add_option("machine", mf.machine_path, "machine file")
      ->required();
  run_tm->add_option("--input", mf.input, "input string")->default_val("");
  run_tm->add_flag("--trace", show_trace, "print every configuration");
  add_time_flags(run_tm);

  std::uint64_t opt_w = 0;
  std::string opt_coins;
  CLI::App* optimal = app.add_subcommand("optimal", "DP minimum coin count");
  optimal->add_option("--W", opt_w, "target amount")->required();
  optimal->add_option("--coins", opt_coins, "comma separated values")
      ->required();
  optimal->add_flag("--witness", witness, "print one optimal multiset");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (compile->parsed()) return cmd_compile(mf);
    if (greedy->parsed())
      return cmd_greedy(mf, decision, generic_query, trace_limit);
    if (verify->parsed()) {
      if (all_len || random_n)
        return cmd_verify_corpus(mf, all_len, random_n, random_maxlen);
      return cmd_verify_one(mf);
    }
    if (run_tm->parsed()) return cmd_run_tm(mf, show_trace);
    if (optimal->parsed()) return cmd_optimal(opt_w, opt_coins, witness);
  } catch (const gcx::VerifyFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFalsified;
  } catch (const gcx::TimeoutRefusal& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitTimeout;
  } catch (const gcx::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
