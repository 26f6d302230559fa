#include "gcx/compiler.hpp"

#include <algorithm>
#include <cassert>
#include <fstream>
#include <numeric>
#include <sstream>

namespace gcx {

namespace {

// Argument tuple in comparison/enumeration order, states and symbols as
// codebook codes. Unused slots stay 0 and never influence the order.
struct Key {
  int kind, q, am, a, ap, i, j;
  friend auto operator<=>(const Key&, const Key&) = default;
};

Key key_of(const CodeBook& cb, const CoinName& n) {
  auto sc = [&](int q) { return cb.state_code[static_cast<std::size_t>(q)]; };
  auto yc = [&](int a) { return cb.symbol_code[static_cast<std::size_t>(a)]; };
  switch (n.kind) {
    case CoinKind::Copy:
      return Key{0, 0, 0, yc(n.a), 0, n.i, n.j};
    case CoinKind::Transition:
      return Key{1, sc(n.q), yc(n.a_minus), yc(n.a), yc(n.a_plus), n.i, n.j};
    case CoinKind::LeftEnd:
      return Key{2, sc(n.q), 0, 0, yc(n.a_plus), 0, n.j};
  }
  throw Error("bad coin kind");
}

void check_name(const TuringMachine& m, const CoinName& n, int T) {
  auto sym_ok = [&](int a) { return a >= 0 && a < m.num_symbols(); };
  auto state_ok = [&](int q) { return q >= 0 && q < m.num_states(); };
  bool ok = n.j >= 1 && n.j <= T;
  switch (n.kind) {
    case CoinKind::Copy:
      ok = ok && sym_ok(n.a) && n.i >= 1 && n.i <= T;
      break;
    case CoinKind::Transition:
      ok = ok && state_ok(n.q) && sym_ok(n.a_minus) && sym_ok(n.a) &&
           sym_ok(n.a_plus) && n.i >= 2 && n.i <= T - 1;
      break;
    case CoinKind::LeftEnd:
      ok = ok && state_ok(n.q) && !m.is_halting(n.q) && sym_ok(n.a_plus);
      break;
  }
  if (!ok) throw Error("malformed coin name");
}

}  // namespace

bool name_less(const CodeBook& cb, const CoinName& x, const CoinName& y) {
  return key_of(cb, x) < key_of(cb, y);
}

std::string render_coin_name(const TuringMachine& m, const CoinName& n) {
  auto st = [&](int q) -> const std::string& {
    return m.states[static_cast<std::size_t>(q)];
  };
  auto sy = [&](int a) -> const std::string& {
    return m.symbols[static_cast<std::size_t>(a)];
  };
  std::ostringstream os;
  switch (n.kind) {
    case CoinKind::Copy:
      os << "copy(" << sy(n.a) << "," << n.i << "," << n.j << ")";
      break;
    case CoinKind::Transition:
      os << "trans(" << st(n.q) << "," << sy(n.a_minus) << "," << sy(n.a)
         << "," << sy(n.a_plus) << "," << n.i << "," << n.j << ")";
      break;
    case CoinKind::LeftEnd:
      os << "leftend(" << st(n.q) << "," << sy(n.a_plus) << "," << n.j << ")";
      break;
  }
  return os.str();
}

std::uint64_t coin_name_count(const CodeBook& cb, int T) {
  const auto s = static_cast<std::uint64_t>(cb.s);
  const auto k = static_cast<std::uint64_t>(cb.k);
  const auto t = static_cast<std::uint64_t>(T);
  return k * t * t + s * k * k * k * (t - 2) * t + (s - 2) * k * t;
}

CoinEnumerator::CoinEnumerator(const TuringMachine& m, const CodeBook& cb,
                               int T)
    : m_(&m), cb_(&cb), T_(T) {
  if (T < 3) throw Error("time bound must be at least 3");
  cur_ = CoinName::copy(cb.symbol_of[1], 1, 1);
}

CoinEnumerator::CoinEnumerator(const TuringMachine& m, const CodeBook& cb,
                               int T, const CoinName& resume_at)
    : m_(&m), cb_(&cb), T_(T) {
  if (T < 3) throw Error("time bound must be at least 3");
  check_name(m, resume_at, T);
  cur_ = resume_at;
}

std::optional<CoinName> CoinEnumerator::next() {
  if (!cur_) return std::nullopt;
  const CoinName out = *cur_;
  const CodeBook& cb = *cb_;
  CoinName n = out;

  // Odometer over the key tuple, least significant argument last.
  auto bump_symbol = [&](int& a) {
    const int c = cb.symbol_code[static_cast<std::size_t>(a)];
    if (c == cb.k) return false;
    a = cb.symbol_of[static_cast<std::size_t>(c) + 1];
    return true;
  };
  auto bump_state = [&](int& q, bool skip_halting) {
    int c = cb.state_code[static_cast<std::size_t>(q)];
    while (c < cb.s) {
      ++c;
      const int cand = cb.state_of[static_cast<std::size_t>(c)];
      if (skip_halting && m_->is_halting(cand)) continue;
      q = cand;
      return true;
    }
    return false;
  };
  auto first_nonhalting = [&]() {
    for (int c = 1; c <= cb.s; ++c) {
      const int q = cb.state_of[static_cast<std::size_t>(c)];
      if (!m_->is_halting(q)) return q;
    }
    throw Error("machine has no non-halting state");
  };

  switch (n.kind) {
    case CoinKind::Copy:
      if (n.j < T_) {
        ++n.j;
      } else if (n.i < T_) {
        n.j = 1;
        ++n.i;
      } else if (n.j = 1, n.i = 1, bump_symbol(n.a)) {
        // advanced the symbol
      } else {
        n = CoinName::transition(cb.state_of[1], cb.symbol_of[1],
                                 cb.symbol_of[1], cb.symbol_of[1], 2, 1);
      }
      cur_ = n;
      return out;
    case CoinKind::Transition:
      if (n.j < T_) {
        ++n.j;
      } else if (n.j = 1, n.i < T_ - 1) {
        ++n.i;
      } else if (n.i = 2, bump_symbol(n.a_plus)) {
      } else if (n.a_plus = cb.symbol_of[1], bump_symbol(n.a)) {
      } else if (n.a = cb.symbol_of[1], bump_symbol(n.a_minus)) {
      } else if (n.a_minus = cb.symbol_of[1], bump_state(n.q, false)) {
      } else {
        n = CoinName::left_end(first_nonhalting(), cb.symbol_of[1], 1);
      }
      cur_ = n;
      return out;
    case CoinKind::LeftEnd:
      if (n.j < T_) {
        ++n.j;
      } else if (n.j = 1, bump_symbol(n.a_plus)) {
      } else if (n.a_plus = cb.symbol_of[1], bump_state(n.q, true)) {
      } else {
        cur_ = std::nullopt;
        return out;
      }
      cur_ = n;
      return out;
  }
  throw Error("bad coin kind");
}

SparseAmount coin_value(const TuringMachine& m, const CodeBook& cb,
                        const CoinName& n, int T) {
  check_name(m, n, T);
  const std::size_t bt = static_cast<std::size_t>(T);
  std::vector<Digit> high(bt, 0);  // the block at time step j
  std::vector<Digit> low(bt, 0);   // subtracted block at time step j+1

  auto sym = [&](int a) {
    return static_cast<Digit>(cb.symbol_code[static_cast<std::size_t>(a)]);
  };

  switch (n.kind) {
    case CoinKind::Copy:
      high[static_cast<std::size_t>(n.i - 1)] = sym(n.a);
      low = high;
      break;
    case CoinKind::Transition: {
      const std::size_t p = static_cast<std::size_t>(n.i - 1);
      high[p - 1] = sym(n.a_minus);
      high[p] = cb.pair_code(n.q, n.a);
      high[p + 1] = sym(n.a_plus);
      if (m.is_halting(n.q)) {
        low = high;
      } else {
        const auto& r = m.rule(n.q, n.a);
        if (!r) throw Error("transition coin for an undefined delta entry");
        if (r->dir == Dir::Left) {
          low[p - 1] = cb.pair_code(r->next, n.a_minus);
          low[p] = sym(r->write);
          low[p + 1] = sym(n.a_plus);
        } else {
          low[p - 1] = sym(n.a_minus);
          low[p] = sym(r->write);
          low[p + 1] = cb.pair_code(r->next, n.a_plus);
        }
      }
      break;
    }
    case CoinKind::LeftEnd: {
      high[0] = cb.pair_code(n.q, TuringMachine::kEndmarker);
      high[1] = sym(n.a_plus);
      const auto& r = m.rule(n.q, TuringMachine::kEndmarker);
      if (!r) throw Error("left-end coin for an undefined delta entry");
      low[0] = sym(TuringMachine::kEndmarker);
      low[1] = cb.pair_code(r->next, n.a_plus);
      break;
    }
  }

  const std::size_t start =
      static_cast<std::size_t>(n.j - 1) * static_cast<std::size_t>(T);
  if (n.j == T) {
    // B^((-1)T) counts as zero: the subtracted block disappears.
    return SparseAmount::from_window(start, high);
  }
  std::vector<Digit> window(2 * bt, 0);
  std::copy(high.begin(), high.end(), window.begin());
  std::int64_t borrow = 0;
  for (std::size_t t = 2 * bt; t-- > 0;) {
    const std::int64_t s = t >= bt ? static_cast<std::int64_t>(low[t - bt]) : 0;
    std::int64_t d = static_cast<std::int64_t>(window[t]) - s - borrow;
    if (d < 0) {
      d += cb.base;
      borrow = 1;
    } else {
      borrow = 0;
    }
    window[t] = static_cast<Digit>(d);
  }
  if (borrow) throw Error("internal: negative coin value");
  return SparseAmount::from_window(start, window);
}

CoinName query_coin_name(const TuringMachine& m, int T) {
  return CoinName::transition(m.accept, TuringMachine::kEndmarker, m.blank,
                              m.blank, 2, T);
}

SparseAmount query_coin(const TuringMachine& m, const CodeBook& cb, int T) {
  if (T < 3) throw Error("time bound must be at least 3");
  return coin_value(m, cb, query_coin_name(m, T), T);
}

BigAmount initial_amount(const TuringMachine& m, const CodeBook& cb,
                         std::string_view input, int T) {
  const int n = static_cast<int>(input.size());
  if (T < 3 || T < n + 2)
    throw Error("time bound " + std::to_string(T) +
                " is too small for input length " + std::to_string(n) +
                " (need at least max(3, n+2))");
  const std::size_t width =
      static_cast<std::size_t>(T) * static_cast<std::size_t>(T);
  BigAmount w(width, cb.base);
  // (q0 $) x_1 .. x_n then T-n-1 blanks, in the block of time step 1.
  w.set_digit(0, cb.pair_code(m.start, TuringMachine::kEndmarker));
  for (int c = 0; c < T - 1; ++c) {
    int a;
    if (c < n) {
      a = m.symbol_id(std::string_view(&input[static_cast<std::size_t>(c)], 1));
      if (a < 0 || !m.input_symbol[static_cast<std::size_t>(a)])
        throw Error(std::string("input symbol '") +
                    input[static_cast<std::size_t>(c)] +
                    "' is not in the input alphabet");
    } else {
      a = m.blank;
    }
    w.set_digit(static_cast<std::size_t>(c) + 1,
                static_cast<Digit>(cb.symbol_code[static_cast<std::size_t>(a)]));
  }
  return w;
}

namespace {

// Leading-digit facts the greedy argument leans on; checked for every coin.
// With j < T, expanding the two-block difference leaves: a copy coin with
// code(a)-1 then B-1; a transition coin with a-, (q a), code(a+)-1, B-1;
// a left-end coin with (q $), code(a+)-1, B-1. The single exception is a
// transition coin at T = 3 (i = 2), where no zero digit follows a+ and the
// fourth digit absorbs the update block instead.
void check_shape(const TuringMachine& m, const CodeBook& cb,
                 const CoinName& n, const SparseAmount& v, int T) {
  if (n.j == T) return;
  const std::size_t start =
      static_cast<std::size_t>(n.j - 1) * static_cast<std::size_t>(T);
  auto digit_at = [&](std::size_t block_pos) -> Digit {
    const std::size_t abs = start + block_pos;
    if (abs < v.msd || abs >= v.msd + v.digits.size()) return 0;
    return v.digits[abs - v.msd];
  };
  auto sym = [&](int a) {
    return static_cast<Digit>(cb.symbol_code[static_cast<std::size_t>(a)]);
  };
  const Digit b1 = cb.base - 1;
  bool ok = true;
  switch (n.kind) {
    case CoinKind::Copy:
      ok = digit_at(static_cast<std::size_t>(n.i - 1)) == sym(n.a) - 1 &&
           digit_at(static_cast<std::size_t>(n.i)) == b1;
      break;
    case CoinKind::Transition: {
      const std::size_t p = static_cast<std::size_t>(n.i - 1);
      ok = digit_at(p - 1) == sym(n.a_minus) &&
           digit_at(p) == cb.pair_code(n.q, n.a) &&
           digit_at(p + 1) == sym(n.a_plus) - 1;
      if (!(T == 3 && n.i == 2)) ok = ok && digit_at(p + 2) == b1;
      break;
    }
    case CoinKind::LeftEnd:
      ok = digit_at(0) == cb.pair_code(n.q, TuringMachine::kEndmarker) &&
           digit_at(1) == sym(n.a_plus) - 1 && digit_at(2) == b1;
      break;
  }
  if (!ok)
    throw Error("internal: coin " + render_coin_name(m, n) +
                " violates its leading-digit shape");
}

}  // namespace

CoinSet compile_coins(const TuringMachine& m, int T) {
  if (T < 3) throw Error("time bound must be at least 3");
  validate(m);
  CoinSet cs;
  cs.T = T;
  cs.cb = CodeBook::from_machine(m);
  cs.machine_fp = fingerprint(m);

  // Pair codes clear every symbol code and stay below B-1.
  if (!(cs.cb.k + 1 > cs.cb.k) || cs.cb.max_pair_code() > cs.cb.base - 2)
    throw Error("internal: base too small for the code ranges");

  const std::uint64_t expected = coin_name_count(cs.cb, T);
  if (expected > 20'000'000)
    throw Error("instance would materialize " + std::to_string(expected) +
                " coins; pick a smaller time bound");
  cs.names.reserve(expected);
  cs.values.reserve(expected);
  CoinEnumerator en(m, cs.cb, T);
  while (auto n = en.next()) {
    SparseAmount v = coin_value(m, cs.cb, *n, T);
    if (v.is_zero()) throw Error("internal: zero-valued coin");
    check_shape(m, cs.cb, *n, v, T);
    cs.names.push_back(*n);
    cs.values.push_back(std::move(v));
    ++cs.names_enumerated;
  }
  if (cs.names_enumerated != expected)
    throw Error("internal: enumerated " +
                std::to_string(cs.names_enumerated) + " names, expected " +
                std::to_string(expected));

  std::vector<std::uint32_t> order(cs.names.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
    const auto c = compare(cs.values[x], cs.values[y]);
    if (c != 0) return c > 0;  // descending by value
    return name_less(cs.cb, cs.names[x], cs.names[y]);
  });

  const SparseAmount query = query_coin(m, cs.cb, T);
  const CoinName query_name = query_coin_name(m, T);
  std::vector<CoinName> names;
  std::vector<SparseAmount> values;
  names.reserve(cs.names.size());
  values.reserve(cs.values.size());
  bool query_found = false;
  for (std::uint32_t idx : order) {
    if (!values.empty() && compare(values.back(), cs.values[idx]) == 0) {
      ++cs.merged_names;  // set semantics: equal values collapse
      if (compare(cs.values[idx], query) == 0)
        throw Error("internal: another coin shares the query value");
      continue;
    }
    if (compare(cs.values[idx], query) == 0) {
      if (!(cs.names[idx] == query_name))
        throw Error("internal: query value owned by a different name");
      cs.query_index = values.size();
      query_found = true;
    }
    names.push_back(cs.names[idx]);
    values.push_back(std::move(cs.values[idx]));
  }
  if (!query_found) throw Error("internal: query coin missing from the set");
  cs.names = std::move(names);
  cs.values = std::move(values);
  return cs;
}

Instance compile(const TuringMachine& m, std::string_view input, int T) {
  auto cs = std::make_shared<CoinSet>(compile_coins(m, T));
  BigAmount w = initial_amount(m, cs->cb, input, T);
  return Instance{std::move(w), std::move(cs)};
}

Instance make_instance(std::shared_ptr<const CoinSet> coins,
                       const TuringMachine& m, std::string_view input) {
  BigAmount w = initial_amount(m, coins->cb, input, coins->T);
  return Instance{std::move(w), std::move(coins)};
}

std::string serialize_instance(const TuringMachine& m, const Instance& inst) {
  const CoinSet& cs = *inst.coins;
  std::ostringstream os;
  os << "T=" << cs.T << "\n";
  os << "B=" << cs.cb.base << "\n";
  os << "m=" << cs.cb.base_bits << "\n";
  os << "machine=" << hex64(cs.machine_fp) << "\n";
  os << "W=" << render_amount(inst.W) << "\n";
  os << "query=" << render_amount(cs.query_value(), cs.width()) << "\n";
  for (std::size_t c = 0; c < cs.values.size(); ++c)
    os << render_coin_name(m, cs.names[c]) << "\t"
       << render_amount(cs.values[c], cs.width()) << "\n";
  return os.str();
}

void write_instance(const TuringMachine& m, const Instance& inst,
                    const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << serialize_instance(m, inst);
  if (!out) throw Error("failed writing '" + path + "'");
}

namespace {

std::string_view expect_header(std::string_view& text, std::string_view key,
                               std::string_view origin, int& line) {
  const std::size_t eol = text.find('\n');
  if (eol == std::string_view::npos)
    throw Error(std::string(origin) + ": truncated instance header");
  std::string_view l = text.substr(0, eol);
  text.remove_prefix(eol + 1);
  ++line;
  if (l.substr(0, key.size()) != key)
    throw Error(std::string(origin) + ":" + std::to_string(line) +
                ": expected '" + std::string(key) + "' header");
  return l.substr(key.size());
}

std::uint64_t parse_u64(std::string_view s, std::string_view what) {
  if (s.empty()) throw Error("empty " + std::string(what));
  std::uint64_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw Error("bad " + std::string(what));
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

}  // namespace

LoadedInstance parse_instance(std::string_view text, std::string_view origin) {
  LoadedInstance li;
  int line = 0;
  li.T = static_cast<int>(parse_u64(expect_header(text, "T=", origin, line),
                                    "time bound"));
  li.base = static_cast<Digit>(
      parse_u64(expect_header(text, "B=", origin, line), "base"));
  li.base_bits = static_cast<int>(
      parse_u64(expect_header(text, "m=", origin, line), "base exponent"));
  li.machine_fp = std::string(expect_header(text, "machine=", origin, line));
  if (li.T < 3 || li.base < 4 || (Digit{1} << li.base_bits) != li.base)
    throw Error(std::string(origin) + ": inconsistent instance header");
  const std::size_t width = li.width();
  li.W = parse_amount(expect_header(text, "W=", origin, line), width, li.base);
  li.query = parse_sparse_amount(expect_header(text, "query=", origin, line),
                                 width, li.base);
  bool query_seen = false;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view l =
        text.substr(0, eol == std::string_view::npos ? text.size() : eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    ++line;
    if (l.empty()) continue;
    const std::size_t tab = l.find('\t');
    if (tab == std::string_view::npos)
      throw Error(std::string(origin) + ":" + std::to_string(line) +
                  ": expected 'name<TAB>value'");
    SparseAmount v = parse_sparse_amount(l.substr(tab + 1), width, li.base);
    if (!li.values.empty() && compare(li.values.back(), v) != std::strong_ordering::greater)
      throw Error(std::string(origin) + ":" + std::to_string(line) +
                  ": coin values must strictly descend");
    if (compare(v, li.query) == 0) query_seen = true;
    li.names.emplace_back(l.substr(0, tab));
    li.values.push_back(std::move(v));
  }
  if (li.values.empty())
    throw Error(std::string(origin) + ": instance has no coins");
  if (!query_seen)
    throw Error(std::string(origin) + ": query value is not in the coin set");
  return li;
}

LoadedInstance read_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open instance file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str(), path);
}

}  // namespace gcx
