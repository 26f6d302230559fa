#include "gcx/machine.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace gcx {

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Accept: return "ACCEPT";
    case Verdict::Reject: return "REJECT";
    case Verdict::Timeout: return "TIMEOUT";
  }
  return "?";
}

int TuringMachine::state_id(std::string_view name) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i] == name) return static_cast<int>(i);
  return -1;
}

int TuringMachine::symbol_id(std::string_view name) const {
  for (std::size_t i = 0; i < symbols.size(); ++i)
    if (symbols[i] == name) return static_cast<int>(i);
  return -1;
}

namespace {

[[noreturn]] void fail_at(std::string_view origin, int line,
                          const std::string& msg) {
  std::ostringstream os;
  os << origin << ":" << line << ": " << msg;
  throw Error(os.str());
}

bool valid_token(std::string_view tok) {
  if (tok.empty()) return false;
  for (char c : tok)
    if (c == ',' || c == '(' || c == ')' || c == '#') return false;
  return true;
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t b = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > b) out.emplace_back(s.substr(b, i - b));
  }
  return out;
}

struct Line {
  int number;
  std::string directive;
  std::vector<std::string> args;
};

}  // namespace

TuringMachine parse_tm(std::string_view text, std::string_view origin) {
  std::vector<Line> lines;
  {
    int no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t eol = text.find('\n', pos);
      std::string_view raw = text.substr(
          pos, eol == std::string_view::npos ? std::string_view::npos
                                             : eol - pos);
      ++no;
      if (auto h = raw.find('#'); h != std::string_view::npos)
        raw = raw.substr(0, h);
      auto toks = split_ws(raw);
      if (!toks.empty()) {
        std::string head = toks.front();
        if (head.back() != ':')
          fail_at(origin, no, "expected a directive ending in ':', got '" +
                                  head + "'");
        head.pop_back();
        lines.push_back(
            {no, head, {toks.begin() + 1, toks.end()}});
      }
      if (eol == std::string_view::npos) break;
      pos = eol + 1;
    }
  }

  TuringMachine m;
  auto find_one = [&](std::string_view name, std::size_t want_args,
                      bool required) -> const Line* {
    const Line* found = nullptr;
    for (const Line& l : lines) {
      if (l.directive != name) continue;
      if (found)
        fail_at(origin, l.number, "duplicate '" + std::string(name) +
                                      ":' directive");
      found = &l;
    }
    if (!found) {
      if (required)
        fail_at(origin, 1, "missing '" + std::string(name) + ":' directive");
      return nullptr;
    }
    if (want_args != 0 && found->args.size() != want_args)
      fail_at(origin, found->number,
              "'" + std::string(name) + ":' takes exactly " +
                  std::to_string(want_args) + " token(s)");
    return found;
  };

  const Line* states = find_one("states", 0, true);
  if (states->args.empty())
    fail_at(origin, states->number, "'states:' lists no states");
  for (const auto& s : states->args) {
    if (!valid_token(s))
      fail_at(origin, states->number, "bad state name '" + s + "'");
    if (m.state_id(s) >= 0)
      fail_at(origin, states->number, "duplicate state '" + s + "'");
    m.states.push_back(s);
  }

  const Line* tape = find_one("tape_alphabet", 0, true);
  if (tape->args.empty() || tape->args[0] != "$")
    fail_at(origin, tape->number, "'tape_alphabet:' must list '$' first");
  for (const auto& s : tape->args) {
    if (!valid_token(s))
      fail_at(origin, tape->number, "bad symbol '" + s + "'");
    if (m.symbol_id(s) >= 0)
      fail_at(origin, tape->number, "duplicate symbol '" + s + "'");
    m.symbols.push_back(s);
  }
  m.blank = m.symbol_id("_");
  if (m.blank < 0)
    fail_at(origin, tape->number, "'tape_alphabet:' must contain the blank '_'");

  m.input_symbol.assign(m.symbols.size(), 0);
  const Line* input = find_one("input_alphabet", 0, true);
  for (const auto& s : input->args) {
    int id = m.symbol_id(s);
    if (id < 0)
      fail_at(origin, input->number,
              "input symbol '" + s + "' is not in the tape alphabet");
    if (id == TuringMachine::kEndmarker || id == m.blank)
      fail_at(origin, input->number,
              "input alphabet may not contain '" + s + "'");
    if (s.size() != 1)
      fail_at(origin, input->number,
              "input symbols must be single characters, got '" + s + "'");
    if (m.input_symbol[static_cast<std::size_t>(id)])
      fail_at(origin, input->number, "duplicate input symbol '" + s + "'");
    m.input_symbol[static_cast<std::size_t>(id)] = 1;
  }

  auto state_arg = [&](const Line* l) {
    int id = m.state_id(l->args[0]);
    if (id < 0)
      fail_at(origin, l->number, "unknown state '" + l->args[0] + "'");
    return id;
  };
  m.start = state_arg(find_one("start", 1, true));
  m.accept = state_arg(find_one("accept", 1, true));
  m.reject = state_arg(find_one("reject", 1, true));

  m.delta.assign(m.states.size() * m.symbols.size(), std::nullopt);
  for (const Line& l : lines) {
    if (l.directive != "delta") continue;
    if (l.args.size() != 6 || l.args[2] != "->")
      fail_at(origin, l.number,
              "expected 'delta: q a -> q2 a2 L|R'");
    int q = m.state_id(l.args[0]);
    if (q < 0) fail_at(origin, l.number, "unknown state '" + l.args[0] + "'");
    int a = m.symbol_id(l.args[1]);
    if (a < 0) fail_at(origin, l.number, "unknown symbol '" + l.args[1] + "'");
    int q2 = m.state_id(l.args[3]);
    if (q2 < 0) fail_at(origin, l.number, "unknown state '" + l.args[3] + "'");
    int a2 = m.symbol_id(l.args[4]);
    if (a2 < 0) fail_at(origin, l.number, "unknown symbol '" + l.args[4] + "'");
    Dir d;
    if (l.args[5] == "L")
      d = Dir::Left;
    else if (l.args[5] == "R")
      d = Dir::Right;
    else
      fail_at(origin, l.number, "direction must be L or R, got '" +
                                    l.args[5] + "'");
    if (m.is_halting(q))
      fail_at(origin, l.number,
              "delta may not be defined for halting state '" + l.args[0] + "'");
    if (m.rule(q, a))
      fail_at(origin, l.number, "delta redefined for (" + l.args[0] + ", " +
                                    l.args[1] + ")");
    m.rule(q, a) = Rule{q2, a2, d};
  }

  for (const Line& l : lines) {
    static const char* known[] = {"states", "start",          "accept",
                                  "reject", "input_alphabet", "tape_alphabet",
                                  "delta"};
    if (std::find(std::begin(known), std::end(known), l.directive) ==
        std::end(known))
      fail_at(origin, l.number, "unknown directive '" + l.directive + ":'");
  }

  validate(m);
  return m;
}

TuringMachine parse_tm_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open machine file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_tm(buf.str(), path);
}

std::string serialize_tm(const TuringMachine& m) {
  std::ostringstream os;
  os << "states:";
  for (const auto& s : m.states) os << " " << s;
  os << "\n";
  os << "start: " << m.states[static_cast<std::size_t>(m.start)] << "\n";
  os << "accept: " << m.states[static_cast<std::size_t>(m.accept)] << "\n";
  os << "reject: " << m.states[static_cast<std::size_t>(m.reject)] << "\n";
  os << "input_alphabet:";
  for (int a = 0; a < m.num_symbols(); ++a)
    if (m.input_symbol[static_cast<std::size_t>(a)])
      os << " " << m.symbols[static_cast<std::size_t>(a)];
  os << "\n";
  os << "tape_alphabet:";
  for (const auto& s : m.symbols) os << " " << s;
  os << "\n";
  for (int q = 0; q < m.num_states(); ++q)
    for (int a = 0; a < m.num_symbols(); ++a)
      if (const auto& r = m.rule(q, a)) {
        os << "delta: " << m.states[static_cast<std::size_t>(q)] << " "
           << m.symbols[static_cast<std::size_t>(a)] << " -> "
           << m.states[static_cast<std::size_t>(r->next)] << " "
           << m.symbols[static_cast<std::size_t>(r->write)] << " "
           << (r->dir == Dir::Left ? "L" : "R") << "\n";
      }
  return os.str();
}

std::uint64_t fingerprint(const TuringMachine& m) {
  return fnv1a64(serialize_tm(m));
}

void validate(const TuringMachine& m) {
  if (m.states.empty()) throw Error("machine has no states");
  if (m.symbols.size() < 2 || m.symbols[0] != "$" || m.blank < 0 ||
      m.symbols[static_cast<std::size_t>(m.blank)] != "_")
    throw Error("tape alphabet must start with '$' and contain '_'");
  auto state_ok = [&](int q) { return q >= 0 && q < m.num_states(); };
  if (!state_ok(m.start) || !state_ok(m.accept) || !state_ok(m.reject))
    throw Error("start/accept/reject must be declared states");
  if (m.accept == m.reject) throw Error("accept and reject states must differ");
  if (m.is_halting(m.start))
    throw Error("start state may not be a halting state");
  if (m.delta.size() !=
      m.states.size() * m.symbols.size())
    throw Error("malformed transition table");
  for (int q = 0; q < m.num_states(); ++q)
    for (int a = 0; a < m.num_symbols(); ++a) {
      const auto& r = m.rule(q, a);
      if (m.is_halting(q)) {
        if (r) throw Error("delta defined for halting state '" +
                           m.states[static_cast<std::size_t>(q)] + "'");
        continue;
      }
      if (r && (r->next < 0 || r->next >= m.num_states() || r->write < 0 ||
                r->write >= m.num_symbols()))
        throw Error("transition out of range");
    }
}

namespace {

void require_total(const TuringMachine& m) {
  for (int q = 0; q < m.num_states(); ++q) {
    if (m.is_halting(q)) continue;
    for (int a = 0; a < m.num_symbols(); ++a)
      if (!m.rule(q, a))
        throw Error("delta is not total: no rule for (" +
                    m.states[static_cast<std::size_t>(q)] + ", " +
                    m.symbols[static_cast<std::size_t>(a)] + ")");
  }
}

std::string fresh_state_name(const TuringMachine& m, std::string base) {
  while (m.state_id(base) >= 0) base += "'";
  return base;
}

}  // namespace

TuringMachine normalize(const TuringMachine& m) {
  validate(m);
  require_total(m);
  for (int q = 0; q < m.num_states(); ++q) {
    if (m.is_halting(q)) continue;
    const Rule& end = *m.rule(q, TuringMachine::kEndmarker);
    if (end.dir == Dir::Left)
      throw Error("machine moves left on the endmarker in state '" +
                  m.states[static_cast<std::size_t>(q)] + "'");
    if (end.write != TuringMachine::kEndmarker)
      throw Error("machine overwrites the endmarker in state '" +
                  m.states[static_cast<std::size_t>(q)] + "'");
    for (int a = 0; a < m.num_symbols(); ++a) {
      if (a == TuringMachine::kEndmarker) continue;
      if (m.rule(q, a)->write == TuringMachine::kEndmarker)
        throw Error("machine writes '$' away from cell 1 in state '" +
                    m.states[static_cast<std::size_t>(q)] + "'");
    }
  }

  TuringMachine n = m;
  // Three ritual states per verdict: walk left to `$`, blank cell 2, blank
  // cell 3 and park the head back on cell 2 in the halting state.
  int walk[2], wipe2[2], wipe3[2];
  const int target[2] = {m.accept, m.reject};
  const char* tag[2] = {"acc", "rej"};
  for (int v = 0; v < 2; ++v) {
    walk[v] = n.num_states();
    n.states.push_back(fresh_state_name(n, std::string("walk_") + tag[v]));
    wipe2[v] = n.num_states();
    n.states.push_back(fresh_state_name(n, std::string("wipe2_") + tag[v]));
    wipe3[v] = n.num_states();
    n.states.push_back(fresh_state_name(n, std::string("wipe3_") + tag[v]));
  }
  n.delta.assign(n.states.size() * n.symbols.size(), std::nullopt);
  for (int q = 0; q < m.num_states(); ++q) {
    if (m.is_halting(q)) continue;
    for (int a = 0; a < m.num_symbols(); ++a) {
      Rule r = *m.rule(q, a);
      for (int v = 0; v < 2; ++v)
        if (r.next == target[v]) r.next = walk[v];
      n.rule(q, a) = r;
    }
  }
  for (int v = 0; v < 2; ++v) {
    for (int a = 0; a < n.num_symbols(); ++a) {
      if (a == TuringMachine::kEndmarker) {
        n.rule(walk[v], a) = Rule{wipe2[v], a, Dir::Right};
        // The wipe states never see cell 1; endmarker rows only keep the
        // transition table total and discipline-compliant.
        n.rule(wipe2[v], a) = Rule{wipe2[v], a, Dir::Right};
        n.rule(wipe3[v], a) = Rule{wipe3[v], a, Dir::Right};
      } else {
        n.rule(walk[v], a) = Rule{walk[v], a, Dir::Left};
        n.rule(wipe2[v], a) = Rule{wipe3[v], n.blank, Dir::Right};
        n.rule(wipe3[v], a) = Rule{target[v], n.blank, Dir::Left};
      }
    }
  }
  validate(n);
  return n;
}

bool is_halting(const TuringMachine& m, const Configuration& c) {
  return m.is_halting(c.state);
}

Configuration initial_config(const TuringMachine& m, std::string_view input,
                             int time_bound) {
  const int n = static_cast<int>(input.size());
  if (time_bound < 3 || time_bound < n + 2)
    throw Error("time bound " + std::to_string(time_bound) +
                " is too small for input length " + std::to_string(n) +
                " (need at least max(3, n+2))");
  Configuration c;
  c.state = m.start;
  c.head = 1;
  c.tape.assign(static_cast<std::size_t>(time_bound), m.blank);
  c.tape[0] = TuringMachine::kEndmarker;
  for (int i = 0; i < n; ++i) {
    int id = m.symbol_id(std::string_view(&input[static_cast<std::size_t>(i)], 1));
    if (id < 0 || !m.input_symbol[static_cast<std::size_t>(id)])
      throw Error(std::string("input symbol '") + input[static_cast<std::size_t>(i)] +
                  "' is not in the input alphabet");
    c.tape[static_cast<std::size_t>(i) + 1] = id;
  }
  return c;
}

Configuration step(const TuringMachine& m, const Configuration& c) {
  if (m.is_halting(c.state)) return c;
  const int T = static_cast<int>(c.tape.size());
  const int read = c.cell(c.head);
  const auto& r = m.rule(c.state, read);
  if (!r)
    throw Error("no transition for (" +
                m.states[static_cast<std::size_t>(c.state)] + ", " +
                m.symbols[static_cast<std::size_t>(read)] + ")");
  Configuration next = c;
  if (c.head == 1 && r->write != TuringMachine::kEndmarker)
    throw Error("transition would overwrite the endmarker");
  next.tape[static_cast<std::size_t>(c.head) - 1] = r->write;
  next.head += r->dir == Dir::Right ? 1 : -1;
  next.state = r->next;
  if (next.head < 1)
    throw Error("head moved left of the endmarker");
  if (next.head > T)
    throw Error("head moved past cell " + std::to_string(T) +
                "; the time bound is too small");
  return next;
}

RunResult run(const TuringMachine& m, std::string_view input, int time_bound) {
  RunResult r;
  r.trace.reserve(static_cast<std::size_t>(time_bound) + 1);
  r.trace.push_back(initial_config(m, input, time_bound));
  for (int t = 0; t < time_bound; ++t) r.trace.push_back(step(m, r.trace.back()));
  const Configuration& last = r.trace[static_cast<std::size_t>(time_bound) - 1];
  if (last.state == m.accept)
    r.verdict = Verdict::Accept;
  else if (last.state == m.reject)
    r.verdict = Verdict::Reject;
  else
    r.verdict = Verdict::Timeout;
  return r;
}

std::string render_configuration(const TuringMachine& m,
                                 const Configuration& c) {
  std::ostringstream os;
  os << "state=" << m.states[static_cast<std::size_t>(c.state)]
     << " head=" << c.head << " tape=";
  for (std::size_t i = 0; i < c.tape.size(); ++i) {
    if (i) os << " ";
    os << m.symbols[static_cast<std::size_t>(c.tape[i])];
  }
  return os.str();
}

std::string render_run(const TuringMachine& m, const RunResult& r) {
  std::ostringstream os;
  for (std::size_t t = 0; t < r.trace.size(); ++t)
    os << "t=" << t << " " << render_configuration(m, r.trace[t]) << "\n";
  os << to_string(r.verdict) << "\n";
  return os.str();
}

}  // namespace gcx
