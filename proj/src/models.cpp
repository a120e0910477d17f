#include "fixgame/models.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace fixgame {

namespace {

struct Word {
  std::string text;
  SourcePos pos;
};

struct Line {
  std::size_t number = 0;
  Word key;                // text before ':' (trimmed), e.g. "atom p"
  std::vector<Word> rest;  // whitespace-separated words after ':'
  std::string tail;        // raw text after ':'
  std::size_t tail_column = 1;
};

std::vector<Word> split_words(std::string_view s, std::size_t line, std::size_t col0) {
  std::vector<Word> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size()) break;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    out.push_back({std::string(s.substr(i, j - i)), {line, col0 + i}});
    i = j;
  }
  return out;
}

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t start = 0, number = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++number;
    raw = raw.substr(0, raw.find('#'));
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    auto words = split_words(raw, number, 1);
    if (!words.empty()) {
      std::size_t colon = raw.find(':');
      if (colon == std::string_view::npos) throw ParseError(words.front().pos, "expected 'key: values'");
      Line l;
      l.number = number;
      auto keys = split_words(raw.substr(0, colon), number, 1);
      if (keys.empty()) throw ParseError({number, colon + 1}, "missing key before ':'");
      l.key.pos = keys.front().pos;
      for (std::size_t k = 0; k < keys.size(); ++k) l.key.text += (k ? " " : "") + keys[k].text;
      l.tail = std::string(raw.substr(colon + 1));
      l.tail_column = colon + 2;
      l.rest = split_words(l.tail, number, l.tail_column);
      out.push_back(std::move(l));
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

// "atom p" -> ("atom", "p")
std::pair<std::string, std::string> key_parts(const Line& l) {
  auto sp = l.key.text.find(' ');
  if (sp == std::string::npos) return {l.key.text, ""};
  return {l.key.text.substr(0, sp), l.key.text.substr(sp + 1)};
}

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  });
}

std::vector<std::string> declare(const Line& l, const char* what) {
  std::vector<std::string> names;
  std::set<std::string> seen;
  for (const auto& w : l.rest) {
    if (!valid_name(w.text)) throw ParseError(w.pos, std::string("invalid ") + what + " name '" + w.text + "'");
    if (!seen.insert(w.text).second) throw ParseError(w.pos, std::string("duplicate ") + what + " " + w.text);
    names.push_back(w.text);
  }
  return names;
}

std::size_t lookup(const std::vector<std::string>& names, const Word& w, const char* what) {
  auto it = std::find(names.begin(), names.end(), w.text);
  if (it == names.end()) throw ParseError(w.pos, std::string("unknown ") + what + " '" + w.text + "'");
  return static_cast<std::size_t>(it - names.begin());
}

std::size_t find_name(const std::vector<std::string>& names, const std::string& n, const char* what) {
  auto it = std::find(names.begin(), names.end(), n);
  if (it == names.end()) throw InvalidArgument(std::string("unknown ") + what + " '" + n + "'");
  return static_cast<std::size_t>(it - names.begin());
}

// "a->b" into its two sides
std::pair<Word, Word> arrow(const Word& w) {
  auto k = w.text.find("->");
  if (k == std::string::npos || k == 0 || k + 2 == w.text.size())
    throw ParseError(w.pos, "expected 'source->target', got '" + w.text + "'");
  return {Word{w.text.substr(0, k), w.pos}, Word{w.text.substr(k + 2), {w.pos.line, w.pos.column + k + 2}}};
}

Rational rational_at(const Word& w) {
  try {
    return parse_rational(w.text);
  } catch (const std::exception&) {
    throw ParseError(w.pos, "malformed number '" + w.text + "'");
  }
}

[[noreturn]] void unknown_key(const Line& l, const char* format) {
  throw ParseError(l.key.pos, "unknown key '" + l.key.text + "' in " + format + " file");
}

void need_states(bool have, const Line& l) {
  if (!have) throw ParseError(l.key.pos, "'" + l.key.text + "' before the 'states:' line");
}

}  // namespace

std::size_t TransitionSystem::index(const std::string& name) const { return find_name(states, name, "state"); }

TransitionSystem parse_ts(std::string_view text) {
  TransitionSystem ts;
  bool have = false;
  for (const auto& l : split_lines(text)) {
    auto [head, arg] = key_parts(l);
    if (head == "states" && arg.empty()) {
      if (have) throw ParseError(l.key.pos, "states declared twice");
      ts.states = declare(l, "state");
      ts.succ.assign(ts.states.size(), {});
      have = true;
    } else if (head == "edges" && arg.empty()) {
      need_states(have, l);
      for (const auto& w : l.rest) {
        auto [a, b] = arrow(w);
        ts.succ[lookup(ts.states, a, "state")].push_back(lookup(ts.states, b, "state"));
      }
    } else if (head == "atom") {
      need_states(have, l);
      if (!valid_name(arg)) throw ParseError(l.key.pos, "expected 'atom NAME:'");
      if (ts.atoms.count(arg)) throw ParseError(l.key.pos, "atom " + arg + " declared twice");
      std::vector<bool> set(ts.states.size());
      for (const auto& w : l.rest) set[lookup(ts.states, w, "state")] = true;
      ts.atoms.emplace(arg, std::move(set));
    } else {
      unknown_key(l, "transition system");
    }
  }
  if (!have) throw ParseError({1, 1}, "missing 'states:' line");
  for (auto& s : ts.succ) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  return ts;
}

std::size_t Nfa::index(const std::string& name) const { return find_name(states, name, "state"); }

std::uint64_t Nfa::step(std::uint64_t X, std::size_t a) const {
  std::uint64_t out = 0;
  for (std::size_t q = 0; X; ++q, X >>= 1)
    if (X & 1u) out |= delta[a][q];
  return out;
}

std::string Nfa::format_set(std::uint64_t X) const {
  std::string out = "{";
  bool first = true;
  for (std::size_t q = 0; q < states.size(); ++q)
    if (X >> q & 1u) {
      out += (first ? "" : ",") + states[q];
      first = false;
    }
  return out + "}";
}

Nfa parse_nfa(std::string_view text) {
  Nfa n;
  bool have = false, have_sigma = false;
  std::vector<Line> trans;
  for (auto& l : split_lines(text)) {
    auto [head, arg] = key_parts(l);
    if (!arg.empty()) unknown_key(l, "NFA");
    if (head == "states") {
      if (have) throw ParseError(l.key.pos, "states declared twice");
      n.states = declare(l, "state");
      if (n.states.size() > 64) throw ParseError(l.rest[64].pos, "at most 64 states are supported");
      have = true;
    } else if (head == "alphabet") {
      if (have_sigma) throw ParseError(l.key.pos, "alphabet declared twice");
      n.alphabet = declare(l, "letter");
      have_sigma = true;
    } else if (head == "final") {
      need_states(have, l);
      for (const auto& w : l.rest) n.finals |= std::uint64_t{1} << lookup(n.states, w, "state");
    } else if (head == "trans") {
      trans.push_back(std::move(l));
    } else {
      unknown_key(l, "NFA");
    }
  }
  if (!have) throw ParseError({1, 1}, "missing 'states:' line");
  if (!have_sigma) throw ParseError({1, 1}, "missing 'alphabet:' line");
  n.delta.assign(n.alphabet.size(), std::vector<std::uint64_t>(n.states.size(), 0));
  for (const auto& l : trans) {
    if (l.rest.size() < 2) throw ParseError(l.key.pos, "expected 'trans: q -a-> q1 q2 ...'");
    std::size_t q = lookup(n.states, l.rest[0], "state");
    const Word& lab = l.rest[1];
    if (lab.text.size() < 4 || lab.text.front() != '-' || lab.text.substr(lab.text.size() - 2) != "->")
      throw ParseError(lab.pos, "expected '-letter->', got '" + lab.text + "'");
    Word letter{lab.text.substr(1, lab.text.size() - 3), {lab.pos.line, lab.pos.column + 1}};
    std::size_t a = lookup(n.alphabet, letter, "letter");
    for (std::size_t k = 2; k < l.rest.size(); ++k)
      n.delta[a][q] |= std::uint64_t{1} << lookup(n.states, l.rest[k], "state");
  }
  return n;
}

std::size_t Pndt::index(const std::string& name) const { return find_name(states, name, "state"); }

Pndt parse_pndt(std::string_view text) {
  Pndt p;
  auto lines = split_lines(text);
  for (const auto& l : lines) {
    auto [head, arg] = key_parts(l);
    if (head != "state") continue;
    if (!valid_name(arg)) throw ParseError(l.key.pos, "expected 'state NAME:'");
    if (std::find(p.states.begin(), p.states.end(), arg) != p.states.end())
      throw ParseError(l.key.pos, "state " + arg + " declared twice");
    p.states.push_back(arg);
  }
  if (p.states.empty()) throw ParseError({1, 1}, "no 'state' lines");
  const std::size_t n = p.states.size();
  p.dists.assign(n, {});
  for (const auto& l : lines) {
    auto [head, arg] = key_parts(l);
    if (head == "state") {
      std::size_t s = find_name(p.states, arg, "state");
      // (w1 s1, w2 s2, ...) (...)
      const std::string& t = l.tail;
      std::size_t i = 0;
      auto col = [&](std::size_t k) { return SourcePos{l.number, l.tail_column + k}; };
      while (true) {
        while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) ++i;
        if (i >= t.size()) break;
        if (t[i] != '(') throw ParseError(col(i), "expected '(' to start a distribution");
        std::size_t close = t.find(')', i);
        if (close == std::string::npos) throw ParseError(col(i), "unclosed distribution");
        std::vector<Rational> d(n);
        Rational sum = 0;
        std::size_t j = i + 1;
        while (j < close) {
          std::size_t comma = std::min(t.find(',', j), close);
          auto words = split_words(std::string_view(t).substr(j, comma - j), l.number, l.tail_column + j);
          if (words.size() != 2) throw ParseError(col(j), "expected 'weight state'");
          Rational w = rational_at(words[0]);
          if (w < 0 || w > 1) throw ParseError(words[0].pos, "weight outside [0,1]");
          d[lookup(p.states, words[1], "state")] += w;
          sum += w;
          j = comma + 1;
        }
        if (sum != 1) throw ParseError(col(i), "distribution sums to " + format_rational(sum) + ", not 1");
        p.dists[s].push_back(std::move(d));
        i = close + 1;
      }
      if (p.dists[s].empty()) throw ParseError(l.key.pos, "state " + arg + " has no distribution");
    } else if (head == "prop") {
      if (!valid_name(arg)) throw ParseError(l.key.pos, "expected 'prop NAME:'");
      if (p.props.count(arg)) throw ParseError(l.key.pos, "prop " + arg + " declared twice");
      std::vector<Rational> v(n);
      for (const auto& w : l.rest) {
        auto eq = w.text.find('=');
        if (eq == std::string::npos) throw ParseError(w.pos, "expected 'state=value'");
        Word st{w.text.substr(0, eq), w.pos};
        Word val{w.text.substr(eq + 1), {w.pos.line, w.pos.column + eq + 1}};
        Rational r = rational_at(val);
        if (r < 0 || r > 1) throw ParseError(val.pos, "value outside [0,1]");
        v[lookup(p.states, st, "state")] = r;
      }
      p.props.emplace(arg, std::move(v));
    } else {
      unknown_key(l, "PNDT");
    }
  }
  return p;
}

std::vector<std::vector<bool>> parse_relation(std::string_view text, const std::vector<std::string>& left,
                                              const std::vector<std::string>& right) {
  std::vector<std::vector<bool>> r(left.size(), std::vector<bool>(right.size()));
  for (const auto& l : split_lines(text)) {
    if (l.key.text != "pairs") unknown_key(l, "relation");
    for (const auto& w : l.rest) {
      auto [a, b] = arrow(w);
      r[lookup(left, a, "state")][lookup(right, b, "state")] = true;
    }
  }
  return r;
}

}  // namespace fixgame
