#include "ifo/instance_format.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <tuple>
#include <vector>

namespace ifo {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& reason)
    : std::runtime_error("line " + std::to_string(line) +
                         (column ? ", column " + std::to_string(column) : std::string()) + ": " +
                         reason),
      line_(line),
      column_(column),
      reason_(reason) {}

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

enum class Section { none, events, transitions, secret, nonsecret };

std::optional<Section> section_keyword(std::string_view word) {
  if (word == "events") return Section::events;
  if (word == "transitions") return Section::transitions;
  if (word == "secret") return Section::secret;
  if (word == "nonsecret") return Section::nonsecret;
  return std::nullopt;
}

class Parser {
 public:
  IfoInstance run(std::string_view text) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      ++line_;
      handle(tokenize(text.substr(pos, end - pos)));
      pos = end + 1;
    }
    if (!states_) throw ParseError(line_, 0, "missing 'states' header");

    Nfa a(*states_, alphabet_);
    for (const auto& [q, e, r] : transitions_) a.add_transition(q, e, r);
    return IfoInstance(std::move(a), std::move(secret_), std::move(nonsecret_));
  }

 private:
  void handle(const std::vector<Token>& t) {
    if (t.empty()) return;
    if (t[0].text == "states") {
      if (t.size() != 2) fail(t[0], "expected 'states N'");
      if (states_) fail(t[0], "duplicate 'states' header");
      states_ = number(t[1]);
      return;
    }
    if (auto s = section_keyword(t[0].text); s && t.size() == 1) {
      if (!states_) fail(t[0], "'states' header must come first");
      if (seen_[static_cast<int>(*s)]) fail(t[0], "duplicate section '" + std::string(t[0].text) + "'");
      if (*s == Section::transitions && !seen_[static_cast<int>(Section::events)])
        fail(t[0], "'events' must precede 'transitions'");
      seen_[static_cast<int>(*s)] = true;
      section_ = *s;
      return;
    }
    switch (section_) {
      case Section::none:
        fail(t[0], "unknown section '" + std::string(t[0].text) + "'");
      case Section::events:
        event(t);
        return;
      case Section::transitions:
        transition(t);
        return;
      case Section::secret:
        secret_.push_back(pair(t));
        return;
      case Section::nonsecret:
        nonsecret_.push_back(pair(t));
        return;
    }
  }

  void event(const std::vector<Token>& t) {
    if (t.size() != 2) fail(t[0], "expected '<name> obs|unobs'");
    const std::string name(t[0].text);
    if (name == "states" || section_keyword(name)) fail(t[0], "event name '" + name + "' is reserved");
    if (alphabet_.find(name)) fail(t[0], "duplicate event '" + name + "'");
    bool observable;
    if (t[1].text == "obs")
      observable = true;
    else if (t[1].text == "unobs")
      observable = false;
    else
      fail(t[1], "expected 'obs' or 'unobs'");
    alphabet_.add(name, observable);
  }

  void transition(const std::vector<Token>& t) {
    if (t.size() != 3) fail(t[0], "expected '<src> <event> <dst>'");
    const State q = state(t[0]);
    const auto e = alphabet_.find(t[1].text);
    if (!e) fail(t[1], "undeclared event '" + std::string(t[1].text) + "'");
    const State r = state(t[2]);
    transitions_.emplace_back(q, *e, r);
  }

  StatePair pair(const std::vector<Token>& t) {
    if (t.size() != 2) fail(t[0], "expected '<src> <dst>'");
    return {state(t[0]), state(t[1])};
  }

  std::size_t number(const Token& t) {
    std::size_t v = 0;
    const char* first = t.text.data();
    const char* last = first + t.text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) fail(t, "expected a non-negative integer, got '" + std::string(t.text) + "'");
    return v;
  }

  State state(const Token& t) {
    const std::size_t v = number(t);
    if (v < 1 || v > *states_)
      fail(t, "state " + std::string(t.text) + " is outside 1.." + std::to_string(*states_));
    return static_cast<State>(v - 1);
  }

  [[noreturn]] void fail(const Token& t, const std::string& reason) const {
    throw ParseError(line_, t.column, reason);
  }

  std::size_t line_ = 0;
  std::optional<std::size_t> states_;
  Alphabet alphabet_;
  Section section_ = Section::none;
  bool seen_[5] = {};
  std::vector<std::tuple<State, EventId, State>> transitions_;
  std::vector<StatePair> secret_;
  std::vector<StatePair> nonsecret_;
};

}  // namespace

IfoInstance parse_instance(std::string_view text) { return Parser().run(text); }

std::string write_instance(const IfoInstance& inst) {
  const Nfa& a = inst.automaton;
  const Alphabet& sigma = a.alphabet();
  std::ostringstream out;
  out << "states " << a.state_count() << '\n';
  out << "events\n";
  for (EventId e = 0; e < sigma.size(); ++e)
    out << sigma.name(e) << (sigma.is_observable(e) ? " obs\n" : " unobs\n");
  out << "transitions\n";
  for (State q = 0; q < a.state_count(); ++q)
    for (EventId e = 0; e < sigma.size(); ++e)
      for (State r : a.successors(q, e)) out << q + 1 << ' ' << sigma.name(e) << ' ' << r + 1 << '\n';
  out << "secret\n";
  for (const auto& [s, f] : inst.secret_pairs) out << s + 1 << ' ' << f + 1 << '\n';
  out << "nonsecret\n";
  for (const auto& [s, f] : inst.nonsecret_pairs) out << s + 1 << ' ' << f + 1 << '\n';
  return out.str();
}

IfoInstance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, 0, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

void save_instance(const IfoInstance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << write_instance(inst);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace ifo
