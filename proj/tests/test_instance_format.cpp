#include <catch_amalgamated.hpp>

#include "ifo/families.hpp"
#include "ifo/instance_format.hpp"

using namespace ifo;

namespace {

ParseError parse_error(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error for:\n" << text);
  return ParseError(0, 0, "");
}

}  // namespace

TEST_CASE("shipped fixture is the two-state family") {
  const IfoInstance inst = load_instance(std::string(IFO_FIXTURE_DIR) + "/a2.ifo");
  CHECK(inst == family_b2());
}

TEST_CASE("canonical writer output") {
  Alphabet s;
  s.add("go");
  s.add("tau", false);
  Nfa a(2, s);
  a.add_transition(1, "go", 0);
  a.add_transition(0, "tau", 1);
  a.add_transition(0, "go", 1);
  const IfoInstance inst(a, {{1, 0}, {0, 0}}, {});
  CHECK(write_instance(inst) ==
        "states 2\n"
        "events\n"
        "go obs\n"
        "tau unobs\n"
        "transitions\n"
        "1 go 2\n"
        "1 tau 2\n"
        "2 go 1\n"
        "secret\n"
        "1 1\n"
        "2 1\n"
        "nonsecret\n");
}

TEST_CASE("parser accepts comments, blank lines and missing pair sections") {
  const IfoInstance inst = parse_instance(
      "# a tiny instance\n"
      "states 2   # two states\n"
      "\n"
      "events\n"
      "  a obs\n"
      "transitions\n"
      "1\ta 2\r\n"
      "secret\n"
      "1 2\n");
  CHECK(inst.automaton.state_count() == 2);
  CHECK(inst.automaton.transition_count() == 1);
  CHECK(inst.secret_pairs == std::vector<StatePair>{{0, 1}});
  CHECK(inst.nonsecret_pairs.empty());

  const IfoInstance empty_ns = parse_instance("states 1\nevents\nsecret\n1 1\nnonsecret\n");
  CHECK(empty_ns.nonsecret_pairs.empty());
  CHECK(parse_instance("states 0\n").automaton.state_count() == 0);
}

TEST_CASE("parser diagnostics carry line and column") {
  const auto undeclared = parse_error("states 2\nevents\na obs\ntransitions\n1 a 3\n");
  CHECK(undeclared.line() == 5);
  CHECK(undeclared.column() == 5);

  const auto unknown = parse_error("states 2\nalphabet\n");
  CHECK(unknown.line() == 2);
  CHECK(unknown.column() == 1);

  const auto dup = parse_error("states 2\nevents\na obs\n  a unobs\n");
  CHECK(dup.line() == 4);
  CHECK(dup.column() == 3);

  CHECK(parse_error("states 2\nevents\na maybe\n").column() == 3);
  CHECK(parse_error("states 2\nevents\na obs\ntransitions\n1 b 2\n").column() == 3);
  CHECK(parse_error("states 2\nsecret\n0 1\n").line() == 3);
  CHECK(parse_error("states 2\nsecret\n1\n").line() == 3);
  CHECK(parse_error("states x\n").column() == 8);
  CHECK(parse_error("events\n").line() == 1);
  CHECK(parse_error("states 2\nstates 2\n").line() == 2);
  CHECK(parse_error("states 2\nsecret\nsecret\n").line() == 3);
  CHECK(parse_error("states 2\ntransitions\n").line() == 2);
  CHECK(parse_error("states 1\nevents\nsecret obs\n").line() == 3);
  CHECK(parse_error("").line() >= 1);

  const std::string message = parse_error("states 2\nevents\na obs\ntransitions\n1 a 3\n").what();
  CHECK(message.find("line 5") != std::string::npos);
  CHECK_THROWS_AS(load_instance("/nonexistent/file.ifo"), ParseError);
}

TEST_CASE("write then parse is the identity on random instances") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    FamilySpec spec;
    spec.seed = seed;
    spec.states = 1 + seed % 7;
    spec.events = 1 + seed % 4;
    spec.unobservable = seed % 3 == 0 ? 1 : 0;
    spec.density = 0.05 * static_cast<double>(seed % 9);
    spec.secret_pairs = seed % 5;
    spec.nonsecret_pairs = seed % 4;
    spec.cartesian_nonsecret = seed % 6 == 0;
    const IfoInstance inst = family_random(spec);
    const std::string text = write_instance(inst);
    CHECK(parse_instance(text) == inst);
    CHECK(write_instance(parse_instance(text)) == text);
  }
}
