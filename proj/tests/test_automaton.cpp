#include <doctest.h>

#include <random>

#include "btrace/automaton.hpp"
#include "testutil.hpp"

using namespace btrace;
using namespace testutil;

TEST_CASE("parse_automaton reads the two-state policy") {
    Automaton a = parse_automaton(kEx1Aut);
    CHECK(a.state_count() == 2);
    CHECK(a.alphabet().size() == 2);
    CHECK(a.initial() == 0);
    CHECK(a.final_mask() == 0b10);
    CHECK_FALSE(a.is_final(0));
    CHECK(a.is_final(1));
    CHECK(a.state_names()[0] == "s0");
    CHECK(a.state_names()[1] == "s1");
    Symbol sa = *a.alphabet().find("a"), sb = *a.alphabet().find("b");
    CHECK(a.step(0, sa) == 0b01);
    CHECK(a.step(0, sb) == 0b10);
    CHECK(a.step(1, sa) == 0b01);
    CHECK(a.step(1, sb) == 0b10);
    CHECK(a.step_mask(0b11, sa) == 0b01);
    CHECK(a.step_mask(0b11, sb) == 0b10);
}

TEST_CASE("parse_automaton reads the three-state policy") {
    Automaton a = parse_automaton(kEx2Aut);
    CHECK(a.state_count() == 3);
    CHECK(a.alphabet().size() == 3);
    CHECK(a.final_mask() == 0b110);
    Symbol sc = *a.alphabet().find("c");
    CHECK(a.step(2, sc) == 0);  // s2 has no c-successor
    CHECK(a.step(0, sc) == 0b101);
}

TEST_CASE("parse_automaton accepts comments, blank lines, duplicates") {
    Automaton a = parse_automaton(
        "# comment\n"
        "states: x y\n"
        "\n"
        "alphabet: a\n"
        "initial: x   # trailing comment\n"
        "final: y\n"
        "trans: x a y\n"
        "trans: x a y\n");
    CHECK(a.state_count() == 2);
    CHECK(a.step(0, 0) == 0b10);
}

TEST_CASE("parse_automaton rejects malformed input with line numbers") {
    auto line_of = [](std::string_view text) {
        try {
            parse_automaton(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return -1;
    };
    CHECK(line_of("states: x\nalphabet: a\ninitial: y\n") == 3);       // undeclared state
    CHECK(line_of("states: x\nalphabet: a\ntrans: x b x\n") == 3);     // undeclared symbol
    CHECK(line_of("states: x x\n") == 1);                              // duplicate state
    CHECK(line_of("states: x\nalphabet: a\ninitial: x\nbogus: x\n") == 4);
    CHECK(line_of("trans: x a x\n") == 1);  // states must precede use
    CHECK(line_of("states: x\nalphabet: a\ninitial: x\ninitial: x\n") == 4);
    CHECK(line_of("states: x\nalphabet: a\ninitial: x y\n") == 3);
    CHECK_THROWS_AS(parse_automaton("states: x\nalphabet: a\n"), ParseError);  // no initial
    CHECK_THROWS_AS(parse_automaton("states: x\ninitial: x\n"), ParseError);   // no alphabet
    CHECK_THROWS_AS(parse_automaton("alphabet: a\n"), ParseError);             // no states
}

TEST_CASE("parse_automaton enforces the 64-state limit") {
    std::string text = "states:";
    for (int i = 0; i < 65; ++i) text += " q" + std::to_string(i);
    text += "\nalphabet: a\ninitial: q0\n";
    CHECK_THROWS_AS(parse_automaton(text), ParseError);
}

TEST_CASE("accepts_finite matches ends-with-b on the two-state policy") {
    // L restricted to finite words is (a*b+)+: exactly the nonempty words
    // ending in b.
    Automaton a = parse_automaton(kEx1Aut);
    Symbol sb = *a.alphabet().find("b");
    for (const Word& w : all_words(2, 8))
        CHECK(accepts_finite(a, w) == (!w.empty() && w.back() == sb));
}

TEST_CASE("accepts_finite: empty word iff initial state is final") {
    CHECK_FALSE(accepts_finite(parse_automaton(kEx1Aut), {}));
    Automaton b = parse_automaton("states: x\nalphabet: a\ninitial: x\nfinal: x\n");
    CHECK(accepts_finite(b, {}));
}

TEST_CASE("accepts_finite agrees with explicit run enumeration") {
    std::mt19937 rng(20260819);
    for (int i = 0; i < 120; ++i) {
        Automaton a = random_automaton(rng);
        for (int j = 0; j < 40; ++j) {
            Word w = random_word(rng, a.alphabet().size(), 8);
            CAPTURE(i);
            CHECK(accepts_finite(a, w) == brute_accepts_finite(a, w));
        }
    }
}

TEST_CASE("accepts_upword golden cases") {
    Automaton a1 = parse_automaton(kEx1Aut);
    const Alphabet& s1 = a1.alphabet();
    CHECK(accepts_upword(a1, {}, cw(s1, "ba")));        // (ba)^w has infinitely many b
    CHECK_FALSE(accepts_upword(a1, cw(s1, "b"), cw(s1, "a")));  // b a^w does not
    CHECK(accepts_upword(a1, cw(s1, "a"), cw(s1, "b")));
    CHECK_FALSE(accepts_upword(a1, {}, cw(s1, "a")));

    Automaton a2 = parse_automaton(kEx2Aut);
    const Alphabet& s2 = a2.alphabet();
    CHECK_FALSE(accepts_upword(a2, {}, cw(s2, "c")));  // infinitely many c, no b
    CHECK(accepts_upword(a2, {}, cw(s2, "a")));        // finitely many c
    CHECK(accepts_upword(a2, cw(s2, "c"), cw(s2, "cb")));
    CHECK_FALSE(accepts_upword(a2, cw(s2, "b"), cw(s2, "ca")));
}

TEST_CASE("accepts_upword rejects an empty period") {
    Automaton a = parse_automaton(kEx1Aut);
    CHECK_THROWS_AS(accepts_upword(a, {}, {}), std::invalid_argument);
}

TEST_CASE("accepts_upword is invariant under unfolding") {
    std::mt19937 rng(7);
    for (int i = 0; i < 150; ++i) {
        Automaton a = random_automaton(rng);
        std::size_t k = a.alphabet().size();
        Word u = random_word(rng, k, 4);
        Word v = random_word(rng, k, 4);
        if (v.empty()) v.push_back(0);
        bool base = accepts_upword(a, u, v);
        CHECK(accepts_upword(a, concat(u, v), v) == base);
        CHECK(accepts_upword(a, u, concat(v, v)) == base);
        CHECK(accepts_upword(a, concat(u, v), concat(v, v)) == base);
    }
}
