#include <doctest.h>

#include <random>
#include <set>
#include <string>

#include "btrace/classes.hpp"
#include "testutil.hpp"

using namespace btrace;
using namespace testutil;

namespace {

// Class of a word over the ex1 policy, per the language definitions:
// [eps], a+, (a+b)*b(a+b)*a, (a+b)*b.
std::string ex1_label(const Alphabet& sigma, const Word& w) {
    Symbol sb = *sigma.find("b");
    if (w.empty()) return "";
    bool has_b = std::find(w.begin(), w.end(), sb) != w.end();
    if (!has_b) return "a";
    return w.back() == sb ? "b" : "ba";
}

// Class of a word over the ex2 policy, per the twelve language definitions.
std::string ex2_label(const Alphabet& sigma, const Word& w) {
    Symbol sb = *sigma.find("b"), sc = *sigma.find("c");
    if (w.empty()) return "";
    std::size_t nb = 0, nc = 0;
    for (Symbol s : w) nb += s == sb, nc += s == sc;
    if (w.size() == 1) return std::string(1, "abc"[w[0]]);
    bool ends_b = w.back() == sb;
    if (nc == 0) {
        if (nb == 0) return "aa";
        if (!ends_b) return "ba";
        return nb == 1 ? "ab" : "bb";
    }
    if (nb == 0) return "cca";
    if (!ends_b) return "bca";
    bool earlier_b = nb > 1;
    return earlier_b ? "bcb" : "cb";
}

}  // namespace

TEST_CASE("ex1 policy: four classes partitioning words as in the definitions") {
    Policy p = make_policy(kEx1Aut);
    const ClassTable& t = *p.table;
    REQUIRE(t.size() == 4);
    for (const Word& w : all_words(2, 6)) {
        CAPTURE(format_word(t.alphabet(), w));
        CHECK(class_of_word(t, w) == cls(t, ex1_label(t.alphabet(), w)));
    }
    // distinctness of the four
    std::set<ClassId> ids{t.epsilon(), cls(t, "a"), cls(t, "ba"), cls(t, "b")};
    CHECK(ids.size() == 4);
}

TEST_CASE("ex1 policy: shortest representatives") {
    Policy p = make_policy(kEx1Aut);
    const ClassTable& t = *p.table;
    CHECK(t.representative(t.epsilon()).empty());
    CHECK(t.representative(cls(t, "a")) == cw(t.alphabet(), "a"));
    CHECK(t.representative(cls(t, "b")) == cw(t.alphabet(), "b"));
    CHECK(t.representative(cls(t, "ba")) == cw(t.alphabet(), "ba"));
}

TEST_CASE("ex2 policy: twelve classes partitioning words as in the definitions") {
    Policy p = make_policy(kEx2Aut);
    const ClassTable& t = *p.table;
    REQUIRE(t.size() == 12);
    std::set<ClassId> ids;
    for (const char* label :
         {"", "a", "b", "c", "aa", "ba", "ab", "bb", "cb", "bcb", "cca", "bca"})
        ids.insert(cls(t, label));
    CHECK(ids.size() == 12);
    for (const Word& w : all_words(3, 6)) {
        CAPTURE(format_word(t.alphabet(), w));
        CHECK(class_of_word(t, w) == cls(t, ex2_label(t.alphabet(), w)));
    }
}

TEST_CASE("ex2 policy: shortest representatives with alphabet-order ties") {
    Policy p = make_policy(kEx2Aut);
    const ClassTable& t = *p.table;
    const Alphabet& s = t.alphabet();
    CHECK(t.representative(cls(t, "cca")) == cw(s, "ac"));  // ac < ca < cc
    CHECK(t.representative(cls(t, "bca")) == cw(s, "bc"));
    CHECK(t.representative(cls(t, "bcb")) == cw(s, "bcb"));
    CHECK(t.representative(cls(t, "cb")) == cw(s, "cb"));
    CHECK(t.representative(cls(t, "ab")) == cw(s, "ab"));
}

TEST_CASE("representatives are canonical: first member in length-lex order") {
    std::mt19937 rng(101);
    for (int i = 0; i < 60; ++i) {
        Policy p = random_policy(rng);
        const ClassTable& t = *p.table;
        std::map<ClassId, Word> first;
        for (const Word& w : all_words(t.alphabet().size(), 4))
            first.try_emplace(class_of_word(t, w), w);
        for (const auto& [c, w] : first) CHECK(t.representative(c) == w);
        for (ClassId c = 0; c < t.size(); ++c)
            CHECK(class_of_word(t, t.representative(c)) == c);
    }
}

TEST_CASE("empty class is a tagged two-sided identity") {
    // One-state automaton where the letter has the identity profile: the
    // epsilon class must stay distinct anyway.
    Policy p = make_policy("states: x\nalphabet: a\ninitial: x\nfinal: x\ntrans: x a x\n");
    const ClassTable& t = *p.table;
    CHECK(t.size() == 2);
    CHECK(t.profile(0) == t.profile(1));
    CHECK(cls(t, "a") != t.epsilon());
    CHECK(t.mul(0, 1) == 1);
    CHECK(t.mul(1, 0) == 1);
}

TEST_CASE("mul is a congruence: class of concatenation") {
    std::mt19937 rng(202);
    for (int i = 0; i < 80; ++i) {
        Policy p = random_policy(rng);
        const ClassTable& t = *p.table;
        std::size_t k = t.alphabet().size();
        for (int j = 0; j < 30; ++j) {
            Word u = random_word(rng, k, 6), v = random_word(rng, k, 6);
            CHECK(class_of_word(t, concat(u, v)) ==
                  t.mul(class_of_word(t, u), class_of_word(t, v)));
        }
    }
}

TEST_CASE("partition: equal classes iff equal profiles") {
    std::mt19937 rng(303);
    for (int i = 0; i < 40; ++i) {
        Policy p = random_policy(rng);
        const ClassTable& t = *p.table;
        std::size_t k = t.alphabet().size();
        for (int j = 0; j < 20; ++j) {
            Word u = random_word(rng, k, 8), w = random_word(rng, k, 8);
            if (u.empty() || w.empty()) continue;
            ClassId cu = class_of_word(t, u), cv = class_of_word(t, w);
            CHECK((cu == cv) == (t.profile(cu) == t.profile(cv)));
        }
    }
}

TEST_CASE("letter profiles read off the transition relation") {
    Automaton a2 = parse_automaton(kEx2Aut);
    Symbol sc = *a2.alphabet().find("c");
    Profile pc = letter_profile(a2, sc);
    // c-edges: 0->0, 0->2, 1->0; finals {1,2}
    CHECK(pc.reach[0] == 0b101);
    CHECK(pc.reach[1] == 0b001);
    CHECK(pc.reach[2] == 0b000);
    CHECK(pc.reach_f[0] == 0b100);  // only the edge into the final state 2
    CHECK(pc.reach_f[1] == 0b001);  // source 1 is final
    CHECK(pc.reach_f[2] == 0b000);
}

TEST_CASE("idempotent powers") {
    Policy p1 = make_policy(kEx1Aut);
    const ClassTable& t1 = *p1.table;
    for (ClassId c = 0; c < t1.size(); ++c) {
        CHECK(idempotent_power(t1, c) == c);  // every ex1 class is idempotent
        CHECK(idempotent_exponent(t1, c) == 1);
    }

    Policy p2 = make_policy(kEx2Aut);
    const ClassTable& t2 = *p2.table;
    CHECK(idempotent_power(t2, cls(t2, "a")) == cls(t2, "aa"));
    CHECK(idempotent_exponent(t2, cls(t2, "a")) == 2);
    CHECK(idempotent_power(t2, cls(t2, "c")) == cls(t2, "cca"));
    CHECK(idempotent_power(t2, cls(t2, "b")) == cls(t2, "bb"));
    CHECK(idempotent_power(t2, cls(t2, "cb")) == cls(t2, "bcb"));
    CHECK(idempotent_power(t2, t2.epsilon()) == t2.epsilon());
}

TEST_CASE("idempotent_power is idempotent and reached at its exponent") {
    std::mt19937 rng(404);
    for (int i = 0; i < 60; ++i) {
        Policy p = random_policy(rng);
        const ClassTable& t = *p.table;
        for (ClassId c = 0; c < t.size(); ++c) {
            ClassId e = idempotent_power(t, c);
            CHECK(t.mul(e, e) == e);
            unsigned k = idempotent_exponent(t, c);
            ClassId pow = t.epsilon();
            for (unsigned j = 0; j < k; ++j) pow = t.mul(pow, c);
            CHECK(pow == e);
        }
    }
}

TEST_CASE("abstract_of_upword golden cases") {
    Policy p1 = make_policy(kEx1Aut);
    const ClassTable& t1 = *p1.table;
    const Alphabet& s1 = t1.alphabet();
    CHECK(abstract_of_upword(t1, {}, cw(s1, "ba")) ==
          std::pair{cls(t1, "ba"), cls(t1, "ba")});
    CHECK(abstract_of_upword(t1, cw(s1, "a"), cw(s1, "a")) ==
          std::pair{cls(t1, "a"), cls(t1, "a")});
    CHECK(abstract_of_upword(t1, cw(s1, "b"), Word{}) ==
          std::pair{cls(t1, "b"), t1.epsilon()});

    Policy p2 = make_policy(kEx2Aut);
    const ClassTable& t2 = *p2.table;
    CHECK(abstract_of_upword(t2, {}, cw(t2.alphabet(), "cb")) ==
          std::pair{cls(t2, "bcb"), cls(t2, "bcb")});
}

TEST_CASE("abstract_of_upword decomposes as in the contract") {
    std::mt19937 rng(505);
    for (int i = 0; i < 80; ++i) {
        Policy p = random_policy(rng);
        const ClassTable& t = *p.table;
        std::size_t k = t.alphabet().size();
        for (int j = 0; j < 25; ++j) {
            Word u = random_word(rng, k, 5), v = random_word(rng, k, 5);
            auto [c, d] = abstract_of_upword(t, u, v);
            CHECK(t.mul(c, d) == c);
            CHECK(t.mul(d, d) == d);
            if (v.empty()) {
                CHECK(c == class_of_word(t, u));
                CHECK(d == t.epsilon());
            } else {
                unsigned e = idempotent_exponent(t, class_of_word(t, v));
                CHECK(class_of_word(t, concat(u, repeat(v, e))) == c);
                CHECK(class_of_word(t, repeat(v, e)) == d);
            }
        }
    }
}

TEST_CASE("class count obeys the profile bound") {
    std::mt19937 rng(606);
    for (int i = 0; i < 60; ++i) {
        Automaton a = random_automaton(rng);
        ClassTable t = build_class_table(a);
        std::uint64_t n = a.state_count();
        std::uint64_t bound = (std::uint64_t{1} << (2 * n * n)) + 1;
        CHECK(t.size() <= bound);
    }
}
