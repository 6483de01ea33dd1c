#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "btrace/automaton.hpp"

namespace btrace {

/// Behaviour of one nonempty word through the policy automaton: for each state
/// pair (p, q), whether the word can drive p to q (`reach`), and whether it can
/// do so passing a final state on the way, endpoints included (`reach_f`).
/// Words with equal profiles are interchangeable for both finite and infinite
/// acceptance, so profiles are the word classes.
struct Profile {
    std::vector<StateMask> reach;    // row p: successor mask
    std::vector<StateMask> reach_f;  // subset of reach

    bool operator==(const Profile&) const = default;
};

/// Profile of a single letter: reach is the letter's transition relation;
/// reach_f keeps the (p, q) edges with p or q final.
Profile letter_profile(const Automaton& a, Symbol s);

/// Profile of a concatenation: reach composes, and a final visit happens in
/// the left part or the right part.
Profile profile_mul(const Profile& x, const Profile& y);

/// Index of a word class.
using ClassId = std::uint32_t;

/// The finite monoid of word classes for one policy automaton: every class of
/// nonempty words (distinct profiles), plus a tagged class for the empty word
/// that stays distinct even if some nonempty class shares its profile.
///
/// Class 0 is always the empty-word class. Every other class records the
/// shortest representative word, ties broken lexicographically by declared
/// alphabet order. Immutable after build_class_table.
class ClassTable {
public:
    ClassId epsilon() const { return 0; }
    bool is_epsilon(ClassId c) const { return c == 0; }

    std::size_t size() const { return reps_.size(); }

    const Profile& profile(ClassId c) const { return profiles_[c]; }
    const Word& representative(ClassId c) const { return reps_[c]; }

    /// Class of a single-letter word.
    ClassId letter(Symbol s) const { return letters_[s]; }

    /// Monoid product; the empty-word class is the identity.
    ClassId mul(ClassId x, ClassId y) const {
        if (x == 0) return y;
        if (y == 0) return x;
        return mul_[x * size() + y];
    }

    const Alphabet& alphabet() const { return sigma_; }
    std::size_t state_count() const { return state_count_; }

private:
    friend ClassTable build_class_table(const Automaton& a);

    Alphabet sigma_;
    std::size_t state_count_ = 0;
    std::vector<Profile> profiles_;   // [class]; index 0 holds the identity profile
    std::vector<Word> reps_;          // [class]
    std::vector<ClassId> letters_;    // [symbol]
    std::vector<ClassId> mul_;        // row-major [class][class], rows/cols 0 unused
};

/// Builds the class monoid by breadth-first closure of the letter profiles
/// under right extension, then tabulates the full product. The class count is
/// bounded by 2^(2n²) + 1 for n automaton states.
ClassTable build_class_table(const Automaton& a);

/// Folds a word through the letter classes; the empty word gives class 0.
ClassId class_of_word(const ClassTable& t, const Word& w);

/// The idempotent power of c: c^k for the least k >= 1 with c^k·c^k = c^k.
/// Exists for every class because the monoid is finite.
ClassId idempotent_power(const ClassTable& t, ClassId c);

/// The exponent k realizing idempotent_power.
unsigned idempotent_exponent(const ClassTable& t, ClassId c);

/// Abstraction of the ultimately periodic word u·v^ω as a class pair (C, D)
/// with C·D = C, D·D = D and u·v^ω ∈ C·D^ω: D is the idempotent power e = [v]^k
/// and C = [u]·e (i.e. u replaced by u·v^k). An empty v yields ([u], [ε]),
/// covering plain finite words.
std::pair<ClassId, ClassId> abstract_of_upword(const ClassTable& t, const Word& u, const Word& v);

}  // namespace btrace
