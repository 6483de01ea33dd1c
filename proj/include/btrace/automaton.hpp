#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "btrace/alphabet.hpp"

namespace btrace {

/// Dense state index.
using StateId = std::uint32_t;

/// Bit mask over states; bit q set means state q is in the set.
using StateMask = std::uint64_t;

/// Error raised by the textual parsers; carries the 1-based input line.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

/// Extended Büchi automaton over an event alphabet. Nondeterministic, one
/// initial state; the final-state set does double duty: it accepts finite
/// words (NFA reading) and infinite words (Büchi reading).
///
/// Immutable after construction; all queries are const and safe to share
/// across threads.
class Automaton {
public:
    /// At most this many states (transition relations live in 64-bit rows).
    static constexpr std::size_t kMaxStates = 64;

    Automaton(Alphabet sigma, std::vector<std::string> state_names, StateId initial,
              StateMask finals);

    const Alphabet& alphabet() const { return sigma_; }
    std::size_t state_count() const { return state_names_.size(); }
    const std::vector<std::string>& state_names() const { return state_names_; }
    StateId initial() const { return initial_; }
    StateMask final_mask() const { return finals_; }
    bool is_final(StateId q) const { return (finals_ >> q) & 1u; }

    void add_transition(StateId from, Symbol on, StateId to);

    /// Successors of a single state on `on`.
    StateMask step(StateId from, Symbol on) const { return delta_[from * sigma_.size() + on]; }

    /// Successors of a state set on `on`.
    StateMask step_mask(StateMask from, Symbol on) const;

private:
    Alphabet sigma_;
    std::vector<std::string> state_names_;
    StateId initial_;
    StateMask finals_;
    std::vector<StateMask> delta_;  // row-major [state][symbol]
};

/// Parses the line-based automaton format:
///
///   states:   id...        (must precede any use of a state id)
///   alphabet: sym...       (must precede any transition)
///   initial:  id           (exactly one)
///   final:    id...        (may be empty or absent)
///   trans:    from sym to
///
/// `#` starts a comment; blank lines are skipped; duplicate transitions are
/// ignored. Throws ParseError with the offending line on malformed input.
Automaton parse_automaton(std::string_view text);

/// Finite-word acceptance: some run from the initial state ends final.
/// The empty word is accepted iff the initial state is final.
bool accepts_finite(const Automaton& a, const Word& w);

/// Ultimately periodic acceptance: some run on u·v^ω visits a final state
/// infinitely often. Decided exactly by nested DFS on the finite product of
/// states and word positions; an accepting lasso must see a final state
/// inside the periodic part. Throws std::invalid_argument if v is empty.
bool accepts_upword(const Automaton& a, const Word& u, const Word& v);

}  // namespace btrace
