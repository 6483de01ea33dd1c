#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <string_view>
#include <utility>
#include <vector>

#include "btrace/alphabet.hpp"
#include "btrace/lang.hpp"

namespace btrace {

/// The check event generated by every procedure-call entry in the extended
/// run semantics. Never a member of any Alphabet.
inline constexpr Symbol kCheckMark = std::numeric_limits<Symbol>::max();

/// Finite prefix of an extended trace: alphabet symbols mixed with check marks.
using ExtTrace = std::vector<Symbol>;

/// Removes every check mark, keeping event order.
Word strip_checks(const ExtTrace& t);

/// Exact finite-trace sets after `level` rounds of the terminating-run
/// operator: round 0 is empty everywhere, and each following round evaluates
/// every body with a call meaning the callee's previous-round set. The sets
/// grow with the level and their union over all levels is the full set of
/// terminating traces.
struct PhiIterate {
    std::vector<std::set<Word>> per_proc;  // indexed like Program::procedures
    unsigned level = 0;
};

/// Computes the level-n sets exactly. Every emitted symbol must be in sigma.
PhiIterate iterate_phi(const Program& p, const Alphabet& sigma, unsigned n);

enum class RunFlag : std::uint8_t { Terminated, Truncated };

/// Runs `proc`, bounding the number of procedure entries by `budget` (the
/// initial activation counts as one). A truncated entry records the trace so
/// far at every call site, before entering, so (ε, truncated) is always
/// present; a terminated entry records a run that emptied its stack. The same
/// word can carry both flags: the two judgements are distinct.
std::set<std::pair<Word, RunFlag>> enumerate_prefixes(const Program& p, const Alphabet& sigma,
                                                      std::string_view proc, unsigned budget);

/// An ultimately periodic witness u·v^ω. An empty period means silent
/// divergence: the run goes on forever but emits nothing after the prefix.
struct Lasso {
    Word prefix, period;
};

/// Bounded search for an infinite run of `proc`: explores configurations
/// (stacks of pending expressions, depth at most max_stack) preferring fewer
/// emitted symbols, and looks for a reachable configuration that comes back
/// to itself emitting at most max_v symbols after a prefix of at most max_u.
/// Any witness is a genuine infinite trace; nullopt proves nothing.
std::optional<Lasso> search_lasso(const Program& p, const Alphabet& sigma, std::string_view proc,
                                  std::size_t max_u = 8, std::size_t max_v = 8,
                                  std::size_t max_stack = 64);

}  // namespace btrace
