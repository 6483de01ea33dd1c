#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <vector>

#include "btrace/classes.hpp"

namespace btrace {

/// Index of a class pair.
using PairId = std::uint32_t;

struct ClassPair {
    ClassId c, d;

    auto operator<=>(const ClassPair&) const = default;
};

/// Abstraction of a set of finite traces: the classes its words inhabit.
struct FinAbs {
    std::set<ClassId> classes;

    bool operator==(const FinAbs&) const = default;
};

/// Abstraction of a set of finite-or-infinite traces: a closed set of pairs.
struct InfAbs {
    std::set<PairId> pairs;

    bool operator==(const InfAbs&) const = default;
};

/// All pairs (C, D) with C·D = C and D·D = D. The pair (C, D) denotes the
/// trace set C·D^ω, which is C itself when D is the empty-word class, and a
/// set of genuinely infinite traces otherwise.
///
/// Overlap between pair languages is decided exactly (see pairs_overlap) and
/// memoized lazily behind a mutex, so a built table is safe to query from
/// several threads.
class PairTable {
public:
    std::size_t size() const { return pairs_.size(); }
    ClassPair pair(PairId p) const { return pairs_[p]; }
    std::optional<PairId> find(ClassId c, ClassId d) const;

    /// True iff the two pair languages intersect. Both finite: class equality.
    /// Mixed finite/infinite: never. Both infinite: emptiness of the product of
    /// the two lasso automata over the class monoid's right Cayley graph
    /// (block phase + accumulated class per side, generalized acceptance =
    /// both sides complete D-blocks infinitely often), decided by nested DFS.
    bool overlap(PairId p, PairId q) const;

private:
    friend PairTable build_pairs(const ClassTable& t);

    struct Memo {
        std::mutex mutex;
        std::vector<std::uint8_t> state;  // 0 unknown, 1 no, 2 yes
    };

    const ClassTable* classes_ = nullptr;  // owned by the caller of build_pairs
    std::vector<ClassPair> pairs_;
    std::vector<std::uint32_t> index_;  // [c*size+d] -> PairId+1, 0 = absent
    std::unique_ptr<Memo> memo_;
};

/// Enumerates the pair set for a class table. The result keeps a pointer to
/// `t`, which must outlive it.
PairTable build_pairs(const ClassTable& t);

/// Least closed superset: repeatedly adds every pair whose language meets a
/// member's language until stable.
InfAbs close(const PairTable& pt, const std::set<PairId>& ps);

/// Classes inhabited by the given finite words.
FinAbs alpha_fin(const ClassTable& t, const std::vector<Word>& words);

FinAbs fin_union(const FinAbs& a, const FinAbs& b);

/// Pointwise products of member classes.
FinAbs fin_concat(const ClassTable& t, const FinAbs& a, const FinAbs& b);

/// Least fixpoint of X = {[ε]} ∪ a·X: all products of zero or more members.
FinAbs fin_star(const ClassTable& t, const FinAbs& a);

/// {(A·C, D) | A ∈ u, (C, D) ∈ v}. The result of prefixing a closed set is
/// closed again; asserted in debug builds.
InfAbs mixed_concat(const ClassTable& t, const PairTable& pt, const FinAbs& u, const InfAbs& v);

/// Set union; closed sets stay closed. Asserted in debug builds.
InfAbs inf_union(const PairTable& pt, const InfAbs& a, const InfAbs& b);

/// Abstraction of the ω-power: every trace that splits into infinitely many
/// blocks drawn from u's classes (plus the finite traces that arise when the
/// empty-word class is a member). Computed as the closure of
///   {(C, D) pairs with C, D in the sub-semigroup S generated by u}
///   ∪ {(C, [ε]) | C ∈ S ∪ {[ε]}}        (only when [ε] ∈ u)
/// Greatest fixpoints are never iterated; this closed form replaces them.
InfAbs omega(const ClassTable& t, const PairTable& pt, const FinAbs& u);

/// Whether every word of the class is accepted as a finite word: the empty
/// class asks whether the initial state is final, any other class asks for a
/// final state reachable from the initial state under the class's profile.
bool class_accepted(const Automaton& a, const ClassTable& t, ClassId c);

/// Whether every trace of the pair's language is accepted: finite pairs defer
/// to class_accepted; infinite pairs need a state q reachable from the initial
/// state under C (q = initial when C = [ε]) with a final-visiting D-loop at q.
bool pair_accepted(const Automaton& a, const ClassTable& t, const PairTable& pt, PairId p);

/// All member classes accepted.
bool fin_accepted(const Automaton& a, const ClassTable& t, const FinAbs& u);

/// All member pairs accepted.
bool inf_accepted(const Automaton& a, const ClassTable& t, const PairTable& pt, const InfAbs& v);

/// True iff w is a prefix of some trace in the union of the member pairs'
/// languages. Decided exactly on the pair lasso automata (live-state check
/// after reading w); finite pairs reduce to reachability in the Cayley graph.
bool feasible_prefix(const ClassTable& t, const PairTable& pt, const Word& w, const InfAbs& v);

/// Test/debug helper: v contains every pair whose language meets a member's.
bool is_closed(const PairTable& pt, const InfAbs& v);

}  // namespace btrace
