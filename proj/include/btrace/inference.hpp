#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "btrace/lang.hpp"
#include "btrace/lattice.hpp"

namespace btrace {

/// Infinite-part effect of a body, linear in the procedure variables:
///   ⋃ coeffs[i]·X_i  ∪  constant
/// Coefficients are never empty (an empty one is the same as no term) and the
/// constant is closed. Built and transformed only through the effect rules,
/// which keep this shape.
struct EffectExpr {
    std::map<std::size_t, FinAbs> coeffs;  // procedure index -> coefficient
    InfAbs constant;

    bool operator==(const EffectExpr&) const = default;
};

/// One round of the abstract finite-trace operator: evaluates every body with
/// a call meaning the callee's current value (Emit ↦ {[a]}, Seq ↦ fin_concat,
/// Choice ↦ fin_union).
std::vector<FinAbs> finite_step(const Program& p, const ClassTable& t,
                                const std::vector<FinAbs>& current);

/// Least fixpoint of finite_step from all-empty: U_f per procedure, the exact
/// abstraction of each procedure's terminating traces.
std::vector<FinAbs> infer_finite(const Program& p, const ClassTable& t);

/// Effect of one body given the solved finite map: the finite part of the
/// expression, and its infinite part as a linear expression. A call
/// contributes (fin[g], {[ε]}·X_g); sequencing contributes
/// (U1·U2, V1 ∪ U1·V2); choice is the componentwise union.
std::pair<FinAbs, EffectExpr> body_effect(const Program& p, const ClassTable& t,
                                          const PairTable& pt, const std::vector<FinAbs>& fin,
                                          const Expr& e);

/// Solves the infinite-part equation system X_f ≐ body_effect(e_f) by
/// eliminating variables in declaration order: an equation A·X ∪ R (X its own
/// variable) has the closed-form solution fin_star(A)·R ∪ omega(A), which is
/// substituted into every other equation, solved ones included. Returns V_f
/// per procedure: the exact abstraction of each procedure's diverging runs.
std::vector<InfAbs> solve_infinite(const Program& p, const ClassTable& t, const PairTable& pt,
                                   const std::vector<FinAbs>& fin);

/// solve_infinite with an explicit elimination order (a permutation of the
/// procedure indices). The solution is order-independent; this entry point
/// exists so tests can check that.
std::vector<InfAbs> solve_infinite_ordered(const Program& p, const ClassTable& t,
                                           const PairTable& pt, const std::vector<FinAbs>& fin,
                                           const std::vector<std::size_t>& order);

/// One rejected class or pair, with a concrete counterexample trace:
/// a finite word u when v is empty, otherwise the lasso u·v^ω. Witnesses are
/// independently checkable with accepts_finite / accepts_upword.
struct Diagnostic {
    std::string proc;
    bool infinite = false;  // from V_f (pair) rather than U_f (class)
    ClassId c = 0, d = 0;   // rejected class c, or pair (c, d)
    Word u, v;
};

struct ProcedureResult {
    FinAbs finite;    // U_f
    InfAbs infinite;  // V_f
    bool finite_ok = true;
    bool infinite_ok = true;
};

/// Verdict for the analyzed procedures: overall holds iff every listed
/// procedure's every class and pair is accepted; diagnostics are nonempty
/// exactly when overall fails.
struct Verdict {
    std::string entry;
    std::vector<std::pair<std::string, ProcedureResult>> procedures;
    bool overall = true;
    std::vector<Diagnostic> diagnostics;
};

/// Full pipeline against prebuilt tables: infer, then check the entry
/// procedure (or, with all_procs, every procedure) against the policy.
/// Throws std::invalid_argument for an unknown entry name.
Verdict check_policy(const Program& p, const Automaton& a, const ClassTable& t,
                     const PairTable& pt, std::string_view entry, bool all_procs = false);

/// Convenience overload that builds the tables itself.
Verdict check_policy(const Program& p, const Automaton& a, std::string_view entry);

}  // namespace btrace
