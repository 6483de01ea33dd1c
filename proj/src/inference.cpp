#include "btrace/inference.hpp"

#include <cassert>
#include <numeric>
#include <stdexcept>
#include <string>

namespace btrace {

namespace {

ClassId letter_class(const ClassTable& t, const std::string& name) {
    auto s = t.alphabet().find(name);
    if (!s) throw std::invalid_argument("symbol not in alphabet: " + name);
    return t.letter(*s);
}

std::size_t proc_index(const Program& p, std::string_view name) {
    auto i = p.index_of(name);
    if (!i) throw std::invalid_argument("unknown procedure: " + std::string(name));
    return *i;
}

FinAbs eval_finite(const Program& p, const ClassTable& t, const std::vector<FinAbs>& cur,
                   const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Emit:
            return FinAbs{{letter_class(t, e.name)}};
        case Expr::Kind::Call:
            return cur[proc_index(p, e.name)];
        case Expr::Kind::Seq:
            return fin_concat(t, eval_finite(p, t, cur, *e.lhs), eval_finite(p, t, cur, *e.rhs));
        case Expr::Kind::Choice:
            return fin_union(eval_finite(p, t, cur, *e.lhs), eval_finite(p, t, cur, *e.rhs));
    }
    return {};
}

// target.coeffs[var] ∪= a, dropping the term instead of storing an empty one
void add_coeff(EffectExpr& target, std::size_t var, const FinAbs& a) {
    if (a.classes.empty()) return;
    auto [it, fresh] = target.coeffs.try_emplace(var, a);
    if (!fresh) it->second = fin_union(it->second, a);
}

[[maybe_unused]] bool linear_form(const EffectExpr& e) {
    for (const auto& [var, coeff] : e.coeffs)
        if (coeff.classes.empty()) return false;
    return true;
}

// target ∪= scalar·source (distributes over every term and the constant)
void add_scaled(EffectExpr& target, const ClassTable& t, const PairTable& pt, const FinAbs& scalar,
                const EffectExpr& source) {
    for (const auto& [var, coeff] : source.coeffs)
        add_coeff(target, var, fin_concat(t, scalar, coeff));
    target.constant = inf_union(pt, target.constant, mixed_concat(t, pt, scalar, source.constant));
    assert(linear_form(target));
}

// Replaces var by sol inside target; no-op when the term is absent.
void substitute(EffectExpr& target, const ClassTable& t, const PairTable& pt, std::size_t var,
                const EffectExpr& sol) {
    auto it = target.coeffs.find(var);
    if (it == target.coeffs.end()) return;
    FinAbs b = std::move(it->second);
    target.coeffs.erase(it);
    add_scaled(target, t, pt, b, sol);
}

// Closed-form solution of eq = A·X_var ∪ R: fin_star(A)·R ∪ omega(A).
EffectExpr eliminate(EffectExpr eq, const ClassTable& t, const PairTable& pt, std::size_t var) {
    FinAbs a;
    if (auto it = eq.coeffs.find(var); it != eq.coeffs.end()) {
        a = std::move(it->second);
        eq.coeffs.erase(it);
    }
    FinAbs star = fin_star(t, a);
    EffectExpr sol;
    add_scaled(sol, t, pt, star, eq);
    sol.constant = inf_union(pt, sol.constant, omega(t, pt, a));
    return sol;
}

}  // namespace

std::vector<FinAbs> finite_step(const Program& p, const ClassTable& t,
                                const std::vector<FinAbs>& current) {
    std::vector<FinAbs> next(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) next[i] = eval_finite(p, t, current, p.body(i));
    return next;
}

std::vector<FinAbs> infer_finite(const Program& p, const ClassTable& t) {
    std::vector<FinAbs> cur(p.size());
    for (;;) {
        std::vector<FinAbs> next = finite_step(p, t, cur);
        if (next == cur) return cur;
        cur = std::move(next);
    }
}

std::pair<FinAbs, EffectExpr> body_effect(const Program& p, const ClassTable& t,
                                          const PairTable& pt, const std::vector<FinAbs>& fin,
                                          const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Emit:
            return {FinAbs{{letter_class(t, e.name)}}, EffectExpr{}};
        case Expr::Kind::Call: {
            std::size_t g = proc_index(p, e.name);
            EffectExpr eff;
            eff.coeffs.emplace(g, FinAbs{{t.epsilon()}});
            return {fin[g], std::move(eff)};
        }
        case Expr::Kind::Seq: {
            auto [u1, v1] = body_effect(p, t, pt, fin, *e.lhs);
            auto [u2, v2] = body_effect(p, t, pt, fin, *e.rhs);
            EffectExpr eff = std::move(v1);
            add_scaled(eff, t, pt, u1, v2);
            return {fin_concat(t, u1, u2), std::move(eff)};
        }
        case Expr::Kind::Choice: {
            auto [u1, v1] = body_effect(p, t, pt, fin, *e.lhs);
            auto [u2, v2] = body_effect(p, t, pt, fin, *e.rhs);
            EffectExpr eff = std::move(v1);
            add_scaled(eff, t, pt, FinAbs{{t.epsilon()}}, v2);
            return {fin_union(u1, u2), std::move(eff)};
        }
    }
    return {};
}

std::vector<InfAbs> solve_infinite_ordered(const Program& p, const ClassTable& t,
                                           const PairTable& pt, const std::vector<FinAbs>& fin,
                                           const std::vector<std::size_t>& order) {
    assert(order.size() == p.size());
    std::vector<EffectExpr> eqs(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        eqs[i] = body_effect(p, t, pt, fin, p.body(i)).second;

    for (std::size_t var : order) {
        EffectExpr sol = eliminate(std::move(eqs[var]), t, pt, var);
        eqs[var] = std::move(sol);
        for (std::size_t j = 0; j < eqs.size(); ++j)
            if (j != var) substitute(eqs[j], t, pt, var, eqs[var]);
    }

    std::vector<InfAbs> out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        assert(eqs[i].coeffs.empty());
        out[i] = std::move(eqs[i].constant);
    }
    return out;
}

std::vector<InfAbs> solve_infinite(const Program& p, const ClassTable& t, const PairTable& pt,
                                   const std::vector<FinAbs>& fin) {
    std::vector<std::size_t> order(p.size());
    std::iota(order.begin(), order.end(), 0);
    return solve_infinite_ordered(p, t, pt, fin, order);
}

namespace {

Diagnostic class_diagnostic(const ClassTable& t, const std::string& proc, ClassId c) {
    Diagnostic d;
    d.proc = proc;
    d.infinite = false;
    d.c = c;
    d.u = t.representative(c);
    return d;
}

Diagnostic pair_diagnostic(const ClassTable& t, const std::string& proc, ClassPair pr) {
    Diagnostic d;
    d.proc = proc;
    d.infinite = true;
    d.c = pr.c;
    d.d = pr.d;
    if (t.is_epsilon(pr.d)) {
        d.u = t.representative(pr.c);  // finite-trace pair: plain word witness
    } else {
        if (pr.c != pr.d) d.u = t.representative(pr.c);
        d.v = t.representative(pr.d);
    }
    return d;
}

}  // namespace

Verdict check_policy(const Program& p, const Automaton& a, const ClassTable& t,
                     const PairTable& pt, std::string_view entry, bool all_procs) {
    std::size_t entry_idx = proc_index(p, entry);
    std::vector<FinAbs> fin = infer_finite(p, t);
    std::vector<InfAbs> inf = solve_infinite(p, t, pt, fin);

    Verdict verdict;
    verdict.entry = std::string(entry);
    std::vector<std::size_t> report;
    if (all_procs)
        for (std::size_t i = 0; i < p.size(); ++i) report.push_back(i);
    else
        report.push_back(entry_idx);

    for (std::size_t i : report) {
        const std::string& name = p.procedures[i].first;
        ProcedureResult r;
        r.finite = fin[i];
        r.infinite = inf[i];
        r.finite_ok = fin_accepted(a, t, r.finite);
        r.infinite_ok = inf_accepted(a, t, pt, r.infinite);
        for (ClassId c : r.finite.classes)
            if (!class_accepted(a, t, c)) verdict.diagnostics.push_back(class_diagnostic(t, name, c));
        for (PairId q : r.infinite.pairs)
            if (!pair_accepted(a, t, pt, q))
                verdict.diagnostics.push_back(pair_diagnostic(t, name, pt.pair(q)));
        verdict.overall = verdict.overall && r.finite_ok && r.infinite_ok;
        verdict.procedures.emplace_back(name, std::move(r));
    }
    return verdict;
}

Verdict check_policy(const Program& p, const Automaton& a, std::string_view entry) {
    ClassTable t = build_class_table(a);
    PairTable pt = build_pairs(t);
    return check_policy(p, a, t, pt, entry, false);
}

}  // namespace btrace
