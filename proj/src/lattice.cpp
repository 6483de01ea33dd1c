#include "btrace/lattice.hpp"

#include <bit>
#include <cassert>
#include <deque>

#include "btrace/detail/ndfs.hpp"

namespace btrace {

namespace {

// Lasso automaton for one infinite pair (C, D), D != [ε], over the right
// Cayley graph of the class monoid. It accepts exactly C·D^ω.
//
// Side states, Q = class count:
//   [0, Q)      prefix phase, accumulated class m
//   [Q, 2Q)     block phase, accumulated class m, no block just completed
//   [2Q, 3Q)    block phase, accumulated class m, a D-block just completed
//
// From prefix state m, reading a: continue to prefix m·[a]; if m == C, also
// start the first block at [a]. From block state m: continue to m·[a]
// (unflagged); if m == D, also close the block and start a fresh one at [a]
// (flagged). Runs closing D-blocks infinitely often = flagged states
// infinitely often.
struct LassoSide {
    const ClassTable* t;
    ClassId c, d;

    std::size_t states() const { return 3 * t->size(); }
    std::size_t initial() const { return 0; }  // prefix phase, class [ε]
    bool flagged(std::size_t s) const { return s >= 2 * t->size(); }

    void succ(std::size_t s, Symbol a, std::size_t out[2], std::size_t& n_out) const {
        const std::size_t q = t->size();
        ClassId la = t->letter(a);
        n_out = 0;
        if (s < q) {  // prefix phase
            ClassId m = static_cast<ClassId>(s);
            out[n_out++] = t->mul(m, la);
            if (m == c) out[n_out++] = q + la;  // first block, unflagged
        } else {  // block phase
            ClassId m = static_cast<ClassId>((s - q) % q);
            out[n_out++] = q + t->mul(m, la);
            if (m == d) out[n_out++] = 2 * q + la;  // block closed
        }
    }
};

// Emptiness of the intersection of two lasso automata: product with a 2-phase
// counter degeneralizing "both sides flagged infinitely often", then CVWY.
bool lasso_product_nonempty(const ClassTable& t, const LassoSide& x, const LassoSide& y) {
    const std::size_t sx = x.states(), sy = y.states();
    const std::size_t nodes = sx * sy * 2;
    const Symbol n_sym = static_cast<Symbol>(t.alphabet().size());

    auto succ = [&](std::size_t id, std::vector<std::size_t>& out) {
        std::size_t i = id & 1;
        std::size_t rest = id >> 1;
        std::size_t s1 = rest / sy, s2 = rest % sy;
        std::size_t i2 = i;
        if (i == 0 && x.flagged(s1)) i2 = 1;
        else if (i == 1 && y.flagged(s2)) i2 = 0;
        std::size_t ox[2], oy[2], nx, ny;
        for (Symbol a = 0; a < n_sym; ++a) {
            x.succ(s1, a, ox, nx);
            y.succ(s2, a, oy, ny);
            for (std::size_t p = 0; p < nx; ++p)
                for (std::size_t q = 0; q < ny; ++q)
                    out.push_back(((ox[p] * sy + oy[q]) << 1) | i2);
        }
    };
    auto accepting = [&](std::size_t id) {
        if (id & 1) return false;
        std::size_t s1 = (id >> 1) / sy;
        return x.flagged(s1);
    };
    std::size_t start = ((x.initial() * sy + y.initial()) << 1) | 0;
    return detail::lasso_ndfs(nodes, start, succ, accepting);
}

}  // namespace

std::optional<PairId> PairTable::find(ClassId c, ClassId d) const {
    std::size_t k = classes_->size();
    if (c >= k || d >= k) return std::nullopt;
    std::uint32_t v = index_[c * k + d];
    if (v == 0) return std::nullopt;
    return v - 1;
}

bool PairTable::overlap(PairId p, PairId q) const {
    if (p == q) return true;  // pair languages are non-empty
    if (p > q) std::swap(p, q);
    std::size_t slot = p * size() + q;
    {
        std::lock_guard<std::mutex> lock(memo_->mutex);
        if (memo_->state[slot]) return memo_->state[slot] == 2;
    }

    const ClassTable& t = *classes_;
    ClassPair a = pairs_[p], b = pairs_[q];
    bool result;
    if (t.is_epsilon(a.d) && t.is_epsilon(b.d)) {
        // both denote single classes of finite words; classes partition words
        result = a.c == b.c;
    } else if (t.is_epsilon(a.d) || t.is_epsilon(b.d)) {
        result = false;  // finite vs infinite traces
    } else {
        result = lasso_product_nonempty(t, LassoSide{&t, a.c, a.d}, LassoSide{&t, b.c, b.d});
    }

    std::lock_guard<std::mutex> lock(memo_->mutex);
    memo_->state[slot] = result ? 2 : 1;
    return result;
}

PairTable build_pairs(const ClassTable& t) {
    PairTable pt;
    pt.classes_ = &t;
    const std::size_t k = t.size();
    pt.index_.assign(k * k, 0);
    for (ClassId d = 0; d < k; ++d) {
        if (t.mul(d, d) != d) continue;
        for (ClassId c = 0; c < k; ++c) {
            if (t.mul(c, d) != c) continue;
            pt.index_[c * k + d] = static_cast<std::uint32_t>(pt.pairs_.size()) + 1;
            pt.pairs_.push_back({c, d});
        }
    }
    pt.memo_ = std::make_unique<PairTable::Memo>();
    pt.memo_->state.assign(pt.pairs_.size() * pt.pairs_.size(), 0);
    return pt;
}

InfAbs close(const PairTable& pt, const std::set<PairId>& ps) {
    InfAbs out{ps};
    std::deque<PairId> work(ps.begin(), ps.end());
    while (!work.empty()) {
        PairId m = work.front();
        work.pop_front();
        for (PairId p = 0; p < pt.size(); ++p) {
            if (out.pairs.contains(p)) continue;
            if (pt.overlap(p, m)) {
                out.pairs.insert(p);
                work.push_back(p);
            }
        }
    }
    return out;
}

FinAbs alpha_fin(const ClassTable& t, const std::vector<Word>& words) {
    FinAbs out;
    for (const Word& w : words) out.classes.insert(class_of_word(t, w));
    return out;
}

FinAbs fin_union(const FinAbs& a, const FinAbs& b) {
    FinAbs out = a;
    out.classes.insert(b.classes.begin(), b.classes.end());
    return out;
}

FinAbs fin_concat(const ClassTable& t, const FinAbs& a, const FinAbs& b) {
    FinAbs out;
    for (ClassId x : a.classes)
        for (ClassId y : b.classes) out.classes.insert(t.mul(x, y));
    return out;
}

FinAbs fin_star(const ClassTable& t, const FinAbs& a) {
    FinAbs out;
    out.classes.insert(t.epsilon());
    bool grew = true;
    while (grew) {
        grew = false;
        for (ClassId x : a.classes) {
            std::vector<ClassId> add;
            for (ClassId y : out.classes) {
                ClassId z = t.mul(x, y);
                if (!out.classes.contains(z)) add.push_back(z);
            }
            for (ClassId z : add) {
                out.classes.insert(z);
                grew = true;
            }
        }
    }
    return out;
}

InfAbs mixed_concat(const ClassTable& t, const PairTable& pt, const FinAbs& u, const InfAbs& v) {
    InfAbs out;
    for (ClassId a : u.classes)
        for (PairId p : v.pairs) {
            ClassPair cd = pt.pair(p);
            auto q = pt.find(t.mul(a, cd.c), cd.d);
            assert(q && "prefixed pair must satisfy CD=C, DD=D");
            out.pairs.insert(*q);
        }
    assert(is_closed(pt, out) && "prefixing a closed set must stay closed");
    return out;
}

InfAbs inf_union(const PairTable& pt, const InfAbs& a, const InfAbs& b) {
    InfAbs out = a;
    out.pairs.insert(b.pairs.begin(), b.pairs.end());
    assert(is_closed(pt, out) && "union of closed sets must stay closed");
    return out;
}

InfAbs omega(const ClassTable& t, const PairTable& pt, const FinAbs& u) {
    // S: all products of one or more members; contains [ε] iff [ε] ∈ u, so the
    // finite-trace pairs (C, [ε]) demanded by an [ε] member fall out of the
    // same membership test.
    std::set<ClassId> s(u.classes.begin(), u.classes.end());
    std::deque<ClassId> work(s.begin(), s.end());
    while (!work.empty()) {
        ClassId x = work.front();
        work.pop_front();
        for (ClassId g : u.classes) {
            ClassId y = t.mul(x, g);
            if (s.insert(y).second) work.push_back(y);
        }
    }
    std::set<PairId> pre;
    for (PairId p = 0; p < pt.size(); ++p) {
        ClassPair cd = pt.pair(p);
        if (s.contains(cd.c) && s.contains(cd.d)) pre.insert(p);
    }
    return close(pt, pre);
}

bool class_accepted(const Automaton& a, const ClassTable& t, ClassId c) {
    if (t.is_epsilon(c)) return a.is_final(a.initial());
    return (t.profile(c).reach[a.initial()] & a.final_mask()) != 0;
}

bool pair_accepted(const Automaton& a, const ClassTable& t, const PairTable& pt, PairId p) {
    ClassPair cd = pt.pair(p);
    if (t.is_epsilon(cd.d)) return class_accepted(a, t, cd.c);
    StateMask from = t.is_epsilon(cd.c) ? StateMask{1} << a.initial()
                                        : t.profile(cd.c).reach[a.initial()];
    const Profile& d = t.profile(cd.d);
    while (from) {
        StateId q = static_cast<StateId>(std::countr_zero(from));
        from &= from - 1;
        if ((d.reach_f[q] >> q) & 1u) return true;  // final-visiting D-loop at q
    }
    return false;
}

bool fin_accepted(const Automaton& a, const ClassTable& t, const FinAbs& u) {
    for (ClassId c : u.classes)
        if (!class_accepted(a, t, c)) return false;
    return true;
}

bool inf_accepted(const Automaton& a, const ClassTable& t, const PairTable& pt, const InfAbs& v) {
    for (PairId p : v.pairs)
        if (!pair_accepted(a, t, pt, p)) return false;
    return true;
}

namespace {

// Prefix feasibility against one infinite pair: read w through the pair's
// lasso automaton, then ask whether any reached state still has an accepting
// continuation (can reach a flagged state that lies on a cycle).
bool feasible_prefix_infinite(const ClassTable& t, const LassoSide& side, const Word& w) {
    const std::size_t n = side.states();
    const Symbol n_sym = static_cast<Symbol>(t.alphabet().size());

    std::vector<std::uint8_t> cur(n, 0), next(n, 0);
    cur[side.initial()] = 1;
    std::size_t out[2], n_out;
    for (Symbol a : w) {
        std::fill(next.begin(), next.end(), 0);
        bool any = false;
        for (std::size_t s = 0; s < n; ++s) {
            if (!cur[s]) continue;
            side.succ(s, a, out, n_out);
            for (std::size_t i = 0; i < n_out; ++i) next[out[i]] = 1, any = true;
        }
        cur.swap(next);
        if (!any) return false;
    }

    // forward reachability from each flagged state to itself marks the "good"
    // cores; anything reaching a good state is live
    std::vector<std::uint8_t> good(n, 0);
    for (std::size_t f = 0; f < n; ++f) {
        if (!side.flagged(f)) continue;
        std::vector<std::uint8_t> seen(n, 0);
        std::deque<std::size_t> work;
        auto expand = [&](std::size_t s) {
            for (Symbol a = 0; a < n_sym; ++a) {
                side.succ(s, a, out, n_out);
                for (std::size_t i = 0; i < n_out; ++i)
                    if (!seen[out[i]]) seen[out[i]] = 1, work.push_back(out[i]);
            }
        };
        expand(f);
        while (!work.empty()) {
            std::size_t s = work.front();
            work.pop_front();
            if (s == f) break;
            expand(s);
        }
        good[f] = seen[f];
    }

    std::vector<std::uint8_t> live = good;
    bool grew = true;
    while (grew) {  // live = can reach good; iterate backwards closure
        grew = false;
        for (std::size_t s = 0; s < n; ++s) {
            if (live[s]) continue;
            for (Symbol a = 0; a < n_sym && !live[s]; ++a) {
                side.succ(s, a, out, n_out);
                for (std::size_t i = 0; i < n_out; ++i)
                    if (live[out[i]]) {
                        live[s] = 1;
                        grew = true;
                        break;
                    }
            }
        }
    }
    for (std::size_t s = 0; s < n; ++s)
        if (cur[s] && live[s]) return true;
    return false;
}

}  // namespace

bool feasible_prefix(const ClassTable& t, const PairTable& pt, const Word& w, const InfAbs& v) {
    for (PairId p : v.pairs) {
        ClassPair cd = pt.pair(p);
        if (t.is_epsilon(cd.d)) {
            // finite language: w extends into class C iff C is reachable from
            // [w] in the right Cayley graph
            ClassId start = class_of_word(t, w);
            std::vector<std::uint8_t> seen(t.size(), 0);
            std::deque<ClassId> work{start};
            seen[start] = 1;
            bool hit = false;
            while (!work.empty() && !hit) {
                ClassId m = work.front();
                work.pop_front();
                if (m == cd.c) hit = true;
                for (Symbol a = 0; a < t.alphabet().size(); ++a) {
                    ClassId y = t.mul(m, t.letter(a));
                    if (!seen[y]) seen[y] = 1, work.push_back(y);
                }
            }
            if (hit) return true;
        } else {
            if (feasible_prefix_infinite(t, LassoSide{&t, cd.c, cd.d}, w)) return true;
        }
    }
    return false;
}

bool is_closed(const PairTable& pt, const InfAbs& v) {
    for (PairId p = 0; p < pt.size(); ++p) {
        if (v.pairs.contains(p)) continue;
        for (PairId m : v.pairs)
            if (pt.overlap(p, m)) return false;
    }
    return true;
}

}  // namespace btrace
