#include "btrace/classes.hpp"

#include <bit>
#include <cassert>
#include <deque>
#include <unordered_map>

namespace btrace {

namespace {

struct ProfileHash {
    std::size_t operator()(const Profile& p) const {
        std::uint64_t h = 1469598103934665603ull;
        auto mix = [&](std::uint64_t v) {
            h ^= v;
            h *= 1099511628211ull;
        };
        for (StateMask m : p.reach) mix(m);
        mix(0x9e3779b97f4a7c15ull);
        for (StateMask m : p.reach_f) mix(m);
        return static_cast<std::size_t>(h);
    }
};

// reach-composition of two row-mask relations.
std::vector<StateMask> compose(const std::vector<StateMask>& x, const std::vector<StateMask>& y) {
    std::vector<StateMask> out(x.size(), 0);
    for (std::size_t p = 0; p < x.size(); ++p) {
        StateMask m = x[p];
        while (m) {
            auto r = std::countr_zero(m);
            m &= m - 1;
            out[p] |= y[r];
        }
    }
    return out;
}

}  // namespace

Profile letter_profile(const Automaton& a, Symbol s) {
    if (s >= a.alphabet().size()) throw std::invalid_argument("symbol outside alphabet");
    const std::size_t n = a.state_count();
    Profile p;
    p.reach.resize(n);
    p.reach_f.resize(n);
    for (StateId q = 0; q < n; ++q) {
        StateMask succ = a.step(q, s);
        p.reach[q] = succ;
        // a length-1 path visits a final state iff an endpoint is final
        p.reach_f[q] = a.is_final(q) ? succ : succ & a.final_mask();
    }
    return p;
}

Profile profile_mul(const Profile& x, const Profile& y) {
    if (x.reach.size() != y.reach.size())
        throw std::invalid_argument("profiles over different automata");
    Profile out;
    out.reach = compose(x.reach, y.reach);
    std::vector<StateMask> lhs = compose(x.reach_f, y.reach);
    std::vector<StateMask> rhs = compose(x.reach, y.reach_f);
    out.reach_f.resize(lhs.size());
    for (std::size_t p = 0; p < lhs.size(); ++p) out.reach_f[p] = lhs[p] | rhs[p];
    return out;
}

ClassTable build_class_table(const Automaton& a) {
    const std::size_t n = a.state_count();
    ClassTable t;
    t.sigma_ = a.alphabet();
    t.state_count_ = n;

    // Class 0: the empty word. Its stored profile is the identity relation
    // (with final self-loops in reach_f); multiplication special-cases it, so
    // the profile is informational only.
    Profile eps;
    eps.reach.resize(n);
    eps.reach_f.resize(n);
    for (StateId q = 0; q < n; ++q) {
        eps.reach[q] = StateMask{1} << q;
        eps.reach_f[q] = a.is_final(q) ? eps.reach[q] : 0;
    }
    t.profiles_.push_back(std::move(eps));
    t.reps_.emplace_back();

    std::unordered_map<Profile, ClassId, ProfileHash> index;
    auto intern = [&](Profile p, const Word& rep) -> ClassId {
        auto it = index.find(p);
        if (it != index.end()) return it->second;
        ClassId id = static_cast<ClassId>(t.reps_.size());
        index.emplace(p, id);
        t.profiles_.push_back(std::move(p));
        t.reps_.push_back(rep);
        return id;
    };

    // Letters in declared order, then breadth-first right extension: visiting
    // classes in creation order and letters in alphabet order enumerates
    // representatives in length-lexicographic order, so the first word
    // reaching a profile is the canonical representative.
    t.letters_.resize(a.alphabet().size());
    for (Symbol s = 0; s < a.alphabet().size(); ++s)
        t.letters_[s] = intern(letter_profile(a, s), Word{s});

    for (ClassId c = 1; c < t.reps_.size(); ++c) {
        for (Symbol s = 0; s < a.alphabet().size(); ++s) {
            Profile p = profile_mul(t.profiles_[c], t.profiles_[t.letters_[s]]);
            Word rep = t.reps_[c];
            rep.push_back(s);
            intern(std::move(p), rep);
        }
    }

    const std::size_t k = t.reps_.size();
    t.mul_.assign(k * k, 0);
    for (ClassId x = 1; x < k; ++x)
        for (ClassId y = 1; y < k; ++y) {
            auto it = index.find(profile_mul(t.profiles_[x], t.profiles_[y]));
            assert(it != index.end() && "class monoid not closed under product");
            t.mul_[x * k + y] = it->second;
        }
    return t;
}

ClassId class_of_word(const ClassTable& t, const Word& w) {
    ClassId c = t.epsilon();
    for (Symbol s : w) {
        if (s >= t.alphabet().size()) throw std::invalid_argument("symbol outside alphabet");
        c = t.mul(c, t.letter(s));
    }
    return c;
}

unsigned idempotent_exponent(const ClassTable& t, ClassId c) {
    ClassId power = c;
    for (unsigned k = 1; k <= t.size() + 1; ++k) {
        if (t.mul(power, power) == power) return k;
        power = t.mul(power, c);
    }
    assert(false && "finite monoid must have an idempotent power");
    return 1;
}

ClassId idempotent_power(const ClassTable& t, ClassId c) {
    ClassId power = c;
    while (t.mul(power, power) != power) power = t.mul(power, c);
    return power;
}

std::pair<ClassId, ClassId> abstract_of_upword(const ClassTable& t, const Word& u, const Word& v) {
    ClassId cu = class_of_word(t, u);
    if (v.empty()) return {cu, t.epsilon()};
    ClassId m = class_of_word(t, v);
    ClassId e = idempotent_power(t, m);
    // u·v^ω = (u·v^k)·(v^k)^ω with [v^k] = e idempotent and [u·v^k]·e = [u]·e.
    return {t.mul(cu, e), e};
}

}  // namespace btrace
