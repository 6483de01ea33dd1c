#include "btrace/automaton.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <map>

#include "btrace/detail/ndfs.hpp"

namespace btrace {

Symbol Alphabet::add(std::string_view name) {
    if (auto it = ids_.find(name); it != ids_.end()) return it->second;
    Symbol id = static_cast<Symbol>(names_.size());
    names_.emplace_back(name);
    ids_.emplace(names_.back(), id);
    return id;
}

std::optional<Symbol> Alphabet::find(std::string_view name) const {
    if (auto it = ids_.find(name); it != ids_.end()) return it->second;
    return std::nullopt;
}

std::string format_word(const Alphabet& sigma, const Word& w) {
    if (w.empty()) return "<eps>";
    std::string out;
    for (Symbol s : w) out += sigma.name(s);
    return out;
}

Automaton::Automaton(Alphabet sigma, std::vector<std::string> state_names, StateId initial,
                     StateMask finals)
    : sigma_(std::move(sigma)),
      state_names_(std::move(state_names)),
      initial_(initial),
      finals_(finals) {
    if (state_names_.empty()) throw std::invalid_argument("automaton needs at least one state");
    if (state_names_.size() > kMaxStates)
        throw std::invalid_argument("automaton exceeds the 64-state limit");
    if (sigma_.size() == 0) throw std::invalid_argument("alphabet must be non-empty");
    if (initial_ >= state_names_.size()) throw std::invalid_argument("initial state out of range");
    delta_.assign(state_names_.size() * sigma_.size(), 0);
}

void Automaton::add_transition(StateId from, Symbol on, StateId to) {
    if (from >= state_count() || to >= state_count())
        throw std::invalid_argument("transition endpoint out of range");
    if (on >= sigma_.size()) throw std::invalid_argument("transition symbol out of range");
    delta_[from * sigma_.size() + on] |= StateMask{1} << to;
}

StateMask Automaton::step_mask(StateMask from, Symbol on) const {
    StateMask out = 0;
    while (from) {
        StateId q = static_cast<StateId>(std::countr_zero(from));
        from &= from - 1;
        out |= step(q, on);
    }
    return out;
}

namespace {

// Splits a line into whitespace-separated tokens, dropping `#` comments.
std::vector<std::string> tokenize(std::string_view line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == '#') break;
        if (c == ' ' || c == '\t' || c == '\r') {
            if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

}  // namespace

Automaton parse_automaton(std::string_view text) {
    std::vector<std::string> state_names;
    std::map<std::string, StateId, std::less<>> state_ids;
    Alphabet sigma;
    std::optional<StateId> initial;
    StateMask finals = 0;
    struct Trans {
        StateId from, to;
        Symbol on;
    };
    std::vector<Trans> transitions;

    auto state_of = [&](const std::string& tok, int line) -> StateId {
        auto it = state_ids.find(tok);
        if (it == state_ids.end()) throw ParseError(line, "undeclared state '" + tok + "'");
        return it->second;
    };

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                               : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        const std::string& head = toks[0];
        if (head == "states:") {
            for (std::size_t i = 1; i < toks.size(); ++i) {
                if (state_ids.contains(toks[i]))
                    throw ParseError(line_no, "duplicate state '" + toks[i] + "'");
                if (state_names.size() >= Automaton::kMaxStates)
                    throw ParseError(line_no, "too many states (limit 64)");
                state_ids.emplace(toks[i], static_cast<StateId>(state_names.size()));
                state_names.push_back(toks[i]);
            }
        } else if (head == "alphabet:") {
            for (std::size_t i = 1; i < toks.size(); ++i) sigma.add(toks[i]);
        } else if (head == "initial:") {
            if (toks.size() != 2) throw ParseError(line_no, "initial: expects exactly one state");
            if (initial) throw ParseError(line_no, "duplicate initial: line");
            initial = state_of(toks[1], line_no);
        } else if (head == "final:") {
            for (std::size_t i = 1; i < toks.size(); ++i)
                finals |= StateMask{1} << state_of(toks[i], line_no);
        } else if (head == "trans:") {
            if (toks.size() != 4) throw ParseError(line_no, "trans: expects 'from symbol to'");
            StateId from = state_of(toks[1], line_no);
            auto sym = sigma.find(toks[2]);
            if (!sym) throw ParseError(line_no, "undeclared symbol '" + toks[2] + "'");
            StateId to = state_of(toks[3], line_no);
            transitions.push_back({from, to, *sym});
        } else {
            throw ParseError(line_no, "unknown directive '" + head + "'");
        }
    }

    if (state_names.empty()) throw ParseError(line_no, "missing states: line");
    if (sigma.size() == 0) throw ParseError(line_no, "missing alphabet: line");
    if (!initial) throw ParseError(line_no, "missing initial: line");

    Automaton a(std::move(sigma), std::move(state_names), *initial, finals);
    for (const Trans& t : transitions) a.add_transition(t.from, t.on, t.to);
    return a;
}

bool accepts_finite(const Automaton& a, const Word& w) {
    StateMask cur = StateMask{1} << a.initial();
    for (Symbol s : w) {
        if (s >= a.alphabet().size()) throw std::invalid_argument("symbol outside alphabet");
        cur = a.step_mask(cur, s);
        if (!cur) return false;
    }
    return (cur & a.final_mask()) != 0;
}

bool accepts_upword(const Automaton& a, const Word& u, const Word& v) {
    if (v.empty()) throw std::invalid_argument("periodic part must be non-empty");
    for (Symbol s : u)
        if (s >= a.alphabet().size()) throw std::invalid_argument("symbol outside alphabet");
    for (Symbol s : v)
        if (s >= a.alphabet().size()) throw std::invalid_argument("symbol outside alphabet");

    // Nodes are (state, position) with positions 0..|u|+|v|-1; positions >= |u|
    // read v and wrap back to |u|. A lasso is accepting iff it passes a final
    // state at a periodic position.
    const std::size_t total = u.size() + v.size();
    const std::size_t n = a.state_count();
    auto sym_at = [&](std::size_t pos) { return pos < u.size() ? u[pos] : v[pos - u.size()]; };
    auto node = [&](StateId q, std::size_t pos) { return pos * n + q; };

    auto succ = [&](std::size_t id, std::vector<std::size_t>& out) {
        StateId q = static_cast<StateId>(id % n);
        std::size_t pos = id / n;
        std::size_t next = pos + 1 < total ? pos + 1 : u.size();
        StateMask m = a.step(q, sym_at(pos));
        while (m) {
            StateId t = static_cast<StateId>(std::countr_zero(m));
            m &= m - 1;
            out.push_back(node(t, next));
        }
    };
    auto accepting = [&](std::size_t id) {
        StateId q = static_cast<StateId>(id % n);
        std::size_t pos = id / n;
        return pos >= u.size() && a.is_final(q);
    };
    return detail::lasso_ndfs(total * n, node(a.initial(), 0), succ, accepting);
}

}  // namespace btrace
