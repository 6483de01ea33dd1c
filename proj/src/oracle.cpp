#include "btrace/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace btrace {

namespace {

Symbol symbol_of(const Alphabet& sigma, const std::string& name) {
    auto s = sigma.find(name);
    if (!s) throw std::invalid_argument("symbol not in alphabet: " + name);
    return *s;
}

std::size_t proc_of(const Program& p, const std::string& name) {
    auto i = p.index_of(name);
    if (!i) throw std::invalid_argument("unknown procedure: " + name);
    return *i;
}

}  // namespace

Word strip_checks(const ExtTrace& t) {
    Word w;
    w.reserve(t.size());
    for (Symbol s : t)
        if (s != kCheckMark) w.push_back(s);
    return w;
}

namespace {

// Exact word set of e where a call means the callee's previous-round set.
std::set<Word> eval_round(const Expr& e, const Program& p, const Alphabet& sigma,
                          const std::vector<std::set<Word>>& prev) {
    switch (e.kind) {
        case Expr::Kind::Emit:
            return {Word{symbol_of(sigma, e.name)}};
        case Expr::Kind::Call:
            return prev[proc_of(p, e.name)];
        case Expr::Kind::Seq: {
            std::set<Word> lhs = eval_round(*e.lhs, p, sigma, prev);
            std::set<Word> rhs = eval_round(*e.rhs, p, sigma, prev);
            std::set<Word> out;
            for (const Word& a : lhs)
                for (const Word& b : rhs) {
                    Word w = a;
                    w.insert(w.end(), b.begin(), b.end());
                    out.insert(std::move(w));
                }
            return out;
        }
        case Expr::Kind::Choice: {
            std::set<Word> out = eval_round(*e.lhs, p, sigma, prev);
            std::set<Word> rhs = eval_round(*e.rhs, p, sigma, prev);
            out.insert(rhs.begin(), rhs.end());
            return out;
        }
    }
    return {};
}

}  // namespace

PhiIterate iterate_phi(const Program& p, const Alphabet& sigma, unsigned n) {
    PhiIterate it;
    it.per_proc.resize(p.size());
    for (unsigned k = 0; k < n; ++k) {
        std::vector<std::set<Word>> next(p.size());
        for (std::size_t i = 0; i < p.size(); ++i)
            next[i] = eval_round(p.body(i), p, sigma, it.per_proc);
        it.per_proc = std::move(next);
    }
    it.level = n;
    return it;
}

namespace {

// Depth-first run over execution stacks (back = next expression). All edits
// to stack/trace are undone on return, so one buffer serves every branch.
struct PrefixRun {
    const Program& p;
    const Alphabet& sigma;
    std::set<std::pair<Word, RunFlag>> out;

    void run(std::vector<const Expr*>& stack, Word& trace, unsigned remaining) {
        if (stack.empty()) {
            out.emplace(trace, RunFlag::Terminated);
            return;
        }
        const Expr* top = stack.back();
        switch (top->kind) {
            case Expr::Kind::Emit: {
                stack.pop_back();
                trace.push_back(symbol_of(sigma, top->name));
                run(stack, trace, remaining);
                trace.pop_back();
                stack.push_back(top);
                return;
            }
            case Expr::Kind::Seq: {
                stack.pop_back();
                stack.push_back(top->rhs.get());
                stack.push_back(top->lhs.get());
                run(stack, trace, remaining);
                stack.pop_back();
                stack.pop_back();
                stack.push_back(top);
                return;
            }
            case Expr::Kind::Choice: {
                stack.pop_back();
                stack.push_back(top->lhs.get());
                run(stack, trace, remaining);
                stack.pop_back();
                stack.push_back(top->rhs.get());
                run(stack, trace, remaining);
                stack.pop_back();
                stack.push_back(top);
                return;
            }
            case Expr::Kind::Call: {
                out.emplace(trace, RunFlag::Truncated);
                if (remaining == 0) return;
                std::size_t callee = proc_of(p, top->name);
                stack.pop_back();
                stack.push_back(&p.body(callee));
                run(stack, trace, remaining - 1);
                stack.pop_back();
                stack.push_back(top);
                return;
            }
        }
    }
};

}  // namespace

std::set<std::pair<Word, RunFlag>> enumerate_prefixes(const Program& p, const Alphabet& sigma,
                                                      std::string_view proc, unsigned budget) {
    std::string name(proc);
    proc_of(p, name);
    std::unique_ptr<Expr> root = Expr::call(name);
    PrefixRun r{p, sigma, {}};
    std::vector<const Expr*> stack{root.get()};
    Word trace;
    r.run(stack, trace, budget);
    return std::move(r.out);
}

namespace {

// A configuration is the stack of pending expressions (back = next). All
// expressions point into the program (or its bodies), so pointer identity is
// the configuration identity.
using Config = std::vector<const Expr*>;

struct ConfigHash {
    std::size_t operator()(const Config& c) const {
        std::size_t h = 1469598103934665603ull;
        for (const Expr* e : c) {
            h ^= reinterpret_cast<std::uintptr_t>(e);
            h *= 1099511628211ull;
        }
        return h;
    }
};

constexpr Symbol kSilent = std::numeric_limits<Symbol>::max();
constexpr std::uint32_t kNoNode = std::numeric_limits<std::uint32_t>::max();

struct Edge {
    Config to;
    Symbol emitted = kSilent;  // kSilent when the step emits nothing
};

// One semantic step from cfg; configurations above max_stack are dropped.
void successors(const Program& p, const Alphabet& sigma, const Config& cfg,
                std::size_t max_stack, std::vector<Edge>& out) {
    out.clear();
    if (cfg.empty()) return;
    const Expr* top = cfg.back();
    Config base(cfg.begin(), cfg.end() - 1);
    switch (top->kind) {
        case Expr::Kind::Emit: {
            out.push_back({std::move(base), symbol_of(sigma, top->name)});
            return;
        }
        case Expr::Kind::Seq: {
            if (cfg.size() + 1 > max_stack) return;
            base.push_back(top->rhs.get());
            base.push_back(top->lhs.get());
            out.push_back({std::move(base), kSilent});
            return;
        }
        case Expr::Kind::Choice: {
            Config right = base;
            base.push_back(top->lhs.get());
            right.push_back(top->rhs.get());
            out.push_back({std::move(base), kSilent});
            out.push_back({std::move(right), kSilent});
            return;
        }
        case Expr::Kind::Call: {
            base.push_back(&p.body(proc_of(p, top->name)));
            out.push_back({std::move(base), kSilent});
            return;
        }
    }
}

// Shortest-emission search (0/1 weights, deque relaxation) from `start` over
// the configuration graph. Node ids are discovery-ordered and deterministic.
struct Explorer {
    std::vector<Config> nodes;
    std::vector<std::size_t> dist;       // emitted symbols on the best path
    std::vector<std::uint32_t> parent;   // kNoNode for the start
    std::vector<Symbol> via;             // symbol on the edge from parent

    // Caps the explored graph; search is bounded-incomplete by design.
    static constexpr std::size_t kMaxNodes = 1u << 15;

    std::unordered_map<Config, std::uint32_t, ConfigHash> ids;

    std::uint32_t intern(const Config& c) {
        auto [it, fresh] = ids.try_emplace(c, static_cast<std::uint32_t>(nodes.size()));
        if (fresh) {
            nodes.push_back(c);
            dist.push_back(std::numeric_limits<std::size_t>::max());
            parent.push_back(kNoNode);
            via.push_back(kSilent);
        }
        return it->second;
    }

    void search(const Program& p, const Alphabet& sigma, const Config& start,
                std::size_t max_emit, std::size_t max_stack) {
        std::deque<std::uint32_t> queue;
        std::uint32_t s = intern(start);
        dist[s] = 0;
        queue.push_back(s);
        std::vector<Edge> edges;
        while (!queue.empty()) {
            std::uint32_t id = queue.front();
            queue.pop_front();
            std::size_t d = dist[id];
            successors(p, sigma, nodes[id], max_stack, edges);
            for (Edge& e : edges) {
                std::size_t nd = d + (e.emitted == kSilent ? 0 : 1);
                if (nd > max_emit) continue;
                if (nodes.size() >= kMaxNodes && !ids.count(e.to)) continue;
                std::uint32_t to = intern(e.to);
                if (nd >= dist[to]) continue;
                dist[to] = nd;
                parent[to] = id;
                via[to] = e.emitted;
                if (e.emitted == kSilent)
                    queue.push_front(to);
                else
                    queue.push_back(to);
            }
        }
    }

    Word word_to(std::uint32_t id) const {
        Word w;
        for (std::uint32_t n = id; parent[n] != kNoNode; n = parent[n])
            if (via[n] != kSilent) w.push_back(via[n]);
        std::reverse(w.begin(), w.end());
        return w;
    }
};

// Cheapest nonempty loop cfg -> cfg, at most max_v emitted symbols. The seed
// edges come from cfg's successors so the loop has at least one step.
std::optional<Word> find_loop(const Program& p, const Alphabet& sigma, const Config& cfg,
                              std::size_t max_v, std::size_t max_stack) {
    Explorer ex;
    std::uint32_t target = ex.intern(cfg);
    std::deque<std::uint32_t> queue;
    std::vector<Edge> edges;
    successors(p, sigma, cfg, max_stack, edges);
    for (Edge& e : edges) {
        std::size_t nd = e.emitted == kSilent ? 0 : 1;
        if (nd > max_v) continue;
        std::uint32_t to = ex.intern(e.to);
        if (nd >= ex.dist[to]) continue;
        ex.dist[to] = nd;
        ex.via[to] = e.emitted;
        // parent stays kNoNode: the walk back stops at a seed edge
        if (e.emitted == kSilent)
            queue.push_front(to);
        else
            queue.push_back(to);
    }
    // seeds may include the target itself (a one-step loop)
    while (!queue.empty()) {
        std::uint32_t id = queue.front();
        queue.pop_front();
        if (id == target) break;
        std::size_t d = ex.dist[id];
        successors(p, sigma, ex.nodes[id], max_stack, edges);
        for (Edge& e : edges) {
            std::size_t nd = d + (e.emitted == kSilent ? 0 : 1);
            if (nd > max_v) continue;
            if (ex.nodes.size() >= Explorer::kMaxNodes && !ex.ids.count(e.to)) continue;
            std::uint32_t to = ex.intern(e.to);
            if (nd >= ex.dist[to]) continue;
            ex.dist[to] = nd;
            ex.parent[to] = id;
            ex.via[to] = e.emitted;
            if (e.emitted == kSilent)
                queue.push_front(to);
            else
                queue.push_back(to);
        }
    }
    if (ex.dist[target] == std::numeric_limits<std::size_t>::max()) return std::nullopt;
    Word v;
    std::uint32_t n = target;
    while (true) {
        if (ex.via[n] != kSilent) v.push_back(ex.via[n]);
        if (ex.parent[n] == kNoNode) break;
        n = ex.parent[n];
    }
    std::reverse(v.begin(), v.end());
    return v;
}

}  // namespace

std::optional<Lasso> search_lasso(const Program& p, const Alphabet& sigma, std::string_view proc,
                                  std::size_t max_u, std::size_t max_v, std::size_t max_stack) {
    std::size_t entry = proc_of(p, std::string(proc));
    if (max_stack == 0) return std::nullopt;

    Explorer reach;
    reach.search(p, sigma, Config{&p.body(entry)}, max_u, max_stack);
    for (std::uint32_t id = 0; id < reach.nodes.size(); ++id) {
        if (reach.dist[id] > max_u) continue;  // interned but never reached
        if (reach.nodes[id].empty()) continue;
        if (auto v = find_loop(p, sigma, reach.nodes[id], max_v, max_stack))
            return Lasso{reach.word_to(id), std::move(*v)};
    }
    return std::nullopt;
}

}  // namespace btrace
