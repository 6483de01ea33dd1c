#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace btrace::detail {

/// Nested depth-first search for an accepting lasso (CVWY): returns true iff
/// some cycle through an accepting node is reachable from `start`. The red
/// search runs in blue postorder and red marks persist across seeds, which is
/// what makes the algorithm sound. `succ(node, out)` appends successor ids
/// (< node_count); `accepting(node)` marks Büchi nodes.
template <typename SuccFn, typename AccFn>
bool lasso_ndfs(std::size_t node_count, std::size_t start, SuccFn&& succ, AccFn&& accepting) {
    std::vector<std::uint8_t> blue(node_count, 0), red(node_count, 0);

    auto red_search = [&](std::size_t seed) {
        std::vector<std::size_t> stack{seed};
        std::vector<std::size_t> tmp;
        red[seed] = 1;
        while (!stack.empty()) {
            std::size_t s = stack.back();
            stack.pop_back();
            tmp.clear();
            succ(s, tmp);
            for (std::size_t t : tmp) {
                if (t == seed) return true;
                if (!red[t]) {
                    red[t] = 1;
                    stack.push_back(t);
                }
            }
        }
        return false;
    };

    struct Frame {
        std::size_t node;
        std::vector<std::size_t> succs;
        std::size_t next = 0;
    };
    std::vector<Frame> stack;
    auto push = [&](std::size_t n) {
        blue[n] = 1;
        Frame f{n, {}, 0};
        succ(n, f.succs);
        stack.push_back(std::move(f));
    };
    push(start);
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next < f.succs.size()) {
            std::size_t t = f.succs[f.next++];
            if (!blue[t]) push(t);
        } else {
            std::size_t n = f.node;
            stack.pop_back();
            if (accepting(n) && !red[n] && red_search(n)) return true;
        }
    }
    return false;
}

}  // namespace btrace::detail
