#include "scc.hpp"

namespace rotset::detail {

// Iterative Tarjan.
std::vector<std::uint32_t> strongly_connected_components(
    std::uint64_t S, int q, const std::function<bool(std::uint64_t)>& keep,
    std::uint32_t* component_count) {
    constexpr std::uint32_t kUnset = 0xffffffffu;
    std::vector<std::uint32_t> index(S, kUnset), low(S, 0), comp(S, kUnset);
    std::vector<std::uint8_t> on_stack(S, 0);
    std::vector<std::uint64_t> stack;
    std::uint32_t next_index = 0, next_comp = 0;

    struct Frame {
        std::uint64_t u;
        int a; // next out-symbol to explore
    };
    std::vector<Frame> call;

    for (std::uint64_t root = 0; root < S; ++root) {
        if (index[root] != kUnset) continue;
        call.push_back({root, 0});
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.a < q) {
                const int a = f.a++;
                const std::uint64_t e = f.u * q + a;
                if (!keep(e)) continue;
                const std::uint64_t v = e % S;
                if (index[v] == kUnset) {
                    index[v] = low[v] = next_index++;
                    stack.push_back(v);
                    on_stack[v] = 1;
                    call.push_back({v, 0});
                } else if (on_stack[v] && index[v] < low[f.u]) {
                    low[f.u] = index[v];
                }
            } else {
                const std::uint64_t u = f.u;
                call.pop_back();
                if (!call.empty() && low[u] < low[call.back().u]) low[call.back().u] = low[u];
                if (low[u] == index[u]) {
                    std::uint64_t v;
                    do {
                        v = stack.back();
                        stack.pop_back();
                        on_stack[v] = 0;
                        comp[v] = next_comp;
                    } while (v != u);
                    ++next_comp;
                }
            }
        }
    }
    if (component_count) *component_count = next_comp;
    return comp;
}

} // namespace rotset::detail
