#include "rotset/cycle.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>

#include "rotset/errors.hpp"
#include "scc.hpp"

namespace rotset {

WeightedDeBruijn::WeightedDeBruijn(int q_, int r_) : q(q_), r(r_) {
    weights.assign(checked_pow(q_, r_), 0.0);
}

WeightedDeBruijn::WeightedDeBruijn(const ScalarPotential& psi) : q(psi.q), r(psi.r) {
    weights = psi.values;
}

std::uint64_t WeightedDeBruijn::state_count() const {
    return r == 1 ? 1 : checked_pow(q, r - 1);
}

namespace {

struct PolicyEval {
    std::vector<double> value; // best reachable cycle mean per node
    std::vector<double> bias;
};

// Evaluates a deterministic policy on the functional graph succ(u) =
// (u*q + policy[u]) mod S. Cycle roots get bias 0.
PolicyEval evaluate_policy(const WeightedDeBruijn& g, const std::vector<int>& policy) {
    const std::uint64_t S = g.state_count();
    PolicyEval ev;
    ev.value.assign(S, 0.0);
    ev.bias.assign(S, 0.0);

    auto succ = [&](std::uint64_t u) { return (u * g.q + policy[u]) % S; };
    auto wsel = [&](std::uint64_t u) { return g.weights[u * g.q + policy[u]]; };

    std::vector<std::int8_t> color(S, 0); // 0 unseen, 1 on stack, 2 done
    std::vector<std::uint64_t> stack;
    for (std::uint64_t start = 0; start < S; ++start) {
        if (color[start] != 0) continue;
        stack.clear();
        std::uint64_t u = start;
        while (color[u] == 0) {
            color[u] = 1;
            stack.push_back(u);
            u = succ(u);
        }
        if (color[u] == 1) {
            // Found a new cycle; u is its entry point on the stack.
            std::size_t pos = stack.size();
            while (stack[pos - 1] != u) --pos;
            --pos;
            double total = 0.0;
            for (std::size_t k = pos; k < stack.size(); ++k) total += wsel(stack[k]);
            const std::size_t len = stack.size() - pos;
            const double mean = total / static_cast<double>(len);
            // Bias 0 at the cycle entry; propagate backwards around the cycle.
            ev.value[u] = mean;
            ev.bias[u] = 0.0;
            for (std::size_t k = stack.size(); k-- > pos + 1;) {
                const std::uint64_t v = stack[k];
                ev.value[v] = mean;
                ev.bias[v] = wsel(v) - mean + ev.bias[succ(v)];
            }
            for (std::size_t k = pos; k < stack.size(); ++k) color[stack[k]] = 2;
            pos = pos > 0 ? pos : 0;
            // Remaining stack prefix feeds into the cycle.
            for (std::size_t k = pos; k-- > 0;) {
                const std::uint64_t v = stack[k];
                ev.value[v] = ev.value[succ(v)];
                ev.bias[v] = wsel(v) - ev.value[v] + ev.bias[succ(v)];
                color[v] = 2;
            }
        } else {
            // Walk ran into an already-evaluated region.
            for (std::size_t k = stack.size(); k-- > 0;) {
                const std::uint64_t v = stack[k];
                ev.value[v] = ev.value[succ(v)];
                ev.bias[v] = wsel(v) - ev.value[v] + ev.bias[succ(v)];
                color[v] = 2;
            }
        }
    }
    return ev;
}

// Extracts the best-mean cycle of the final policy as a canonical orbit.
PeriodicOrbit policy_witness(const WeightedDeBruijn& g, const std::vector<int>& policy) {
    const std::uint64_t S = g.state_count();
    auto succ = [&](std::uint64_t u) { return (u * g.q + policy[u]) % S; };

    std::vector<std::int8_t> color(S, 0);
    double best_mean = -std::numeric_limits<double>::infinity();
    std::vector<int> best_syms;
    std::vector<std::uint64_t> stack;
    for (std::uint64_t start = 0; start < S; ++start) {
        if (color[start] != 0) continue;
        stack.clear();
        std::uint64_t u = start;
        while (color[u] == 0) {
            color[u] = 1;
            stack.push_back(u);
            u = succ(u);
        }
        if (color[u] == 1) {
            std::size_t pos = stack.size();
            while (stack[pos - 1] != u) --pos;
            --pos;
            double total = 0.0;
            std::vector<int> syms;
            for (std::size_t k = pos; k < stack.size(); ++k) {
                total += g.weights[stack[k] * g.q + policy[stack[k]]];
                syms.push_back(policy[stack[k]]);
            }
            const double mean = total / static_cast<double>(syms.size());
            std::vector<int> canon = least_rotation(syms);
            // Ties broken toward the smallest canonical generator.
            if (mean > best_mean + 1e-15 ||
                (mean > best_mean - 1e-15 &&
                 (best_syms.empty() || canon.size() < best_syms.size() ||
                  (canon.size() == best_syms.size() && canon < best_syms)))) {
                best_mean = mean;
                best_syms = std::move(canon);
            }
        }
        for (std::uint64_t v : stack) color[v] = 2;
    }
    return PeriodicOrbit(Word(g.q, least_rotation(best_syms)));
}

} // namespace

MaxMeanResult max_cycle_mean(const WeightedDeBruijn& g, double tol) {
    const std::uint64_t S = g.state_count();
    const int q = g.q;
    for (double w : g.weights)
        if (!std::isfinite(w)) throw ContractError("non-finite edge weight");

    double scale = 0.0;
    for (double w : g.weights) scale = std::max(scale, std::abs(w));
    const double eps = 1e-12 * (1.0 + scale);

    // Deterministic initial policy: heaviest edge, smallest symbol on ties.
    std::vector<int> policy(S, 0);
    for (std::uint64_t u = 0; u < S; ++u) {
        int best = 0;
        for (int a = 1; a < q; ++a)
            if (g.weights[u * q + a] > g.weights[u * q + best]) best = a;
        policy[u] = best;
    }

    PolicyEval ev = evaluate_policy(g, policy);
    const int max_rounds = 10000;
    for (int round = 0; round < max_rounds; ++round) {
        bool changed = false;
        // Phase 1: chase strictly better reachable cycle means.
        for (std::uint64_t u = 0; u < S; ++u) {
            int best = policy[u];
            double bestval = ev.value[(u * q + best) % S];
            for (int a = 0; a < q; ++a) {
                const double v = ev.value[(u * q + a) % S];
                if (v > bestval + eps) {
                    best = a;
                    bestval = v;
                }
            }
            if (best != policy[u]) {
                policy[u] = best;
                changed = true;
            }
        }
        if (!changed) {
            // Phase 2: improve bias at fixed cycle mean.
            for (std::uint64_t u = 0; u < S; ++u) {
                const double cur = g.weights[u * q + policy[u]] - ev.value[u] +
                                   ev.bias[(u * q + policy[u]) % S];
                int best = policy[u];
                double bestgain = cur;
                for (int a = 0; a < q; ++a) {
                    const std::uint64_t v = (u * q + a) % S;
                    if (ev.value[v] < ev.value[u] - eps) continue;
                    const double gain = g.weights[u * q + a] - ev.value[u] + ev.bias[v];
                    if (gain > bestgain + eps) {
                        best = a;
                        bestgain = gain;
                    }
                }
                if (best != policy[u]) {
                    policy[u] = best;
                    changed = true;
                }
            }
        }
        if (!changed) break;
        ev = evaluate_policy(g, policy);
    }

    MaxMeanResult res;
    res.witness_cycle = policy_witness(g, policy);
    // Report the exact mean of the witness cycle.
    {
        const auto& syms = res.witness_cycle.generator.symbols;
        const int p = static_cast<int>(syms.size());
        double total = 0.0;
        for (int s = 0; s < p; ++s) {
            std::uint64_t e = 0;
            for (int i = 0; i < g.r; ++i) e = e * q + static_cast<std::uint64_t>(syms[(s + i) % p]);
            total += g.weights[e];
        }
        res.value = total / p;
    }
    res.bias = ev.bias;

    // Optimal edges: reduced weight >= -tol, restricted to components that
    // still carry a cycle.
    const double mu = res.value;
    std::vector<std::uint8_t> cand(g.weights.size(), 0);
    for (std::uint64_t u = 0; u < S; ++u)
        for (int a = 0; a < q; ++a) {
            const std::uint64_t e = u * q + a;
            const double reduced = g.weights[e] - mu + ev.bias[e % S] - ev.bias[u];
            if (reduced >= -tol) cand[e] = 1;
        }

    // Keep only candidate edges inside a strongly connected component of the
    // candidate subgraph (that is where the zero-mean cycles live); bridge
    // edges between components cannot lie on any maximum-mean cycle.
    std::uint32_t ncomp = 0;
    const auto comp = detail::strongly_connected_components(
        S, q, [&](std::uint64_t e) { return cand[e] != 0; }, &ncomp);
    for (std::uint64_t u = 0; u < S; ++u)
        for (int a = 0; a < q; ++a) {
            const std::uint64_t e = u * q + a;
            if (cand[e] && comp[u] != comp[e % S]) cand[e] = 0;
        }
    res.optimal_edges = std::move(cand);

    if (S <= 2048) {
        const double karp = karp_cycle_mean(g);
        if (std::abs(karp - res.value) > 1e-9 * (1.0 + std::abs(karp)))
            throw IterationError("policy iteration disagrees with the Karp recurrence",
                                 std::abs(karp - res.value));
    }
    return res;
}

double karp_cycle_mean(const WeightedDeBruijn& g) {
    const std::uint64_t S = g.state_count();
    if (S > 2048) throw CapacityError("Karp recurrence limited to graphs with <= 2048 states");
    const int q = g.q;
    const std::uint64_t n = S;
    const double ninf = -std::numeric_limits<double>::infinity();

    // d[k][v] = max weight of a length-k walk ending at v (any start).
    std::vector<std::vector<double>> d(n + 1, std::vector<double>(S, ninf));
    std::fill(d[0].begin(), d[0].end(), 0.0);
    for (std::uint64_t k = 1; k <= n; ++k) {
        for (std::uint64_t u = 0; u < S; ++u) {
            if (d[k - 1][u] == ninf) continue;
            for (int a = 0; a < q; ++a) {
                const std::uint64_t e = u * q + a;
                const std::uint64_t v = e % S;
                const double cand = d[k - 1][u] + g.weights[e];
                if (cand > d[k][v]) d[k][v] = cand;
            }
        }
    }
    double best = ninf;
    for (std::uint64_t v = 0; v < S; ++v) {
        if (d[n][v] == ninf) continue;
        double worst = std::numeric_limits<double>::infinity();
        for (std::uint64_t k = 0; k < n; ++k) {
            if (d[k][v] == ninf) continue;
            worst = std::min(worst, (d[n][v] - d[k][v]) / static_cast<double>(n - k));
        }
        best = std::max(best, worst);
    }
    return best;
}

double support_value(const PotentialTable& phi, const Direction& alpha) {
    return max_cycle_mean(WeightedDeBruijn(contract(phi, alpha))).value;
}

} // namespace rotset
